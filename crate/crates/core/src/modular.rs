//! Exact q-expansions for the modular cases V12, V16 and V18.
//!
//! Eisenstein harmonics are the rescaled level-`i` series
//! `E_{2,i} = −(i/24)(1 − 24 Σ σ(n) q^{in})` and
//! `E_{4,i} = (i²/240)(1 + 240 Σ σ₃(n) q^{in})`. The weight 2 form Φ and the
//! weight 4 form F of each variety are fixed integer-or-rational
//! combinations of them (V18's F is a twisted divisor sum instead). Every
//! comparison here is exact.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::holonomic::{apery_pair, mirror_map, mukai_operator, Variety};
use crate::precision::{Rational, Real};
use crate::special::{chi3_l, zeta_int};

/// A power series `Σ_{k ≤ order} c_k q^k` known exactly up to `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        QSeries::new(alloc::vec![Rational::one()], order)
    }

    /// The series `q` (or `t`).
    pub fn var(order: usize) -> Self {
        QSeries::new(alloc::vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        QSeries::new(self.coeffs.clone(), order)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn mul_ref(&self, o: &QSeries) -> QSeries {
        let order = self.order().min(o.order());
        let mut out = alloc::vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        QSeries { coeffs: out }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Precondition(String::from(
                "series inverse needs c0 ≠ 0",
            )));
        }
        let n = self.order();
        let mut out = alloc::vec![Rational::zero(); n + 1];
        out[0] = c0.recip();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc / c0;
        }
        Ok(QSeries { coeffs: out })
    }

    /// `exp(f)` for `f` with zero constant term, from `g' = f'·g`.
    pub fn exp(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(String::from("series exp needs c0 = 0")));
        }
        let n = self.order();
        let mut g = alloc::vec![Rational::zero(); n + 1];
        g[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += Rational::from_integer(BigInt::from(k)) * &self.coeffs[k] * &g[m - k];
            }
            g[m] = acc / Rational::from_integer(BigInt::from(m));
        }
        Ok(QSeries { coeffs: g })
    }

    /// `self(inner(q))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &QSeries) -> Result<QSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Precondition(String::from(
                "composition needs inner c0 = 0",
            )));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner in the inner series.
        let mut acc = QSeries::zero(order);
        for c in self.coeffs.iter().take(order + 1).rev() {
            acc = acc.mul_ref(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse of `c1 q + c2 q² + …` with `c1 ≠ 0`.
    pub fn reverse(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_zero() || self.order() == 0 || self.coeffs[1].is_zero() {
            return Err(Error::Precondition(String::from(
                "series reversion needs c0 = 0 and c1 ≠ 0",
            )));
        }
        let n = self.order();
        let c1inv = self.coeffs[1].recip();
        let mut r = QSeries::var(n).scale(&c1inv);
        // Fix one coefficient per pass: r_m ← r_m − [q^m] self(r) / c1.
        for m in 2..=n {
            let comp = self.compose(&r)?;
            let excess = comp.coeffs[m].clone();
            r.coeffs[m] -= excess * &c1inv;
        }
        Ok(r)
    }

    /// Index of the first differing coefficient up to the common order.
    pub fn first_mismatch(&self, o: &QSeries) -> Option<usize> {
        let n = self.order().min(o.order());
        (0..=n).find(|&k| self.coeffs[k] != o.coeffs[k])
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, o: &'a QSeries) -> QSeries {
        let n = self.order().min(o.order());
        QSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(),
        }
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, o: &'a QSeries) -> QSeries {
        self + &(-o)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, o: &'a QSeries) -> QSeries {
        self.mul_ref(o)
    }
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma_k(n: u64, k: u32) -> BigInt {
    assert!(n >= 1, "σ_k needs n ≥ 1");
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| num_traits::pow(BigInt::from(d), k as usize))
        .fold(BigInt::zero(), |a, b| a + b)
}

fn harmonic(i: u64, order: usize, k: u32, constant: Rational, scale: &Rational) -> QSeries {
    let mut c = alloc::vec![Rational::zero(); order + 1];
    c[0] = constant;
    let mut n = 1u64;
    while (i * n) as usize <= order {
        c[(i * n) as usize] = scale * Rational::from_integer(sigma_k(n, k));
        n += 1;
    }
    QSeries::new(c, order)
}

/// `E_{2,i} = −(i/24) + i Σ σ(n) q^{in}`.
pub fn eisenstein_e2(i: u64, order: usize) -> QSeries {
    assert!(i >= 1);
    let iq = Rational::from_integer(i.into());
    harmonic(i, order, 1, -(&iq / Rational::from_integer(24.into())), &iq)
}

/// `E_{4,i} = i²/240 + i² Σ σ₃(n) q^{in}`.
pub fn eisenstein_e4(i: u64, order: usize) -> QSeries {
    assert!(i >= 1);
    let i2 = Rational::from_integer((i * i).into());
    harmonic(i, order, 3, &i2 / Rational::from_integer(240.into()), &i2)
}

fn rational_variety(v: Variety) -> Result<Variety> {
    if Variety::RATIONAL.contains(&v) {
        Ok(v)
    } else {
        Err(Error::UnknownVariety(format!(
            "{v} has no modular parametrization here"
        )))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Weights `(i, w_i)` with Φ = Σ w_i E_{2,i}.
pub fn phi_weights(v: Variety) -> Result<Vec<(u64, Rational)>> {
    Ok(match rational_variety(v)? {
        Variety::V12 => alloc::vec![(1, q(5, 1)), (2, q(-1, 1)), (3, q(1, 1)), (6, q(-5, 1))],
        Variety::V16 => alloc::vec![(1, q(4, 1)), (2, q(-2, 1)), (4, q(2, 1)), (8, q(-4, 1))],
        _ => alloc::vec![(1, q(3, 1)), (9, q(-3, 1))],
    })
}

/// Weights `(i, w_i)` with F = Σ w_i E_{4,i}; `None` for V18, whose F is
/// the twisted divisor sum.
pub fn f_weights(v: Variety) -> Result<Option<Vec<(u64, Rational)>>> {
    Ok(match rational_variety(v)? {
        Variety::V12 => Some(alloc::vec![
            (1, q(1, 1)),
            (2, q(-7, 1)),
            (3, q(7, 1)),
            (6, q(-1, 1))
        ]),
        Variety::V16 => Some(alloc::vec![
            (1, q(1, 1)),
            (2, q(-21, 4)),
            (4, q(21, 4)),
            (8, q(-1, 1))
        ]),
        _ => None,
    })
}

pub fn phi_form(v: Variety, order: usize) -> Result<QSeries> {
    let mut acc = QSeries::zero(order);
    for (i, w) in phi_weights(v)? {
        acc = &acc + &eisenstein_e2(i, order).scale(&w);
    }
    Ok(acc)
}

/// Legendre symbol `(n/3)`.
fn legendre3(n: u64) -> i64 {
    match n % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

pub fn f_form(v: Variety, order: usize) -> Result<QSeries> {
    match f_weights(v)? {
        Some(ws) => {
            let mut acc = QSeries::zero(order);
            for (i, w) in ws {
                acc = &acc + &eisenstein_e4(i, order).scale(&w);
            }
            Ok(acc)
        }
        None => {
            let mut c = alloc::vec![Rational::zero(); order + 1];
            for (n, cn) in c.iter_mut().enumerate().skip(1) {
                let n = n as u64;
                *cn = Rational::from_integer(sigma_k(n, 3) * legendre3(n));
            }
            Ok(QSeries::new(c, order))
        }
    }
}

/// `L(F, 3)` in closed form. For a combination of `E_{4,i}` the L-series
/// is `(Σ w_i i^{2−s}) ζ(s) ζ(s−3)`; for V18 it is `L(χ₃, s−3) L(χ₃, s)`.
pub fn l_f_3(v: Variety, p: u32) -> Result<Real> {
    let wd = p + 5;
    let val = match f_weights(v)? {
        Some(ws) => {
            // s = 3: i^{2−s} = 1/i
            let factor = ws.iter().fold(Rational::zero(), |acc, (i, w)| {
                acc + w / Rational::from_integer((*i).into())
            });
            zeta_int(3, wd)?.mul_rational(&factor) * zeta_int(0, wd)?
        }
        None => &chi3_l(0, wd)? * &chi3_l(3, wd)?,
    };
    Ok(val.with_digits(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `A(t(q)) = Φ(q)`
    Phi,
    /// `(B/A)(t(q)) = Σ c_i qⁱ / i³`
    Ratio,
}

impl Identity {
    pub fn label(self) -> &'static str {
        match self {
            Identity::Phi => "phi",
            Identity::Ratio => "ratio",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub power: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub variety: Variety,
    pub identity: Identity,
    pub order_checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }

    fn from_series(v: Variety, identity: Identity, lhs: &QSeries, rhs: &QSeries) -> Self {
        let order = lhs.order().min(rhs.order());
        let first_mismatch = lhs.first_mismatch(rhs).map(|k| Mismatch {
            power: k,
            lhs: lhs.coeff(k),
            rhs: rhs.coeff(k),
        });
        IdentityReport {
            variety: v,
            identity,
            order_checked: order,
            first_mismatch,
        }
    }
}

fn series_of(xs: &[Rational], order: usize) -> QSeries {
    QSeries::new(xs.iter().take(order + 1).cloned().collect(), order)
}

/// Compares `A(t(q))` with Φ(q) through `q^order`.
pub fn verify_phi_identity(v: Variety, order: usize) -> Result<IdentityReport> {
    rational_variety(v)?;
    let pair = apery_pair(v, order)?;
    let (_, t_of_q) = mirror_map(&mukai_operator(v), order)?;
    let lhs = series_of(&pair.a, order).compose(&t_of_q)?;
    let rhs = phi_form(v, order)?;
    Ok(IdentityReport::from_series(v, Identity::Phi, &lhs, &rhs))
}

/// Compares `B(t(q))/A(t(q))` with `Σ c_i qⁱ/i³` through `q^order`.
pub fn verify_ratio_identity(v: Variety, order: usize) -> Result<IdentityReport> {
    rational_variety(v)?;
    let pair = apery_pair(v, order)?;
    let (_, t_of_q) = mirror_map(&mukai_operator(v), order)?;
    let a = series_of(&pair.a, order).compose(&t_of_q)?;
    let b = series_of(&pair.b, order).compose(&t_of_q)?;
    let lhs = &b * &a.inv()?;
    let f = f_form(v, order)?;
    let mut c = alloc::vec![Rational::zero(); order + 1];
    for (i, ci) in c.iter_mut().enumerate().skip(1) {
        let i3 = Rational::from_integer(num_traits::pow(BigInt::from(i), 3));
        *ci = f.coeff(i) / i3;
    }
    let rhs = QSeries::new(c, order);
    Ok(IdentityReport::from_series(v, Identity::Ratio, &lhs, &rhs))
}
