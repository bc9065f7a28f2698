//! ζ(s), Hurwitz ζ(s, a), L(χ₃, s) and the real Gamma function.
//!
//! These are the reference values every Apery constant is checked against,
//! so each public function certifies itself by recomputation at a higher
//! working precision (see [`crate::precision::certify`]).
//!
//! Integer arguments only: `s ≥ 2`, or `s = 0` where the continued value
//! is a rational number.

use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::precision::{
    bernoulli_even_table, certify, euler_gamma, factorial, guard_digits, pi, Rational, Real,
};

/// Which L-value to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LKind {
    Zeta,
    /// ζ(s, a) with `0 < a ≤ 1`.
    Hurwitz(Rational),
    Chi3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LValueRequest {
    pub kind: LKind,
    pub s: i64,
    pub prec: u32,
}

impl LValueRequest {
    pub fn evaluate(&self) -> Result<Real> {
        match &self.kind {
            LKind::Zeta => zeta_int(self.s, self.prec),
            LKind::Hurwitz(a) => hurwitz_zeta(self.s, a, self.prec),
            LKind::Chi3 => chi3_l(self.s, self.prec),
        }
    }
}

fn check_s(s: i64) -> Result<()> {
    if s == 0 || s >= 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "integer argument s = {s}; need s ≥ 2 or s = 0"
        )))
    }
}

fn cut_point(p: u32) -> usize {
    (2 * p as usize).max(50)
}

/// ζ(0, a) from the Euler–Maclaurin continuation. Every Bernoulli term
/// carries the factor `s(s+1)⋯` and vanishes at `s = 0`, leaving
/// `N − (N + a) + 1/2`.
fn hurwitz_at_zero(a: &Rational, n: usize) -> Rational {
    let nn = Rational::from_integer(BigInt::from(n));
    &nn - (&nn + a) + Rational::new(1.into(), 2.into())
}

/// Euler–Maclaurin for ζ(s, a), `s ≥ 2`, at `wd` working digits with
/// `n` leading terms summed directly.
fn hurwitz_em(s: i64, a: &Rational, n: usize, wd: u32) -> Result<Real> {
    let den = a.denom().clone();
    let num = a.numer().clone();
    let su = s as u32;
    let den_s = num_traits::pow(den.clone(), su as usize);
    let mut sum = Real::zero(wd);
    for k in 0..n {
        let base = BigInt::from(k) * &den + &num;
        sum = &sum + &Real::from_ratio(&den_s, &num_traits::pow(base, su as usize), wd);
    }
    let x = Real::from_rational(&(Rational::from_integer(BigInt::from(n)) + a), wd);
    let x_s = x.powi(-s);
    sum = &sum + &(&x_s * &x).div_i64(s - 1);
    sum = &sum + &x_s.mul_pow2(-1);

    let tol = sum.log10_abs() - f64::from(wd);
    let xinv2 = x.square().recip();
    let mut pw = &x_s / &x;
    // (s)_{2j−1} / (2j)!
    let mut coef = Rational::from_integer(BigInt::from(s)) / Rational::from_integer(2.into());
    let mut table: Vec<Rational> = bernoulli_even_table(64);
    let mut prev = f64::INFINITY;
    let mut j = 1usize;
    loop {
        if j >= table.len() {
            table = bernoulli_even_table(2 * table.len());
        }
        let term = pw.mul_rational(&(&table[j] * &coef));
        let mag = term.log10_abs();
        if mag < tol {
            break;
        }
        if mag > prev {
            return Err(Error::BernoulliDivergence);
        }
        prev = mag;
        sum = &sum + &term;
        // advance (s)_{2j−1}/(2j)! to (s)_{2j+1}/(2j+2)!
        let jj = 2 * j as i64;
        coef *= Rational::new(
            BigInt::from((s + jj - 1) * (s + jj)),
            BigInt::from((jj + 1) * (jj + 2)),
        );
        pw = &pw * &xinv2;
        j += 1;
    }
    Ok(sum)
}

/// ζ(s) by direct summation when `Σ_{k>K} k^{-s} ≤ K^{1−s}/(s−1)` is
/// below `10^{-wd}` for `K ≤ limit`; `None` otherwise.
fn zeta_direct(s: i64, wd: u32, limit: usize) -> Option<Real> {
    // K^{1-s} < 10^{-wd}
    let k = 10f64.powf(f64::from(wd) / (s - 1) as f64).ceil() + 1.0;
    if k > limit as f64 {
        return None;
    }
    let k = k as usize;
    let mut sum = Real::one(wd);
    for i in 2..=k {
        sum = &sum + &Real::from_i64(i as i64, wd).powi(-s);
    }
    Some(sum)
}

fn zeta_raw(s: i64, p: u32, wd: u32) -> Result<Real> {
    let n = cut_point(p);
    if let Some(v) = zeta_direct(s, wd, n) {
        return Ok(v);
    }
    hurwitz_em(s, &Rational::one(), n, wd)
}

/// ζ(s) to `p` digits. ζ(0) = −1/2 comes out of the continuation formula.
pub fn zeta_int(s: i64, p: u32) -> Result<Real> {
    check_s(s)?;
    if s == 0 {
        let v = hurwitz_at_zero(&Rational::one(), cut_point(p));
        assert_eq!(v, Rational::new((-1).into(), 2.into()), "ζ(0) tripwire");
        return Ok(Real::from_rational(&v, p));
    }
    let g = guard_digits(cut_point(p));
    certify(p, g, |wd| zeta_raw(s, p, wd))
}

pub fn hurwitz_zeta(s: i64, a: &Rational, p: u32) -> Result<Real> {
    check_s(s)?;
    if !a.is_positive() || *a > Rational::one() {
        return Err(Error::Domain(format!(
            "Hurwitz shift a = {a}; need 0 < a ≤ 1"
        )));
    }
    let n = cut_point(p);
    if s == 0 {
        return Ok(Real::from_rational(&hurwitz_at_zero(a, n), p));
    }
    if a.is_one() {
        return zeta_int(s, p);
    }
    certify(p, guard_digits(n), |wd| hurwitz_em(s, a, n, wd))
}

/// `L(χ₃, s) = 3^{−s}(ζ(s, 1/3) − ζ(s, 2/3))` for the character mod 3.
pub fn chi3_l(s: i64, p: u32) -> Result<Real> {
    check_s(s)?;
    let third = Rational::new(1.into(), 3.into());
    let two_thirds = Rational::new(2.into(), 3.into());
    let n = cut_point(p);
    if s == 0 {
        let v = hurwitz_at_zero(&third, n) - hurwitz_at_zero(&two_thirds, n);
        assert_eq!(v, third, "L(χ₃, 0) tripwire");
        return Ok(Real::from_rational(&v, p));
    }
    certify(p, guard_digits(n), |wd| {
        let d = &hurwitz_em(s, &third, n, wd)? - &hurwitz_em(s, &two_thirds, n, wd)?;
        Ok(d * Real::from_i64(3, wd).powi(-s))
    })
}

/// `log Γ(1 − t) = γt + Σ_{i≥2} ζ(i) tⁱ / i`, for `|t| < 1/2`.
pub fn log_gamma_one_minus(t: &Real, p: u32) -> Result<Real> {
    if t.abs() >= Real::from_f64(0.5, 10) {
        return Err(Error::Domain(format!(
            "log Γ(1 − t) series needs |t| < 1/2, got t = {}",
            t.to_sci_string(10)
        )));
    }
    if t.is_zero() {
        return Ok(Real::zero(p));
    }
    let terms = series_terms(t, p + 10);
    certify(p, guard_digits(terms), |wd| log_gamma_series(t, p, wd))
}

/// Number of series terms until `|t|^i / i < 10^{-d}·|t|`.
fn series_terms(t: &Real, d: u32) -> usize {
    let l = t.log10_abs();
    let mut i = 2usize;
    while l * i as f64 - (i as f64).log10() >= l - f64::from(d) {
        i += 1;
    }
    i
}

fn log_gamma_series(t: &Real, p: u32, wd: u32) -> Result<Real> {
    let t = t.with_digits(wd);
    let mut sum = &euler_gamma(wd) * &t;
    let last = series_terms(&t, wd);
    let mut pw = t.clone();
    for i in 2..=last {
        pw = &pw * &t;
        // The sum is of size |t|, so ζ(i) is needed only to the digits
        // that |t|^{i−1} leaves inside the working precision.
        let need = (f64::from(wd) + pw.log10_abs() - t.log10_abs()).max(5.0) as u32 + 5;
        // Relabel so the low-precision ζ(i) does not lower the sum's precision.
        let z = zeta_raw(i as i64, p.min(need), need.min(wd))?.with_digits(wd);
        sum = &sum + &(&pw * &z).div_i64(i as i64);
    }
    Ok(sum)
}

/// Γ(x) for real `x > 0`.
pub fn gamma_real(x: &Real, p: u32) -> Result<Real> {
    if x.signum() <= 0 {
        return Err(Error::Domain(format!(
            "Γ(x) needs x > 0, got {}",
            x.to_sci_string(10)
        )));
    }
    // Exact shortcuts at the resonant base points.
    let q = x.to_rational();
    if q == Rational::new(1.into(), 2.into()) {
        return Ok(pi(p + 5).sqrt().with_digits(p));
    }
    if q.is_integer() && q <= Rational::from_integer(2000.into()) {
        let n: u64 = q.to_integer().try_into().unwrap_or(1);
        return Ok(Real::from_int(&factorial(n - 1), p));
    }
    let g = guard_digits(p as usize);
    certify(p, g, |wd| Ok(gamma_stirling(x, wd)))
}

/// Shift to `X = x + m ≥ wd`, then Stirling's series for log Γ(X).
fn gamma_stirling(x: &Real, wd: u32) -> Real {
    let w = wd + 10;
    let x = x.with_digits(w);
    let target = f64::from(wd).max(20.0);
    let m = (target - x.to_f64()).ceil().max(0.0) as i64;
    let mut prod = Real::one(w);
    for j in 0..m {
        prod = &prod * &(&x + &Real::from_i64(j, w));
    }
    let big_x = &x + &Real::from_i64(m, w);
    let two_pi = pi(w).mul_pow2(1);
    let half = Real::from_f64(0.5, w);
    let mut lg = &(&(&big_x - &half) * &big_x.ln()) - &big_x;
    lg = &lg + &two_pi.ln().mul_pow2(-1);
    let tol = -f64::from(w);
    let xinv2 = big_x.square().recip();
    let mut pw = big_x.recip();
    let mut table = bernoulli_even_table(64);
    let mut k = 1usize;
    loop {
        if k >= table.len() {
            table = bernoulli_even_table(2 * table.len());
        }
        let kk = 2 * k as i64;
        let c = &table[k] / Rational::from_integer(BigInt::from(kk * (kk - 1)));
        let term = pw.mul_rational(&c);
        if term.log10_abs() < tol {
            break;
        }
        lg = &lg + &term;
        pw = &pw * &xinv2;
        k += 1;
    }
    (lg.exp() / prod).with_digits(wd)
}
