//! Deresonation of the hypergeometric operator
//! `L_dr = (D−½−u)(D−½+u)(D−½−e)(D−½+e)(D−½)^{N−4} + t`.
//!
//! For small nonzero `e ≠ ±u` the exponents at 0 are distinct, so every
//! exponent carries a plain power series `S_α = Σ g(n) t^{α+n}`. The
//! Wronskians of the `±e` and `±u` pairs solve the second wedge, and the
//! Grassmannian data of G(2,N) is recovered from them as `e, u → 0`.

mod grassmann;
mod lefschetz;
mod pac;
mod sine;

use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::precision::{Rational, Real};
use crate::special::{gamma_real, log_gamma_one_minus};

pub use grassmann::{
    grassmann_apery_limit, grassmann_pair, grassmann_pair_at_depth, GrassmannPair,
};
pub use lefschetz::{lefschetz_crosscheck, LefschetzReport};
pub use pac::{pac_limit, perturbed_apery_constant};
pub use sine::{sine_ratio_check, SineReport};

/// Exponents `½±e, ½±u` and `½` with multiplicity `N−4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    n: usize,
    e: Rational,
    u: Rational,
}

impl ExponentSet {
    pub fn new(n: usize, e: Rational, u: Rational) -> Result<Self> {
        if n < 5 {
            return Err(Error::Precondition(format!(
                "N must be at least 5, got {n}"
            )));
        }
        let quarter = Rational::new(1.into(), 4.into());
        if e.is_zero() || u.is_zero() || e == u || e == -u.clone() {
            return Err(Error::Resonance(format!("e = {e}, u = {u} collide")));
        }
        if e.abs() >= quarter || u.abs() >= quarter {
            return Err(Error::Precondition(format!(
                "need |e|, |u| < 1/4, got e = {e}, u = {u}"
            )));
        }
        Ok(ExponentSet { n, e, u })
    }

    /// `e = 10^{−k}`, `u = 2·10^{−k}`.
    pub fn decimal(n: usize, k: u32) -> Result<Self> {
        let e = Rational::new(
            1.into(),
            num_traits::pow(num_bigint::BigInt::from(10), k as usize),
        );
        let u = &e * Rational::from_integer(2.into());
        ExponentSet::new(n, e, u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn negated(&self) -> Self {
        ExponentSet {
            n: self.n,
            e: -self.e.clone(),
            u: -self.u.clone(),
        }
    }

    /// `[½−e, ½+e, ½−u, ½+u, ½, …]`.
    pub fn exponents(&self) -> Vec<Rational> {
        let h = Rational::new(1.into(), 2.into());
        let mut out = alloc::vec![&h - &self.e, &h + &self.e, &h - &self.u, &h + &self.u];
        out.resize(self.n, h);
        out
    }

    pub fn minus_e(&self) -> Rational {
        self.exponents()[0].clone()
    }

    pub fn plus_e(&self) -> Rational {
        self.exponents()[1].clone()
    }

    pub fn minus_u(&self) -> Rational {
        self.exponents()[2].clone()
    }

    pub fn plus_u(&self) -> Rational {
        self.exponents()[3].clone()
    }

    /// `−log10 min(|e|, |u|)`, the depth of the perturbation.
    pub fn depth(&self) -> f64 {
        let f = |q: &Rational| Real::from_rational(&q.abs(), 20).log10_abs();
        (-f(&self.e).min(f(&self.u))).max(0.0)
    }
}

/// `S_α = Σ g(n) t^{α+n}` through `n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedSeries {
    pub alpha: Rational,
    pub coeffs: Vec<Real>,
    pub prec: u32,
}

/// `Γ(1 + x)`; the log-gamma series is used near 0 where it is cheap.
fn gamma_one_plus(x: &Rational, wd: u32) -> Result<Real> {
    if x.is_zero() {
        return Ok(Real::one(wd));
    }
    let small = Rational::new(1.into(), 20.into());
    if x.abs() < small {
        let t = -Real::from_rational(x, wd + 10);
        Ok(log_gamma_one_minus(&t, wd)?.exp().with_digits(wd))
    } else {
        let one = Rational::from_integer(1.into());
        gamma_real(&Real::from_rational(&(&one + x), wd + 10), wd)
    }
}

/// Coefficients of the series at exponent `alpha`, computed at `wd` digits:
/// `g(0) = 1/∏_j Γ(α−α_j+1)` and `g(n) = −g(n−1)/∏_j (α−α_j+n)`.
pub fn perturbed_series(
    exps: &ExponentSet,
    alpha: &Rational,
    n_max: usize,
    wd: u32,
) -> Result<PerturbedSeries> {
    let all = exps.exponents();
    if !all.contains(alpha) {
        return Err(Error::Precondition(format!(
            "{alpha} is not an exponent of the set"
        )));
    }
    let diffs: Vec<Rational> = all.iter().map(|a| alpha - a).collect();
    for d in &diffs {
        if d.is_integer() && d.is_negative() {
            return Err(Error::Resonance(format!(
                "exponent difference {d} at α = {alpha}"
            )));
        }
    }
    let mut g0 = Real::one(wd);
    for d in &diffs {
        g0 = &g0 * &gamma_one_plus(d, wd)?;
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(g0.recip());
    let dr: Vec<Real> = diffs.iter().map(|d| Real::from_rational(d, wd)).collect();
    for n in 1..=n_max {
        let nn = Real::from_i64(n as i64, wd);
        let mut den = Real::one(wd);
        for d in &dr {
            den = &den * &(d + &nn);
        }
        let next = -(&coeffs[n - 1] / &den);
        coeffs.push(next);
    }
    Ok(PerturbedSeries {
        alpha: alpha.clone(),
        coeffs,
        prec: wd,
    })
}

/// `L_dr` applied to `S_α`, as the coefficient list of `t^{α+n}`:
/// `∏_j(α−α_j+n)·g(n) + g(n−1)`.
pub fn apply_l_dr(exps: &ExponentSet, s: &PerturbedSeries) -> Vec<Real> {
    let wd = s.prec;
    let alpha = Real::from_rational(&s.alpha, wd);
    let ex: Vec<Real> = exps
        .exponents()
        .iter()
        .map(|a| Real::from_rational(a, wd))
        .collect();
    (0..s.coeffs.len())
        .map(|n| {
            let x = &alpha + &Real::from_i64(n as i64, wd);
            let mut v = s.coeffs[n].clone();
            for a in &ex {
                v = &v * &(&x - a);
            }
            if n > 0 {
                v = &v + &s.coeffs[n - 1];
            }
            v
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WronskianLabel {
    Re,
    Ru,
}

impl WronskianLabel {
    pub fn label(self) -> &'static str {
        match self {
            WronskianLabel::Re => "R_e",
            WronskianLabel::Ru => "R_u",
        }
    }
}

/// `S₊·DS₋ − DS₊·S₋ = Σ r^(n) t^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WronskianSeries {
    pub coeffs: Vec<Real>,
    pub label: Option<WronskianLabel>,
}

/// `r^(n) = Σ_{k+m=n} (m − k + δ)·g₊(k)·g₋(m)` with `δ = α₋ − α₊`.
pub fn wronskian(
    plus: &PerturbedSeries,
    minus: &PerturbedSeries,
    n_max: usize,
) -> Result<WronskianSeries> {
    let one = Rational::from_integer(1.into());
    if &plus.alpha + &minus.alpha != one {
        return Err(Error::Precondition(format!(
            "Wronskian pair needs α₊ + α₋ = 1, got {} and {}",
            plus.alpha, minus.alpha
        )));
    }
    let len = n_max + 1;
    if plus.coeffs.len() < len || minus.coeffs.len() < len {
        return Err(Error::Precondition(format!(
            "series shorter than {len} terms"
        )));
    }
    let wd = plus.prec.min(minus.prec);
    let delta = Real::from_rational(&(&minus.alpha - &plus.alpha), wd);
    let mut coeffs = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = Real::zero(wd);
        for m in 0..=n {
            let k = n - m;
            let w = &Real::from_i64(m as i64 - k as i64, wd) + &delta;
            acc = &acc + &(&w * &(&plus.coeffs[k] * &minus.coeffs[m]));
        }
        coeffs.push(acc);
    }
    Ok(WronskianSeries {
        coeffs,
        label: None,
    })
}

/// `(R_e, R_u)` of an exponent set at `wd` digits.
pub fn wronskian_pair(
    exps: &ExponentSet,
    n_max: usize,
    wd: u32,
) -> Result<(WronskianSeries, WronskianSeries)> {
    let s = |a: Rational| perturbed_series(exps, &a, n_max, wd);
    let mut re = wronskian(&s(exps.plus_e())?, &s(exps.minus_e())?, n_max)?;
    let mut ru = wronskian(&s(exps.plus_u())?, &s(exps.minus_u())?, n_max)?;
    re.label = Some(WronskianLabel::Re);
    ru.label = Some(WronskianLabel::Ru);
    Ok((re, ru))
}

/// Digits lost to cancellation in the Wronskian convolutions through
/// `n` terms, `n·N·log10(1/cos(π/N))`, measured against direct sums.
pub fn cancellation_digits(big_n: usize, n: usize) -> u32 {
    let c = (core::f64::consts::PI / big_n as f64).cos();
    (n as f64 * big_n as f64 * (1.0 / c).log10()).ceil() as u32
}
