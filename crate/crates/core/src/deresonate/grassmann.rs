//! Integer data of G(2,N) recovered from the deresonated Wronskians.
//!
//! `A^dr = R_e/r_e^(0)` and
//! `B^dr = (r_e^(0)R_u − r_u^(0)R_e)/(r_e^(0)r_u^(1) − r_u^(0)r_e^(1))`
//! tend to the Grassmannian pair as `e, u → 0`; coefficient `n` times
//! `(Nn)!` gives `a_{Nn}` and, after division by `N`, `b_{Nn}`. This
//! choice makes `b` at `n = 1` equal to `(N−1)!` and the ratio tend to
//! `π²/(N²(N+1))`.

use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use num_bigint::BigInt;

use super::{cancellation_digits, wronskian_pair, ExponentSet};
use crate::error::{Error, Result};
use crate::holonomic::{ratio_limit, ApproxLimit};
use crate::precision::{factorial, guard_digits, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannPair {
    pub n: usize,
    /// `a_{Nn}` for `n = 0..=n_max`.
    pub a: Vec<BigInt>,
    /// `b_{Nn}`, carried at `prec` digits.
    pub b: Vec<Real>,
    /// Largest `|A_n − a_n|` before rounding.
    pub max_residual: Real,
    /// Perturbation depth: `e = 10^{−k}`.
    pub k: u32,
    pub prec: u32,
}

impl GrassmannPair {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// Unrounded `(A_n, B_n)` at depth `k` and `wd` working digits.
fn raw_pair(n: usize, n_max: usize, k: u32, wd: u32) -> Result<(Vec<Real>, Vec<Real>)> {
    let ex = ExponentSet::decimal(n, k)?;
    let (re, ru) = wronskian_pair(&ex, n_max, wd)?;
    let (re, ru) = (re.coeffs, ru.coeffs);
    let den = &(&re[0] * &ru[1]) - &(&ru[0] * &re[1]);
    if den.is_zero() || re[0].is_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "degenerate Wronskians at k = {k}"
        )));
    }
    let den = den.mul_i64(n as i64);
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    for i in 0..=n_max {
        let f = Real::from_int(&factorial((n * i) as u64), wd);
        a.push(&(&re[i] / &re[0]) * &f);
        let num = &(&re[0] * &ru[i]) - &(&ru[0] * &re[i]);
        b.push(&(&num / &den) * &f);
    }
    Ok((a, b))
}

fn working_digits(n: usize, n_max: usize, k: u32, p: u32) -> u32 {
    p + guard_digits(n_max + 1) + 4 * k + cancellation_digits(n, n_max) + 10
}

/// Depth needed so the `e²`-deviation stays below both the rounding
/// target of `a` and the relative precision of `b`.
fn choose_depth(n: usize, n_max: usize, p: u32) -> Result<u32> {
    let k0 = 10;
    let (a, _) = raw_pair(n, n_max, k0, working_digits(n, n_max, k0, 20))?;
    let log_a = a.iter().map(Real::log10_abs).fold(0.0f64, f64::max);
    Ok(((log_a + f64::from(p + guard_digits(n_max + 1))) / 2.0).ceil() as u32 + 5)
}

/// The pair at an explicit depth `k`; rounding residuals above
/// `10^{−p/2}` are reported as an integrality failure.
pub fn grassmann_pair_at_depth(n: usize, n_max: usize, p: u32, k: u32) -> Result<GrassmannPair> {
    let wd = working_digits(n, n_max, k, p);
    let (a_raw, b_raw) = raw_pair(n, n_max, k, wd)?;
    let tol = Real::pow10(-i64::from(p / 2), wd);
    let mut a = Vec::with_capacity(a_raw.len());
    let mut max_residual = Real::zero(wd);
    for (i, x) in a_raw.iter().enumerate() {
        let r = x.round_to_int();
        let res = (x - &Real::from_int(&r, wd)).abs();
        if res >= tol {
            return Err(Error::Integrality {
                n: i,
                detail: format!("residual {} at depth {k}", res.to_sci_string(5)),
            });
        }
        if res > max_residual {
            max_residual = res;
        }
        a.push(r);
    }
    let prec = p + guard_digits(n_max + 1);
    let b = b_raw.iter().map(|x| x.with_digits(prec)).collect();
    Ok(GrassmannPair {
        n,
        a,
        b,
        max_residual: max_residual.with_digits(10),
        k,
        prec,
    })
}

/// The pair with the depth chosen from a cheap first pass.
pub fn grassmann_pair(n: usize, n_max: usize, p: u32) -> Result<GrassmannPair> {
    if n < 5 {
        return Err(Error::Precondition(format!(
            "N must be at least 5, got {n}"
        )));
    }
    let k = choose_depth(n, n_max, p)?;
    grassmann_pair_at_depth(n, n_max, p, k)
}

/// `lim b_{Nn}/a_{Nn}` from the last six terms, with the pair rebuilt at
/// two precisions.
pub fn grassmann_apery_limit(n: usize, n_max: usize, p: u32) -> Result<ApproxLimit> {
    if n_max < 6 {
        return Err(Error::Precondition(format!("n_max = {n_max} is too short")));
    }
    ratio_limit(n_max + 1, p, 6, |wd, tail| {
        let pair = grassmann_pair(n, n_max, wd)?;
        Ok((n_max + 1 - tail..=n_max)
            .map(|i| (&pair.b[i] / &Real::from_int(&pair.a[i], pair.prec)).with_digits(wd))
            .collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_first_values() {
        let g = grassmann_pair(5, 4, 20).unwrap();
        assert_eq!(g.a[0], BigInt::from(1));
        assert_eq!(g.a[1], BigInt::from(360));
        assert_eq!(g.a[2], BigInt::from(2154600));
        assert!(g.b[0].is_zero() || g.b[0].log10_abs() < -15.0);
        assert!(g.b[1].close_to(&Real::from_i64(24, 30), 18));
    }
}
