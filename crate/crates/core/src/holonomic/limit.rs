//! Limits of geometrically converging sequences with an error estimate.
//!
//! The model is `x_n − C ≈ K·ρⁿ`. With `d_n = x_n − x_{n−1}` the ratio ρ is
//! read from the last three differences and the tail is bounded by
//! `|d_n|·ρ/(1−ρ)`, times a safety factor 4. Aitken's Δ² value replaces the
//! plain one when its own change is smaller.

use alloc::format;
use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::precision::{guard_digits, Real};

use super::recurrence::SeqPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitMethod {
    PlainRatio,
    Aitken,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxLimit {
    pub value: Real,
    pub error_estimate: Real,
    pub n_used: usize,
    pub method: LimitMethod,
}

impl ApproxLimit {
    /// Decimal digits guaranteed by `error_estimate` relative to `value`,
    /// capped at the value's precision.
    pub fn certified_digits(&self) -> u32 {
        let cap = self.value.digits();
        if self.error_estimate.is_zero() {
            return cap;
        }
        let d = self.value.log10_abs() - self.error_estimate.log10_abs();
        if d.is_nan() || d <= 0.0 {
            0
        } else {
            (d.floor() as u32).min(cap)
        }
    }

    /// Whether `|value − target| ≤ error_estimate`.
    pub fn contains(&self, target: &Real) -> bool {
        (&self.value - target).abs() <= self.error_estimate
    }
}

const SAFETY: i64 = 4;

/// Estimates the limit of `xs` (all carried at `wd` digits). `n_used` is
/// the index of the last element.
pub fn estimate_limit(xs: &[Real], wd: u32, n_used: usize) -> Result<ApproxLimit> {
    if xs.len() < 4 {
        return Err(Error::Precondition(format!(
            "limit estimation needs at least 4 terms, got {}",
            xs.len()
        )));
    }
    let m = xs.len() - 1;
    let d: Vec<Real> = (1..=m).map(|k| &xs[k] - &xs[k - 1]).collect();
    let scale = Real::max_abs(xs.iter()).unwrap();
    // Rounding level of the inputs.
    let floor = &scale * &Real::pow10(-i64::from(wd.saturating_sub(3)), wd);
    let dl = d[d.len() - 1].abs();
    let dp = d[d.len() - 2].abs();
    let dpp = d[d.len() - 3].abs();
    let last = xs[m].clone();
    if dl <= floor && dp <= floor {
        let err = dl.clone().max_with(&dp).mul_i64(SAFETY).max_with(&floor);
        return Ok(ApproxLimit {
            value: last,
            error_estimate: err,
            n_used,
            method: LimitMethod::PlainRatio,
        });
    }
    let rho = {
        let r1 = if dp.is_zero() {
            Real::from_i64(2, wd)
        } else {
            &dl / &dp
        };
        let r2 = if dpp.is_zero() {
            Real::zero(wd)
        } else {
            &dp / &dpp
        };
        r1.max_with(&r2)
    };
    let one = Real::one(wd);
    if rho >= one {
        return Err(Error::NonConvergence {
            ratio: rho.to_sci_string(6),
        });
    }
    let plain_err = (&(&dl * &rho) / &(&one - &rho))
        .mul_i64(SAFETY)
        .max_with(&floor);
    let aitken_at = |k: usize| -> Option<Real> {
        // uses x_{k−2}, x_{k−1}, x_k
        let d1 = &xs[k] - &xs[k - 1];
        let d0 = &xs[k - 1] - &xs[k - 2];
        let den = &d1 - &d0;
        if den.is_zero() {
            None
        } else {
            Some(&xs[k] - &(&d1.square() / &den))
        }
    };
    if let (Some(a1), Some(a0)) = (aitken_at(m), aitken_at(m - 1)) {
        let aerr = (&a1 - &a0).abs().mul_i64(SAFETY).max_with(&floor);
        if aerr < plain_err {
            return Ok(ApproxLimit {
                value: a1,
                error_estimate: aerr,
                n_used,
                method: LimitMethod::Aitken,
            });
        }
    }
    Ok(ApproxLimit {
        value: last,
        error_estimate: plain_err,
        n_used,
        method: LimitMethod::PlainRatio,
    })
}

impl Real {
    fn max_with(self, other: &Real) -> Real {
        if *other > self {
            other.clone()
        } else {
            self
        }
    }
}

/// Estimates `lim bₙ/aₙ` from the tail of the ratios at two guarded
/// precisions; the reported error also covers the disagreement between
/// them.
pub fn ratio_limit<F>(len: usize, p: u32, tail: usize, mut ratios: F) -> Result<ApproxLimit>
where
    F: FnMut(u32, usize) -> Result<Vec<Real>>,
{
    let g = guard_digits(len);
    let lo = estimate_limit(&ratios(p + g, tail)?, p + g, len - 1)?;
    let hi = estimate_limit(&ratios(p + 2 * g, tail)?, p + 2 * g, len - 1)?;
    let gap = (&lo.value - &hi.value).abs();
    let err = hi
        .error_estimate
        .clone()
        .max_with(&lo.error_estimate)
        .max_with(&gap);
    Ok(ApproxLimit {
        value: hi.value.with_digits(p + g),
        error_estimate: err.with_digits(p + g),
        n_used: hi.n_used,
        method: hi.method,
    })
}

/// `lim bₙ/aₙ` of an exact pair, using the last terms with `aₙ ≠ 0`.
pub fn apery_limit(pair: &SeqPair, p: u32) -> Result<ApproxLimit> {
    let len = pair.len();
    let idx: Vec<usize> = (0..len).filter(|&n| !pair.a[n].is_zero()).collect();
    if idx.len() < 4 {
        return Err(Error::Precondition(format!(
            "{len} terms are too few for a limit"
        )));
    }
    let tail = 6.min(idx.len());
    let take = &idx[idx.len() - tail..];
    let mut out = ratio_limit(len, p, tail, |wd, _| {
        Ok(take
            .iter()
            .map(|&n| &Real::from_rational(&pair.b[n], wd) / &Real::from_rational(&pair.a[n], wd))
            .collect())
    })?;
    out.n_used = *take.last().unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(c: f64, k: f64, rho: f64, n: usize, wd: u32) -> Vec<Real> {
        (0..n)
            .map(|i| {
                Real::from_f64(c, wd)
                    + Real::from_f64(k, wd) * Real::from_f64(rho, wd).powi(i as i64)
            })
            .collect()
    }

    #[test]
    fn geometric_tail_is_bounded() {
        let xs = geometric(1.5, 1.0, 0.5, 30, 40);
        let l = estimate_limit(&xs, 40, 29).unwrap();
        assert!(l.contains(&Real::from_f64(1.5, 40)));
        assert!(l.error_estimate.log10_abs() < -8.0);
    }

    #[test]
    fn divergence_is_reported() {
        let xs: Vec<Real> = (0..10).map(|i| Real::from_i64(i * i, 30)).collect();
        assert!(matches!(
            estimate_limit(&xs, 30, 9),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn constant_sequence_has_zero_error() {
        let xs: Vec<Real> = (0..6).map(|_| Real::zero(30)).collect();
        let l = estimate_limit(&xs, 30, 5).unwrap();
        assert!(l.value.is_zero());
        assert!(l.error_estimate.is_zero());
    }

    #[test]
    fn too_short() {
        let xs = geometric(1.0, 1.0, 0.5, 3, 20);
        assert!(estimate_limit(&xs, 20, 2).is_err());
    }
}
