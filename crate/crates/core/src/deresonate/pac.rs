//! The perturbed Apery constant and its limit at the resonant point.

use alloc::format;
use alloc::string::String;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::sine::sin_2pi;
use super::{wronskian_pair, ExponentSet};
use crate::error::{Error, Result};
use crate::holonomic::{ApproxLimit, LimitMethod};
use crate::precision::{certify, guard_digits, Real};

/// `(1/N)·(s·r_e0² − r_u0·r_e0)/(r_u1·r_e0 − r_e1·r_u0)` with
/// `s = sin(2πu)/sin(2πe)`.
pub fn perturbed_apery_constant(exps: &ExponentSet, p: u32) -> Result<Real> {
    // Each Wronskian loses about `depth` digits and the two quotients
    // lose as much again.
    let extra = 4 * exps.depth().ceil() as u32 + 10;
    certify(p, guard_digits(p as usize), |wd| {
        pac_at(exps, wd + extra).map(|v| v.with_digits(wd))
    })
}

fn pac_at(exps: &ExponentSet, wd: u32) -> Result<Real> {
    let (re, ru) = wronskian_pair(exps, 1, wd)?;
    let (re0, re1) = (&re.coeffs[0], &re.coeffs[1]);
    let (ru0, ru1) = (&ru.coeffs[0], &ru.coeffs[1]);
    let s = &sin_2pi(exps.u(), wd) / &sin_2pi(exps.e(), wd);
    let num = &(&s * &re0.square()) - &(ru0 * re0);
    let den = &(ru1 * re0) - &(re1 * ru0);
    if den.is_zero() {
        return Err(Error::PrecisionExhausted(String::from(
            "perturbed Apery constant: denominator vanished",
        )));
    }
    Ok((&num / &den).div_i64(exps.n() as i64))
}

/// Evaluates the perturbed constant along `e = 10^{−k}`, `u = 2·10^{−k}`
/// for `k = 5, 10, …` until two successive values agree to `p` digits.
/// The deviation from the limit is quadratic in the perturbation, so the
/// last step bounds the error generously.
pub fn pac_limit(n: usize, p: u32) -> Result<ApproxLimit> {
    let max_k = 2 * p + 40;
    let wp = p + 5;
    let mut prev: Option<Real> = None;
    let mut k = 5;
    while k <= max_k {
        let v = perturbed_apery_constant(&ExponentSet::decimal(n, k)?, wp)?;
        if let Some(pv) = &prev {
            if v.close_to(pv, p) {
                let floor = &v.abs() * &Real::pow10(-i64::from(wp), wp);
                let mut err = (&v - pv).abs();
                if err < floor {
                    err = floor;
                }
                return Ok(ApproxLimit {
                    value: v,
                    error_estimate: err,
                    n_used: k as usize,
                    method: LimitMethod::PlainRatio,
                });
            }
        }
        prev = Some(v);
        k += 5;
    }
    Err(Error::PrecisionExhausted(format!(
        "perturbed Apery constant did not settle by k = {max_k}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::pi;

    #[test]
    fn n5_is_pi_squared_over_150() {
        let v = perturbed_apery_constant(&ExponentSet::decimal(5, 20).unwrap(), 40).unwrap();
        let want = pi(50).square().div_i64(150);
        assert!(v.close_to(&want.with_digits(40), 35), "{v}");
    }

    #[test]
    fn even_under_sign_flip() {
        let ex = ExponentSet::decimal(6, 6).unwrap();
        let a = perturbed_apery_constant(&ex, 30).unwrap();
        let b = perturbed_apery_constant(&ex.negated(), 30).unwrap();
        assert!(a.close_to(&b, 28));
    }
}
