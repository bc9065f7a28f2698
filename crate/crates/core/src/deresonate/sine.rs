//! The sine formula `lim r_e^(n)/r_u^(n) = sin(2πe)/sin(2πu)`.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{cancellation_digits, wronskian_pair, ExponentSet};
use crate::error::{Error, Result};
use crate::holonomic::{ratio_limit, ApproxLimit};
use crate::precision::{guard_digits, pi, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct SineReport {
    pub exps: ExponentSet,
    pub limit: ApproxLimit,
    pub target: Real,
    pub matches: bool,
}

/// `sin(2πx)` for rational `x`.
pub(crate) fn sin_2pi(x: &crate::precision::Rational, wd: u32) -> Real {
    let w = wd + 5;
    let arg = pi(w).mul_pow2(1).mul_rational(x);
    arg.sin().with_digits(wd)
}

/// Extrapolates the ratio of the two Wronskian series from its last six
/// terms through `n_max` and compares with the sine ratio.
pub fn sine_ratio_check(exps: &ExponentSet, n_max: usize, p: u32) -> Result<SineReport> {
    if n_max < 6 {
        return Err(Error::Precondition(alloc::format!(
            "n_max = {n_max} is too short"
        )));
    }
    let extra = cancellation_digits(exps.n(), n_max) + 2 * exps.depth().ceil() as u32;
    let limit = ratio_limit(n_max + 1, p, 6, |wd, tail| {
        let (re, ru) = wronskian_pair(exps, n_max, wd + extra)?;
        Ok((n_max + 1 - tail..=n_max)
            .map(|n| (&re.coeffs[n] / &ru.coeffs[n]).with_digits(wd))
            .collect::<Vec<_>>())
    })?;
    let wd = p + 2 * guard_digits(n_max + 1);
    let target = &sin_2pi(exps.e(), wd) / &sin_2pi(exps.u(), wd);
    let matches = limit.contains(&target);
    Ok(SineReport {
        exps: exps.clone(),
        limit,
        target,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::Rational;

    #[test]
    fn short_run_already_matches() {
        let ex = ExponentSet::new(
            5,
            Rational::new(1.into(), 8.into()),
            Rational::new(1.into(), 12.into()),
        )
        .unwrap();
        let r = sine_ratio_check(&ex, 80, 20).unwrap();
        assert!(r.matches, "{} vs {}", r.limit.value, r.target);
        assert!(r.limit.error_estimate.log10_abs() < -15.0);
    }
}
