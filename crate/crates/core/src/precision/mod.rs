//! Exact and approximate arithmetic, the precision policy, constants and
//! combinatorics.
//!
//! `Rational` is an eagerly reduced big rational. It is a re-export of
//! `num_rational::BigRational`, which prints as `p/q`, or `p` when `q = 1`.
//! [`Real`] and [`Complex`] carry their working precision in decimal
//! digits.

mod combinat;
mod complex;
mod consts;
mod elementary;
mod poly;
mod real;

pub use combinat::{bernoulli, bernoulli_even_table, binomial, factorial, lcm_range};
pub use complex::Complex;
pub use consts::{euler_gamma, ln2, pi};
pub use poly::{eval_poly, PolyN};
pub use real::{digits_to_bits, parse_decimal_rational, Real};

use crate::error::{Error, Result};
use alloc::format;
#[cfg(not(feature = "std"))]
use num_traits::Float;

pub type Rational = num_rational::BigRational;

/// Guard digits for a computation that accumulates over `n_terms` steps:
/// `10 + ceil(10·log10(1 + n_terms))`.
pub fn guard_digits(n_terms: usize) -> u32 {
    10 + (10.0 * (1.0 + n_terms as f64).log10()).ceil() as u32
}

/// Runs `f` at `p + g` and at `p + 2g` digits and returns the second
/// result rounded to `p` digits once the two agree to `p` digits.
pub fn certify<F>(p: u32, g: u32, mut f: F) -> Result<Real>
where
    F: FnMut(u32) -> Result<Real>,
{
    let lo = f(p + g)?;
    let hi = f(p + 2 * g)?;
    check_agreement(&lo, &hi, p)?;
    Ok(hi.with_digits(p))
}

/// Errors unless `a` and `b` agree to `p` digits relative to their size.
/// Two values that are both below `10^-p` in magnitude count as agreeing.
pub fn check_agreement(a: &Real, b: &Real, p: u32) -> Result<()> {
    if b.close_to(a, p) {
        Ok(())
    } else {
        Err(Error::PrecisionExhausted(format!(
            "recomputation at higher precision moved the result: {} vs {}",
            a.to_sci_string(p.min(30)),
            b.to_sci_string(p.min(30))
        )))
    }
}
