//! Quantum Lefschetz: V10 ⊂ G(2,5) and V14 ⊂ G(2,6).
//!
//! Under `(n!)³(2n)!/(5n)!` (V10) or `(n!)⁶/(6n)!` (V14) the variety's
//! pair is proportional to the Grassmannian one. The two constants are
//! read off at `n = 0` and `n = 1` and then checked for every `n`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::grassmann::{grassmann_apery_limit, grassmann_pair};
use crate::error::{Error, Result};
use crate::holonomic::{apery_limit, apery_pair, tabulated_constant, ApproxLimit, Variety};
use crate::precision::{factorial, Rational, Real};
use crate::special::zeta_int;

/// Terms used for the two independent Apery limits.
const VARIETY_LIMIT_TERMS: usize = 200;
const GRASSMANN_LIMIT_TERMS: usize = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct LefschetzReport {
    pub variety: Variety,
    pub n: usize,
    pub n_max: usize,
    /// `a_n^V / (a_{Nn}·f(n))`, exact.
    pub kappa_a: Rational,
    /// First `n` where the a-ratio differs from `kappa_a`.
    pub a_mismatch: Option<usize>,
    /// `b_n^V / (b_{Nn}·f(n))` at `n = 1`.
    pub kappa_b: Real,
    /// Worst agreement of the b-ratio with `kappa_b` over `2 ≤ n ≤ n_max`.
    pub kappa_b_digits: u32,
    pub variety_limit: ApproxLimit,
    pub grassmann_limit: ApproxLimit,
    /// `variety_limit / grassmann_limit`.
    pub limit_ratio: Real,
    /// Tabulated constant over `6/(N²(N+1))`, both multiples of ζ(2).
    pub expected_ratio: Rational,
    /// Agreement of the tabulated constant with `6ζ(2)/(N²(N+1))·κ_b/κ_a`.
    pub table_digits: u32,
}

impl LefschetzReport {
    pub fn limit_ratio_digits(&self) -> u32 {
        self.limit_ratio.agreement_digits(&Real::from_rational(
            &self.expected_ratio,
            self.limit_ratio.digits(),
        ))
    }

    /// Proportionality exact in `a`, stable to `p − 10` digits in `b`, and
    /// both constant ratios right to 20 digits.
    pub fn passed(&self, p: u32) -> bool {
        self.a_mismatch.is_none()
            && self.kappa_b_digits + 10 >= p
            && self.limit_ratio_digits() >= 20
            && self.table_digits >= 20
    }
}

fn rescaling(v: Variety, n: u64) -> Result<Rational> {
    let f = |k: u64| factorial(k);
    match v {
        Variety::V10 => Ok(Rational::new(num_traits::pow(f(n), 3) * f(2 * n), f(5 * n))),
        Variety::V14 => Ok(Rational::new(num_traits::pow(f(n), 6), f(6 * n))),
        _ => Err(Error::UnknownVariety(format!(
            "{v} has no Grassmannian ambient here"
        ))),
    }
}

pub fn lefschetz_crosscheck(v: Variety, n_max: usize, p: u32) -> Result<LefschetzReport> {
    let n = match v {
        Variety::V10 => 5,
        Variety::V14 => 6,
        _ => {
            return Err(Error::UnknownVariety(format!(
                "{v} has no Grassmannian ambient here"
            )))
        }
    };
    if n_max < 2 {
        return Err(Error::Precondition(format!("n_max = {n_max} is too short")));
    }
    let pv = apery_pair(v, n_max)?;
    let g = grassmann_pair(n, n_max, p)?;
    let f: Vec<Rational> = (0..=n_max as u64)
        .map(|k| rescaling(v, k))
        .collect::<Result<_>>()?;

    let a_ratio = |k: usize| &pv.a[k] / (Rational::from_integer(g.a[k].clone()) * &f[k]);
    let kappa_a = a_ratio(0);
    let a_mismatch = (1..=n_max).find(|&k| g.a[k].is_zero() || a_ratio(k) != kappa_a);

    let wd = g.prec;
    let b_ratio = |k: usize| &Real::from_rational(&pv.b[k], wd) / &g.b[k].mul_rational(&f[k]);
    let kappa_b = b_ratio(1);
    let kappa_b_digits = (2..=n_max)
        .map(|k| b_ratio(k).agreement_digits(&kappa_b))
        .min()
        .unwrap_or(wd);

    let variety_limit = apery_limit(&apery_pair(v, VARIETY_LIMIT_TERMS)?, p)?;
    let grassmann_limit = grassmann_apery_limit(n, GRASSMANN_LIMIT_TERMS, p)?;
    let limit_ratio = &variety_limit.value / &grassmann_limit.value;

    let nn = n as i64;
    let thm = Rational::new(6.into(), BigInt::from(nn * nn * (nn + 1)));
    let table = tabulated_constant(v);
    let expected_ratio = &table.factor / &thm;
    let predicted = zeta_int(2, p + 5)?.mul_rational(&thm)
        * (&kappa_b.with_digits(p + 5) / &Real::from_rational(&kappa_a, p + 5));
    let table_digits = table.value(p + 5)?.agreement_digits(&predicted);

    Ok(LefschetzReport {
        variety: v,
        n,
        n_max,
        kappa_a,
        a_mismatch,
        kappa_b,
        kappa_b_digits,
        variety_limit,
        grassmann_limit,
        limit_ratio,
        expected_ratio,
        table_digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v10_constants() {
        let r = lefschetz_crosscheck(Variety::V10, 8, 25).unwrap();
        assert_eq!(r.kappa_a, Rational::from_integer(1.into()));
        assert!(r.kappa_b.close_to(&Real::from_f64(2.5, 30), 20));
        assert_eq!(r.expected_ratio, Rational::new(5.into(), 2.into()));
        assert!(r.passed(25), "{r:?}");
    }

    #[test]
    fn rational_varieties_have_no_ambient() {
        assert!(lefschetz_crosscheck(Variety::V12, 8, 20).is_err());
    }
}
