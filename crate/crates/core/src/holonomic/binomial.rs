//! Apery's closed binomial sums for the ζ(3) pair, computed without any
//! recurrence.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::recurrence::{Normalization, SeqPair};
use crate::precision::{binomial, Rational};

/// Power of `m` in the inner harmonic sum `Σ_{m≤n} 1/m^k` of `b_n`.
/// The recurrence-equivalence test selects [`InnerExponent::Cube`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerExponent {
    Square,
    Cube,
}

/// `a_n = Σ_k C(n,k)² C(n+k,k)²` and
/// `b_n = (1/6) Σ_k C(n,k)² C(n+k,k)² (Σ_{m≤n} 1/m³ + Σ_{m≤k} (−1)^{m−1} / (2m³ C(n,m) C(n+m,m)))`.
pub fn apery_binomial_oracle(n_max: usize) -> SeqPair {
    apery_binomial_oracle_with(n_max, InnerExponent::Cube)
}

pub fn apery_binomial_oracle_with(n_max: usize, inner: InnerExponent) -> SeqPair {
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    let pw = match inner {
        InnerExponent::Square => 2,
        InnerExponent::Cube => 3,
    };
    let sixth = Rational::new(1.into(), 6.into());
    for n in 0..=n_max as u64 {
        let harmonic = (1..=n).fold(Rational::zero(), |acc, m| {
            acc + Rational::new(1.into(), num_traits::pow(m.into(), pw))
        });
        let mut an = Rational::zero();
        let mut bn = Rational::zero();
        let mut inner_alt = Rational::zero();
        for k in 0..=n {
            if k >= 1 {
                let m = k;
                let den = num_traits::pow(num_bigint::BigInt::from(m), 3)
                    * 2
                    * binomial(n, m as i64)
                    * binomial(n + m, m as i64);
                let term = Rational::new(1.into(), den);
                if m % 2 == 1 {
                    inner_alt += term;
                } else {
                    inner_alt -= term;
                }
            }
            let c = binomial(n, k as i64) * binomial(n + k, k as i64);
            let w = Rational::from_integer(&c * &c);
            bn += &w * (&harmonic + &inner_alt);
            an += w;
        }
        a.push(an);
        b.push(bn * &sixth);
    }
    SeqPair {
        a,
        b,
        variety: String::from("V12"),
        normalization: Normalization {
            a0: Rational::one(),
            b_first_index: 1,
            b_first_value: Rational::one(),
        },
    }
}
