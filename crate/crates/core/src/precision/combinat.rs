//! Binomials, factorials, `lcm(1..n)` and Bernoulli numbers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `lcm(1, 2, …, n)`; 1 for `n = 0`.
pub fn lcm_range(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc.lcm(&BigInt::from(i)))
}

/// Tangent numbers `T_1..T_m` (1, 2, 16, 272, …) by the in-place
/// integer recurrence of Brent and Harvey.
fn tangent_numbers(m: usize) -> Vec<BigInt> {
    let mut t = alloc::vec![BigInt::zero(); m + 1];
    if m == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=m {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=m {
        for j in k..=m {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

/// `B_0, B_2, …, B_{2m}` from
/// `B_{2k} = (−1)^{k−1}·2k·T_k / (4^k (4^k − 1))`.
fn compute_even(m: usize) -> Vec<Rational> {
    let t = tangent_numbers(m);
    let mut out = Vec::with_capacity(m + 1);
    out.push(Rational::one());
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - 1u32);
        let mut num = tk * BigInt::from(2 * k);
        if k % 2 == 0 {
            num = -num;
        }
        out.push(Rational::new(num, den));
    }
    out
}

#[cfg(feature = "std")]
mod cache {
    use super::*;
    use std::sync::RwLock;

    static EVEN: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

    pub(super) fn even_table(m: usize) -> Vec<Rational> {
        {
            let g = EVEN.read().unwrap_or_else(|e| e.into_inner());
            if g.len() > m {
                return g[..=m].to_vec();
            }
        }
        let mut g = EVEN.write().unwrap_or_else(|e| e.into_inner());
        if g.len() <= m {
            // Grow geometrically; the tangent recurrence is quadratic in m.
            let want = m.max(2 * g.len()).max(16);
            *g = compute_even(want);
        }
        g[..=m].to_vec()
    }
}

/// `[B_0, B_2, …, B_{2m}]`. Cached process-wide when `std` is enabled.
pub fn bernoulli_even_table(m: usize) -> Vec<Rational> {
    #[cfg(feature = "std")]
    {
        cache::even_table(m)
    }
    #[cfg(not(feature = "std"))]
    {
        compute_even(m)
    }
}

/// `B_k` with `B_1 = −1/2`.
pub fn bernoulli(k: u64) -> Rational {
    match k {
        0 => Rational::one(),
        1 => Rational::new((-1).into(), 2.into()),
        k if k % 2 == 1 => Rational::zero(),
        k => bernoulli_even_table((k / 2) as usize).pop().unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(1, 1), 1.into());
        assert_eq!(binomial(2, 1), 2.into());
        assert_eq!(binomial(10, 5), 252.into());
        assert_eq!(binomial(3, -1), 0.into());
        assert_eq!(binomial(3, 4), 0.into());
    }

    #[test]
    fn binomial_pascal() {
        for n in 1..40u64 {
            for k in 0..=n as i64 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_range(1), 1.into());
        assert_eq!(lcm_range(6), 60.into());
        assert_eq!(lcm_range(10), 2520.into());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).to_string(), "1");
        assert_eq!(bernoulli(1).to_string(), "-1/2");
        assert_eq!(bernoulli(2).to_string(), "1/6");
        assert_eq!(bernoulli(3).to_string(), "0");
        assert_eq!(bernoulli(4).to_string(), "-1/30");
        assert_eq!(bernoulli(12).to_string(), "-691/2730");
        assert_eq!(bernoulli(30).to_string(), "8615841276005/14322");
    }

    #[test]
    fn bernoulli_defining_recurrence() {
        let b: Vec<Rational> = (0..=60).map(bernoulli).collect();
        for k in 1..60u64 {
            let s = (0..=k).fold(Rational::zero(), |acc, j| {
                acc + Rational::from_integer(binomial(k + 1, j as i64)) * &b[j as usize]
            });
            assert!(s.is_zero(), "k = {k}");
        }
    }
}
