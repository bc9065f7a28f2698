use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, Rational};

/// A polynomial in `n` over the rationals, coefficients ascending.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyN {
    coeffs: Vec<Rational>,
}

impl PolyN {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyN { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        PolyN::new(
            c.iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        PolyN { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        PolyN::new(alloc::vec![c])
    }

    /// The polynomial `n`.
    pub fn n() -> Self {
        PolyN::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_int(&self, n: i64) -> Rational {
        self.eval(&Rational::from_integer(n.into()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PolyN::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(n + s)`, expanded by the binomial theorem.
    pub fn shift(&self, s: i64) -> Self {
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len()];
        let s = BigInt::from(s);
        for (j, c) in self.coeffs.iter().enumerate() {
            let mut pow = BigInt::one();
            for k in (0..=j).rev() {
                let bin = binomial(j as u64, k as i64);
                out[k] += c * Rational::from_integer(&bin * &pow);
                pow *= &s;
            }
        }
        PolyN::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(PolyN::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// `n(n−1)⋯(n−i+1)`.
    pub fn falling_factorial(i: usize) -> Self {
        (0..i).fold(PolyN::constant(Rational::one()), |acc, k| {
            &acc * &PolyN::from_ints(&[-(k as i64), 1])
        })
    }

    /// Cauchy bound on the absolute value of the real roots, as an
    /// integer; 0 for constants.
    pub fn root_bound(&self) -> BigInt {
        let Some(d) = self.degree() else {
            return BigInt::zero();
        };
        if d == 0 {
            return BigInt::zero();
        }
        let lead = &self.coeffs[d];
        let m = self.coeffs[..d]
            .iter()
            .map(|c| num_traits::Signed::abs(&(c / lead)))
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        (m + Rational::one()).ceil().to_integer()
    }
}

/// Horner evaluation of `p` at the integer `n`.
pub fn eval_poly(p: &PolyN, n: i64) -> Rational {
    p.eval_int(n)
}

impl<'a> Add<&'a PolyN> for &'a PolyN {
    type Output = PolyN;
    fn add(self, o: &'a PolyN) -> PolyN {
        let len = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        PolyN::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a PolyN> for &'a PolyN {
    type Output = PolyN;
    fn sub(self, o: &'a PolyN) -> PolyN {
        self + &(-o)
    }
}

impl Neg for &PolyN {
    type Output = PolyN;
    fn neg(self) -> PolyN {
        PolyN {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a PolyN> for &'a PolyN {
    type Output = PolyN;
    fn mul(self, o: &'a PolyN) -> PolyN {
        if self.is_zero() || o.is_zero() {
            return PolyN::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyN::new(out)
    }
}

impl fmt::Display for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})n")?,
                _ => write!(f, "({c})n^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        assert_eq!(
            eval_poly(&PolyN::from_ints(&[0, 0, 0, 1]), 2),
            Rational::from_integer(8.into())
        );
        let apery = PolyN::from_ints(&[-5, 27, -51, 34]);
        assert_eq!(eval_poly(&apery, 1), Rational::from_integer(5.into()));
        assert_eq!(eval_poly(&PolyN::zero(), 17), Rational::zero());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = PolyN::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(PolyN::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn shift_agrees_with_evaluation() {
        let p = PolyN::from_ints(&[3, -1, 4, 1, -5]);
        let q = p.shift(-3);
        for n in -5..10 {
            assert_eq!(q.eval_int(n), p.eval_int(n - 3));
        }
    }

    #[test]
    fn falling_factorial_values() {
        let f = PolyN::falling_factorial(3);
        assert_eq!(f.eval_int(5), Rational::from_integer(60.into()));
        assert_eq!(f.eval_int(2), Rational::zero());
    }

    #[test]
    fn cauchy_bound_covers_roots() {
        let p = &PolyN::from_ints(&[-7, 1]) * &PolyN::from_ints(&[3, 1]);
        assert!(p.root_bound() >= BigInt::from(7));
    }
}
