//! π, ln 2 and Euler's γ.

use num_bigint::BigInt;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::{One, Zero};

use super::elementary::{atan_inv_fixed, atanh_inv_fixed, from_fixed, to_fixed};
use super::real::{digits_to_bits, Real};

/// π · 2^w by Machin's formula 16·atan(1/5) − 4·atan(1/239).
pub(crate) fn pi_fixed(w: u64) -> BigInt {
    let wg = w + 16;
    let v = atan_inv_fixed(5, wg) * 16u32 - atan_inv_fixed(239, wg) * 4u32;
    v >> 16u32
}

/// ln 2 · 2^w by 18·atanh(1/26) − 2·atanh(1/4801) + 8·atanh(1/8749).
pub(crate) fn ln2_fixed(w: u64) -> BigInt {
    let wg = w + 16;
    let v = atanh_inv_fixed(26, wg) * 18u32 - atanh_inv_fixed(4801, wg) * 2u32
        + atanh_inv_fixed(8749, wg) * 8u32;
    v >> 16u32
}

pub fn pi(digits: u32) -> Real {
    let w = digits_to_bits(digits) + 16;
    from_fixed(pi_fixed(w), w, digits)
}

pub fn ln2(digits: u32) -> Real {
    let w = digits_to_bits(digits) + 16;
    from_fixed(ln2_fixed(w), w, digits)
}

/// Euler–Mascheroni constant by the Brent–McMillan sums
/// `γ ≈ U/V − ln n` with `U = Σ (n^k/k!)² (H_k)`, `V = Σ (n^k/k!)²`.
/// The truncation error is about `π e^{-4n}`.
pub fn euler_gamma(digits: u32) -> Real {
    let w = digits_to_bits(digits) + 32;
    let n = (w as f64 * core::f64::consts::LN_2 / 4.0).ceil() as u64 + 2;
    let wd = (w as f64 * core::f64::consts::LOG10_2).ceil() as u32 + 2;
    let ln_n = Real::from_i64(n as i64, wd).ln();
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut a = -to_fixed(&ln_n, w);
    let mut b = BigInt::one() << w;
    let mut u = a.clone();
    let mut v = b.clone();
    let mut k: u64 = 1;
    loop {
        let kb = BigInt::from(k);
        b = &b * &n2 / (&kb * &kb);
        a = (&a * &n2 / &kb + &b) / &kb;
        if k > n && a.is_zero() && b.is_zero() {
            break;
        }
        u += &a;
        v += &b;
        k += 1;
    }
    let num = Real::from_parts(u, 0, digits + 2);
    let den = Real::from_parts(v, 0, digits + 2);
    (num / den).with_digits(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_prints() {
        assert_eq!(pi(10).to_sci_string(10), "3.141592654e0");
        assert_eq!(pi(1).to_sci_string(1), "3e0");
        assert_eq!(
            pi(40).to_sci_string(40),
            "3.141592653589793238462643383279502884197e0"
        );
    }

    #[test]
    fn ln2_matches_slow_series() {
        let w = 300;
        let slow = atanh_inv_fixed(3, w) * 2u32;
        let fast = ln2_fixed(w);
        let diff = (slow - fast).magnitude().bits();
        assert!(diff < 8, "{diff}");
    }

    #[test]
    fn gamma_prints() {
        assert_eq!(euler_gamma(10).to_sci_string(10), "5.772156649e-1");
        assert_eq!(euler_gamma(1).to_sci_string(1), "6e-1");
        assert_eq!(
            euler_gamma(30).to_sci_string(30),
            "5.77215664901532860606512090082e-1"
        );
    }
}
