//! exp, ln, sin and cos on [`Real`].
//!
//! Each function converts to a fixed-point integer with `w` fraction bits,
//! where `w` is the target mantissa width plus 32 guard bits (plus room for
//! argument reduction), evaluates a Taylor or atanh series there and rounds
//! once into the result.

use num_bigint::BigInt;
use num_integer::Integer;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::consts::{ln2_fixed, pi_fixed};
use super::real::{digits_to_bits, Real};

const GUARD_BITS: u64 = 32;

/// `round(x · 2^w)`.
pub(crate) fn to_fixed(x: &Real, w: u64) -> BigInt {
    let (m, e) = x.parts();
    let sh = e + w as i64;
    if sh >= 0 {
        m << sh as u64
    } else {
        let den = BigInt::one() << (-sh) as u64;
        let (q, r) = m.div_mod_floor(&den);
        if (r << 1u32) >= den {
            q + 1
        } else {
            q
        }
    }
}

pub(crate) fn from_fixed(v: BigInt, w: u64, digits: u32) -> Real {
    Real::from_parts(v, -(w as i64), digits)
}

/// `(a · b) / 2^w` truncated toward zero, the fixed-point product.
/// Truncation (not floor) lets series of negative terms die out at 0.
#[inline]
pub(crate) fn fmul(a: &BigInt, b: &BigInt, w: u64) -> BigInt {
    let p = a * b;
    if p.is_negative() {
        -((-p) >> w)
    } else {
        p >> w
    }
}

/// Σ_{k≥0} x^{2k+1}/(2k+1) for a fixed-point `x` with `|x| < 1`.
pub(crate) fn atanh_fixed(x: &BigInt, w: u64) -> BigInt {
    let x2 = fmul(x, x, w);
    let mut pow = x.clone();
    let mut sum = x.clone();
    let mut k: u64 = 1;
    loop {
        pow = fmul(&pow, &x2, w);
        if pow.is_zero() {
            break;
        }
        sum += &pow / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

/// atanh(1/m) for an integer `m ≥ 2`, one division per term.
pub(crate) fn atanh_inv_fixed(m: u64, w: u64) -> BigInt {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut pow = (BigInt::one() << w) / BigInt::from(m);
    let mut sum = pow.clone();
    let mut k: u64 = 1;
    loop {
        pow /= &m2;
        if pow.is_zero() {
            break;
        }
        sum += &pow / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

/// atan(1/m), alternating version of [`atanh_inv_fixed`].
pub(crate) fn atan_inv_fixed(m: u64, w: u64) -> BigInt {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut pow = (BigInt::one() << w) / BigInt::from(m);
    let mut sum = pow.clone();
    let mut k: u64 = 1;
    loop {
        pow /= &m2;
        if pow.is_zero() {
            break;
        }
        let t = &pow / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn isqrt_u64(v: u64) -> u64 {
    (v as f64).sqrt() as u64
}

impl Real {
    pub fn exp(&self) -> Real {
        let digits = self.digits();
        if self.is_zero() {
            return Real::one(digits);
        }
        let bits = digits_to_bits(digits);
        // |x|/ln2 bounds the binary exponent of the result.
        let mag = self.ilog2().unwrap_or(0).max(0) as u64;
        let w = bits + GUARD_BITS + mag;
        let x = to_fixed(self, w);
        let l2 = ln2_fixed(w);
        let k = {
            let twice = (&x << 1u32) + &l2;
            twice.div_floor(&(&l2 << 1u32))
        };
        let r = &x - &k * &l2;
        // Halve s times so the Taylor series needs about sqrt(w) terms.
        let s = isqrt_u64(w) / 2;
        let ws = w + s + 8;
        let mut rr = r << (ws - w);
        rr >>= s;
        let one = BigInt::one() << ws;
        let mut term = one.clone();
        let mut sum = one;
        let mut j: u64 = 1;
        loop {
            term = fmul(&term, &rr, ws) / BigInt::from(j);
            if term.is_zero() {
                break;
            }
            sum += &term;
            j += 1;
        }
        for _ in 0..s {
            sum = fmul(&sum, &sum, ws);
        }
        let k = k.to_i64().expect("exponent overflow in exp");
        Real::from_parts(sum, k - ws as i64, digits)
    }

    /// Natural logarithm; panics for `x ≤ 0`.
    pub fn ln(&self) -> Real {
        assert!(self.signum() > 0, "logarithm of a non-positive number");
        let digits = self.digits();
        let bits = digits_to_bits(digits);
        let mut k = self.ilog2().unwrap();
        // Near 1 the result is small and needs fraction bits below it.
        let near_one = (self - &Real::one(digits))
            .ilog2()
            .map_or(0, |l| (-l).max(0) as u64);
        let w = bits + GUARD_BITS + 64 + near_one;
        // f = x / 2^k in [1, 2); move to [1/√2, √2).
        let mut f = to_fixed(&self.mul_pow2(-k), w);
        let sqrt2 = BigInt::from(0x16A09E667F3BCC90u64) << (w - 60);
        if f > sqrt2 {
            f >>= 1;
            k += 1;
        }
        let one = BigInt::one() << w;
        let z = ((&f - &one) << w) / (&f + &one);
        let mut v = atanh_fixed(&z, w) << 1u32;
        if k != 0 {
            v += ln2_fixed(w) * BigInt::from(k);
        }
        from_fixed(v, w, digits)
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> (Real, Real) {
        let digits = self.digits();
        if self.is_zero() {
            return (Real::zero(digits), Real::one(digits));
        }
        let bits = digits_to_bits(digits);
        let mag = self.ilog2().unwrap_or(0).max(0) as u64;
        // Small arguments lose relative accuracy in sin unless the fixed
        // point reaches below them.
        let tiny = (-self.ilog2().unwrap_or(0)).max(0) as u64;
        let w = bits + GUARD_BITS + mag + tiny;
        let x = to_fixed(self, w);
        let half_pi = pi_fixed(w + 2) >> 3u32;
        let q = {
            let twice = (&x << 1u32) + &half_pi;
            twice.div_floor(&(&half_pi << 1u32))
        };
        let r = &x - &q * &half_pi;
        let (s, c) = sin_cos_taylor(&r, w);
        let quadrant = q.mod_floor(&BigInt::from(4)).to_u8().unwrap();
        let (s, c) = match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (from_fixed(s, w, digits), from_fixed(c, w, digits))
    }

    pub fn sin(&self) -> Real {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Real {
        self.sin_cos().1
    }

    /// `x^y = exp(y ln x)` for `x > 0`.
    pub fn powf(&self, y: &Real) -> Real {
        let d = self.digits().min(y.digits());
        let extra = 5 + (y.log10_abs().max(0.0) + self.ln().abs().log10_abs().max(0.0)) as u32;
        let x = self.with_digits(d + extra);
        (x.ln() * y.with_digits(d + extra)).exp().with_digits(d)
    }
}

fn sin_cos_taylor(r: &BigInt, w: u64) -> (BigInt, BigInt) {
    let r2 = fmul(r, r, w);
    let mut term = r.clone();
    let mut s = r.clone();
    let mut j: u64 = 1;
    loop {
        term = -fmul(&term, &r2, w) / BigInt::from((2 * j) * (2 * j + 1));
        if term.is_zero() {
            break;
        }
        s += &term;
        j += 1;
    }
    let mut term = BigInt::one() << w;
    let mut c = term.clone();
    let mut j: u64 = 1;
    loop {
        term = -fmul(&term, &r2, w) / BigInt::from((2 * j - 1) * (2 * j));
        if term.is_zero() {
            break;
        }
        c += &term;
        j += 1;
    }
    (s, c)
}
