//! Binary floating-point reals of arbitrary precision.
//!
//! A [`Real`] is `mantissa · 2^exp` with a precision expressed in decimal
//! digits. The mantissa holds `ceil(digits · log2 10) + 4` bits. Addition,
//! subtraction and multiplication round to nearest (≤ ½ ulp); division and
//! square root are within 1 ulp. Elementary functions work with 32 or more
//! guard bits and round once at the end.
//!
//! Binary operations return the smaller of the two operand precisions.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
#[cfg(not(feature = "std"))]
use num_traits::Float;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

const LOG2_10: f64 = core::f64::consts::LOG2_10;
const LOG10_2: f64 = core::f64::consts::LOG10_2;

/// Mantissa width used for `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u64 {
    (f64::from(digits) * LOG2_10).ceil() as u64 + 4
}

#[derive(Clone, Debug)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    digits: u32,
}

impl Real {
    pub fn zero(digits: u32) -> Self {
        Real {
            mant: BigInt::zero(),
            exp: 0,
            digits,
        }
    }

    pub fn one(digits: u32) -> Self {
        Real::from_i64(1, digits)
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        Real::from_parts(BigInt::from(v), 0, digits)
    }

    pub fn from_int(v: &BigInt, digits: u32) -> Self {
        Real::from_parts(v.clone(), 0, digits)
    }

    /// `mant · 2^exp`, rounded to `digits`.
    pub fn from_parts(mant: BigInt, exp: i64, digits: u32) -> Self {
        Real { mant, exp, digits }.normalized()
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, digits: u32) -> Self {
        assert!(!den.is_zero(), "division by zero");
        let n = Real {
            mant: num.clone(),
            exp: 0,
            digits,
        };
        let d = Real {
            mant: den.clone(),
            exp: 0,
            digits,
        };
        n.div_ref(&d)
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Self {
        Real::from_ratio(q.numer(), q.denom(), digits)
    }

    /// Nearest `Real` to an `f64`; exact when the precision holds 53 bits.
    pub fn from_f64(v: f64, digits: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Real::zero(digits);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Real::from_parts(BigInt::from(m) * sign, e, digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Raw `(mantissa, binary exponent)`; the value is `mantissa · 2^exp`.
    pub fn parts(&self) -> (&BigInt, i64) {
        (&self.mant, self.exp)
    }

    /// Same value carried at a different precision. Lowering rounds;
    /// raising keeps the value and only widens later results.
    pub fn with_digits(&self, digits: u32) -> Self {
        Real {
            mant: self.mant.clone(),
            exp: self.exp,
            digits,
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Real {
            mant: self.mant.abs(),
            exp: self.exp,
            digits: self.digits,
        }
    }

    /// `floor(log2 |x|)`, `None` for zero.
    pub fn ilog2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    /// Approximate `log10 |x|`; `-inf` for zero. Good to about 1e-12.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let len = self.mant.bits() as i64;
        let keep = len.min(60);
        let top = (self.mant.magnitude() >> (len - keep) as u64)
            .to_f64()
            .unwrap_or(f64::MAX);
        top.log10() + (self.exp + len - keep) as f64 * LOG10_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = self.mant.bits() as i64;
        let keep = len.min(60);
        let top = (self.mant.magnitude() >> (len - keep) as u64)
            .to_f64()
            .unwrap_or(f64::MAX);
        let scale = self.exp + len - keep;
        let v = if scale > 1023 {
            f64::INFINITY
        } else if scale < -1100 {
            0.0
        } else {
            top * 2f64.powi(scale as i32)
        };
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = digits_to_bits(self.digits);
        let len = self.mant.bits();
        if len > bits {
            let shift = len - bits;
            let sign = self.mant.sign();
            let mut mag: BigUint = self.mant.magnitude() >> (shift - 1);
            mag += 1u32;
            mag >>= 1u32;
            self.exp += shift as i64;
            if mag.bits() > bits {
                mag >>= 1u32;
                self.exp += 1;
            }
            self.mant = BigInt::from_biguint(sign, mag);
        }
        // Strip trailing zero bits so equal values share a representation.
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    fn add_ref(&self, other: &Real) -> Real {
        let digits = self.digits.min(other.digits);
        if other.is_zero() {
            return self.with_digits(digits);
        }
        if self.is_zero() {
            return other.with_digits(digits);
        }
        let bits = digits_to_bits(digits) as i64;
        let top_a = self.exp + self.mant.bits() as i64;
        let top_b = other.exp + other.mant.bits() as i64;
        if top_a > top_b + bits + 2 {
            return self.with_digits(digits);
        }
        if top_b > top_a + bits + 2 {
            return other.with_digits(digits);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Real {
            mant: a + b,
            exp: e,
            digits,
        }
        .normalized()
    }

    fn mul_ref(&self, other: &Real) -> Real {
        Real {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            digits: self.digits.min(other.digits),
        }
        .normalized()
    }

    fn div_ref(&self, other: &Real) -> Real {
        assert!(!other.is_zero(), "division by zero");
        let digits = self.digits.min(other.digits);
        if self.is_zero() {
            return Real::zero(digits);
        }
        let bits = digits_to_bits(digits);
        let shift = (bits + 2 + other.mant.bits()).saturating_sub(self.mant.bits());
        let q = (&self.mant << shift) / &other.mant;
        Real {
            mant: q,
            exp: self.exp - shift as i64 - other.exp,
            digits,
        }
        .normalized()
    }

    pub fn recip(&self) -> Real {
        Real::one(self.digits).div_ref(self)
    }

    pub fn square(&self) -> Real {
        self.mul_ref(self)
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        Real {
            mant: &self.mant * k,
            exp: self.exp,
            digits: self.digits,
        }
        .normalized()
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        Real {
            mant: &self.mant * k,
            exp: self.exp,
            digits: self.digits,
        }
        .normalized()
    }

    pub fn div_i64(&self, k: i64) -> Real {
        self.div_ref(&Real::from_i64(k, self.digits))
    }

    pub fn div_int(&self, k: &BigInt) -> Real {
        self.div_ref(&Real::from_int(k, self.digits))
    }

    pub fn mul_rational(&self, q: &Rational) -> Real {
        self.mul_int(q.numer()).div_int(q.denom())
    }
    /// `10^k` at `digits` digits.
    pub fn pow10(k: i64, digits: u32) -> Real {
        let t = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
        if k >= 0 {
            Real::from_int(&t, digits)
        } else {
            Real::from_ratio(&BigInt::one(), &t, digits)
        }
    }

    /// `x · 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real {
            mant: self.mant.clone(),
            exp: self.exp + k,
            digits: self.digits,
        }
    }

    pub fn powi(&self, n: i64) -> Real {
        if n == 0 {
            return Real::one(self.digits);
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        // Extra bits absorb the log2(n) roundings of square-and-multiply.
        let extra = 2 + 64u32.saturating_sub(n.leading_zeros());
        let base = self.with_digits(self.digits + extra);
        let mut acc = Real::one(base.digits);
        let mut sq = base;
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.square();
            }
        }
        acc.with_digits(self.digits)
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let bits = digits_to_bits(self.digits);
        let want = 2 * (bits + 2);
        let mut shift = want.saturating_sub(self.mant.bits()) as i64;
        if (self.exp - shift).is_odd() {
            shift += 1;
        }
        let m = self.mant.magnitude() << shift as u64;
        let r = m.sqrt();
        Real::from_parts(BigInt::from(r), (self.exp - shift) / 2, self.digits)
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let sh = (-self.exp) as u64;
        let sign = self.mant.sign();
        let mag = (self.mant.magnitude() >> (sh - 1)) + 1u32;
        BigInt::from_biguint(sign, mag >> 1u32)
    }

    pub fn floor_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let den = BigInt::one() << (-self.exp) as u64;
        self.mant.div_floor(&den)
    }

    /// Exact rational value of this binary number.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Decimal digits on which `self` and `other` agree, relative to the
    /// larger magnitude; capped at the smaller precision.
    pub fn agreement_digits(&self, other: &Real) -> u32 {
        let cap = self.digits.min(other.digits);
        let diff = self - other;
        if diff.is_zero() {
            return cap;
        }
        let scale = self.log10_abs().max(other.log10_abs());
        let d = scale - diff.log10_abs();
        if d <= 0.0 {
            0
        } else {
            (d.floor() as u32).min(cap)
        }
    }

    /// `|self - other| <= 10^-digits · max(|other|, 10^-digits)`.
    pub fn close_to(&self, other: &Real, digits: u32) -> bool {
        let diff = (self - other).abs();
        if diff.is_zero() {
            return true;
        }
        let scale = other.log10_abs().max(-f64::from(digits));
        diff.log10_abs() <= scale - f64::from(digits)
    }

    /// Scientific notation with `sig` significant digits, e.g.
    /// `-1.2020569031e0`.
    pub fn to_sci_string(&self, sig: u32) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            let mut s = String::from("0");
            if sig > 1 {
                s.push('.');
                for _ in 1..sig {
                    s.push('0');
                }
            }
            s.push_str("e0");
            return s;
        }
        let mut e10 = self.log10_abs().floor() as i64;
        let mut n = self.scaled_decimal(i64::from(sig) - 1 - e10);
        let upper = BigUint::from(10u32).pow(sig);
        if n >= upper {
            e10 += 1;
            n = self.scaled_decimal(i64::from(sig) - 1 - e10);
        } else if n < BigUint::from(10u32).pow(sig - 1) {
            e10 -= 1;
            n = self.scaled_decimal(i64::from(sig) - 1 - e10);
        }
        // Rounding up can still carry into an extra digit.
        if n >= upper {
            n /= 10u32;
            e10 += 1;
        }
        let ds = n.to_str_radix(10);
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        out.push_str(&ds[..1]);
        if ds.len() > 1 {
            out.push('.');
            out.push_str(&ds[1..]);
        }
        out.push('e');
        out.push_str(&alloc::format!("{e10}"));
        out
    }

    /// `round(|x| · 10^s)`.
    fn scaled_decimal(&self, s: i64) -> BigUint {
        let mut num = self.mant.magnitude().clone();
        let mut den = BigUint::one();
        if s >= 0 {
            num *= BigUint::from(10u32).pow(s as u32);
        } else {
            den *= BigUint::from(10u32).pow((-s) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if r << 1u32 >= den {
            q + 1u32
        } else {
            q
        }
    }

    /// Parses what [`Real::to_sci_string`] prints, or a plain decimal.
    pub fn parse_decimal(s: &str, digits: u32) -> Option<Real> {
        parse_decimal_rational(s).map(|q| Real::from_rational(&q, digits))
    }

    pub fn max_abs<'a, I: IntoIterator<Item = &'a Real>>(it: I) -> Option<Real> {
        it.into_iter()
            .map(Real::abs)
            .reduce(|a, b| if b > a { b } else { a })
    }
}

/// Exact rational value of a decimal literal such as `-1.25e-3` or `7`.
pub fn parse_decimal_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (ip, fp) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut digits: Vec<u8> = Vec::with_capacity(ip.len() + fp.len());
    digits.extend_from_slice(ip.as_bytes());
    digits.extend_from_slice(fp.as_bytes());
    let mant = if digits.is_empty() {
        BigInt::zero()
    } else {
        BigInt::parse_bytes(&digits, 10)?
    };
    let mant = if neg { -mant } else { mant };
    let e = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    Some(if e >= 0 {
        Rational::from_integer(mant * num_traits::pow(ten, e as usize))
    } else {
        Rational::new(mant, num_traits::pow(ten, (-e) as usize))
    })
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Real {
    fn cmp_value(&self, other: &Real) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().map(|p| p as u32).unwrap_or(self.digits);
        f.write_str(&self.to_sci_string(sig))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                self.$inner(rhs)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                (&self).$inner(rhs)
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$inner(&rhs)
            }
        }
    };
}

impl Real {
    fn sub_ref(&self, other: &Real) -> Real {
        self.add_ref(&-other)
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            mant: -self.mant,
            exp: self.exp,
            digits: self.digits,
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            mant: -&self.mant,
            exp: self.exp,
            digits: self.digits,
        }
    }
}
