use core::ops::{Add, Div, Mul, Neg, Sub};

use super::{pi, Rational, Real};

/// A pair of [`Real`]s at a common precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        let d = re.digits().min(im.digits());
        Complex {
            re: re.with_digits(d),
            im: im.with_digits(d),
        }
    }

    pub fn from_real(re: Real) -> Self {
        let d = re.digits();
        Complex {
            re,
            im: Real::zero(d),
        }
    }

    pub fn zero(digits: u32) -> Self {
        Complex {
            re: Real::zero(digits),
            im: Real::zero(digits),
        }
    }

    pub fn one(digits: u32) -> Self {
        Complex {
            re: Real::one(digits),
            im: Real::zero(digits),
        }
    }

    pub fn digits(&self) -> u32 {
        self.re.digits()
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        Complex {
            re: self.re.with_digits(digits),
            im: self.im.with_digits(digits),
        }
    }

    /// `exp(iθ)`.
    pub fn cis(theta: &Real) -> Self {
        let (s, c) = theta.sin_cos();
        Complex { re: c, im: s }
    }

    /// `exp(2πi·α)` for a rational α.
    pub fn exp_2pi_i(alpha: &Rational, digits: u32) -> Self {
        let d = digits + 5;
        let theta = pi(d).mul_pow2(1).mul_rational(alpha);
        Complex::cis(&theta).with_digits(digits)
    }

    /// `exp(2πi·α)` for a real α.
    pub fn exp_2pi_i_real(alpha: &Real) -> Self {
        let d = alpha.digits();
        let theta = pi(d + 5).mul_pow2(1) * alpha.with_digits(d + 5);
        Complex::cis(&theta).with_digits(d)
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return Complex::one(self.digits()) / self.powi(-n);
        }
        let mut acc = Complex::one(self.digits());
        let mut sq = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &'a Complex) -> Complex {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &'a Complex) -> Complex {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &'a Complex) -> Complex {
        Complex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, o: &'a Complex) -> Complex {
        let den = o.norm_sqr();
        let num = self * &o.conj();
        Complex {
            re: &num.re / &den,
            im: &num.im / &den,
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                (&self).$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);
