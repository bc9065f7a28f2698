//! The five Apery constants as rational multiples of L-values.

use crate::error::Result;
use crate::precision::{Rational, Real};
use crate::special::{LKind, LValueRequest};

use super::operator::Variety;

/// `factor × L(s)` for the L-function `kind`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedConstant {
    pub factor: Rational,
    pub kind: LKind,
    pub s: i64,
}

impl TabulatedConstant {
    pub fn value(&self, p: u32) -> Result<Real> {
        let l = LValueRequest {
            kind: self.kind.clone(),
            s: self.s,
            prec: p + 5,
        }
        .evaluate()?;
        Ok(l.mul_rational(&self.factor).with_digits(p))
    }

    pub fn describe(&self) -> alloc::string::String {
        let l = match self.kind {
            LKind::Chi3 => alloc::format!("L(χ₃,{})", self.s),
            _ => alloc::format!("ζ({})", self.s),
        };
        alloc::format!("{}·{l}", self.factor)
    }
}

/// ζ(2)/10, ζ(3)/6, ζ(2)/7, 7ζ(3)/32 and L(χ₃,3)/3.
pub fn tabulated_constant(v: Variety) -> TabulatedConstant {
    let (num, den, kind, s) = match v {
        Variety::V10 => (1, 10, LKind::Zeta, 2),
        Variety::V12 => (1, 6, LKind::Zeta, 3),
        Variety::V14 => (1, 7, LKind::Zeta, 2),
        Variety::V16 => (7, 32, LKind::Zeta, 3),
        Variety::V18 => (1, 3, LKind::Chi3, 3),
    };
    TabulatedConstant {
        factor: Rational::new(num.into(), den.into()),
        kind,
        s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v12_is_zeta3_over_6() {
        let c = tabulated_constant(Variety::V12).value(20).unwrap();
        assert_eq!(c.to_sci_string(12), "2.00342817193e-1");
        assert_eq!(tabulated_constant(Variety::V18).describe(), "1/3·L(χ₃,3)");
    }
}
