use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::precision::{PolyN, Rational};

/// The five rank-one Mukai threefolds with a quantum recurrence of Apery
/// type, labelled by their anticanonical degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    V10,
    V12,
    V14,
    V16,
    V18,
}

impl Variety {
    pub const ALL: [Variety; 5] = [
        Variety::V10,
        Variety::V12,
        Variety::V14,
        Variety::V16,
        Variety::V18,
    ];

    /// The three cases with a modular parametrization.
    pub const RATIONAL: [Variety; 3] = [Variety::V12, Variety::V16, Variety::V18];

    pub fn label(self) -> &'static str {
        match self {
            Variety::V10 => "V10",
            Variety::V12 => "V12",
            Variety::V14 => "V14",
            Variety::V16 => "V16",
            Variety::V18 => "V18",
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Variety {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "V10" => Ok(Variety::V10),
            "V12" => Ok(Variety::V12),
            "V14" => Ok(Variety::V14),
            "V16" => Ok(Variety::V16),
            "V18" => Ok(Variety::V18),
            _ => Err(Error::UnknownVariety(String::from(s))),
        }
    }
}

/// `Σ b_ij tⁱ Dʲ` with exact coefficients, keyed by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl DiffOp {
    pub fn new(terms: BTreeMap<(usize, usize), Rational>) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let op = DiffOp { terms };
        if op.order() == 0 {
            return Err(Error::Precondition(String::from(
                "operator order must be at least 1",
            )));
        }
        Ok(op)
    }

    /// `Σ_i tⁱ·p_i(D)` from polynomials in `D`.
    pub fn from_t_parts(parts: &[(usize, PolyN)]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (i, p) in parts {
            for (j, c) in p.coeffs().iter().enumerate() {
                *terms.entry((*i, j)).or_insert_with(Rational::zero) += c;
            }
        }
        DiffOp::new(terms)
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.terms
    }

    /// Highest power of `D`.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Highest power of `t`.
    pub fn t_degree(&self) -> usize {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// The coefficient of `tⁱ` as a polynomial in `D`.
    pub fn t_part(&self, i: usize) -> PolyN {
        let mut c = Vec::new();
        for (&(ii, j), b) in &self.terms {
            if ii == i {
                if c.len() <= j {
                    c.resize(j + 1, Rational::zero());
                }
                c[j] = b.clone();
            }
        }
        PolyN::new(c)
    }

    /// Applies the operator to the truncated series `Σ f_n tⁿ`; the result
    /// is exact up to the input length.
    pub fn apply_series(&self, f: &[Rational]) -> Vec<Rational> {
        let mut out = alloc::vec![Rational::zero(); f.len()];
        for (&(i, j), b) in &self.terms {
            for (n, fn_) in f.iter().enumerate() {
                if n + i >= out.len() {
                    break;
                }
                let nj = num_traits::pow(Rational::from_integer(n.into()), j);
                out[n + i] += b * nj * fn_;
            }
        }
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(i, j), b) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({b})")?;
            if i > 0 {
                write!(f, "·t^{i}")?;
            }
            if j > 0 {
                write!(f, "·D^{j}")?;
            }
        }
        Ok(())
    }
}

fn p(c: &[i64]) -> PolyN {
    PolyN::from_ints(c)
}

/// The quantum differential operator of a Mukai threefold.
pub fn mukai_operator(v: Variety) -> DiffOp {
    let d3 = p(&[0, 0, 0, 1]);
    let one_2d = p(&[1, 2]);
    let d1 = p(&[1, 1]);
    let d1_cubed = d1.pow(3);
    let k = |c: i64| PolyN::from_ints(&[c]);
    let (t1, t2) = match v {
        // D³ − 2t(1+2D)(11D²+11D+3) − 4t²(D+1)(2D+3)(1+2D)
        Variety::V10 => (
            &(&k(-2) * &one_2d) * &p(&[3, 11, 11]),
            &(&(&k(-4) * &d1) * &p(&[3, 2])) * &one_2d,
        ),
        // D³ − t(1+2D)(17D²+17D+5) + t²(D+1)³
        Variety::V12 => (&(&k(-1) * &one_2d) * &p(&[5, 17, 17]), d1_cubed),
        // D³ − t(1+2D)(13D²+13D+4) − 3t²(D+1)(3D+4)(3D+2)
        Variety::V14 => (
            &(&k(-1) * &one_2d) * &p(&[4, 13, 13]),
            &(&(&k(-3) * &d1) * &p(&[4, 3])) * &p(&[2, 3]),
        ),
        // D³ − 4t(1+2D)(3D²+3D+1) + 16t²(D+1)³
        Variety::V16 => (&(&k(-4) * &one_2d) * &p(&[1, 3, 3]), &k(16) * &d1_cubed),
        // D³ − 3t(1+2D)(3D²+3D+1) − 27t²(D+1)³
        Variety::V18 => (&(&k(-3) * &one_2d) * &p(&[1, 3, 3]), &k(-27) * &d1_cubed),
    };
    DiffOp::from_t_parts(&[(0, d3), (1, t1), (2, t2)]).expect("table operators have order 3")
}

impl DiffOp {
    /// Parses a label and returns its operator.
    pub fn mukai(label: &str) -> Result<Self> {
        label.parse::<Variety>().map(mukai_operator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn v12_expanded_coefficients() {
        let op = mukai_operator(Variety::V12);
        // −(1+2D)(17D²+17D+5) = −5 − 27D − 51D² − 34D³
        assert_eq!(op.t_part(1), PolyN::from_ints(&[-5, -27, -51, -34]));
        assert_eq!(op.t_part(2), PolyN::from_ints(&[1, 3, 3, 1]));
        assert_eq!(op.terms()[&(0, 3)], q(1));
        assert_eq!(op.order(), 3);
        assert_eq!(op.t_degree(), 2);
    }

    #[test]
    fn v18_and_v10_parts() {
        let v18 = mukai_operator(Variety::V18);
        assert_eq!(v18.t_part(2), PolyN::from_ints(&[-27, -81, -81, -27]));
        let v10 = mukai_operator(Variety::V10);
        // −4(D+1)(2D+3)(1+2D) = −12 − 44D − 48D² − 16D³
        assert_eq!(v10.t_part(2), PolyN::from_ints(&[-12, -44, -48, -16]));
    }

    #[test]
    fn labels() {
        assert_eq!("v14".parse::<Variety>().unwrap(), Variety::V14);
        assert!(matches!(
            "V20".parse::<Variety>(),
            Err(Error::UnknownVariety(_))
        ));
        assert!(DiffOp::mukai("X").is_err());
    }

    #[test]
    fn order_zero_is_rejected() {
        let mut t = BTreeMap::new();
        t.insert((1, 0), q(1));
        assert!(DiffOp::new(t).is_err());
    }

    #[test]
    fn apply_kills_solution_of_d() {
        let mut t = BTreeMap::new();
        t.insert((0, 1), q(1));
        let d = DiffOp::new(t).unwrap();
        let out = d.apply_series(&[q(4), q(0), q(0)]);
        assert!(out.iter().all(Zero::is_zero));
        let _ = format!("{d}");
    }
}
