//! JSON shapes. Rationals are decimal strings `p/q` (`p` when `q = 1`);
//! Reals are `{digits, exponent, prec}` with value `digits · 2^exponent`,
//! so both round-trip bit-exactly.

use std::str::FromStr;

use aperylab_core::holonomic::{ApproxLimit, LimitMethod, Normalization, Recurrence, SeqPair};
use aperylab_core::modular::IdentityReport;
use aperylab_core::{PolyN, Rational, Real};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|_| CliError::Input(format!("`{s}` is not a rational p/q")))
}

fn rationals(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(rational_to_string).collect()
}

fn parse_rationals(xs: &[String]) -> Result<Vec<Rational>> {
    xs.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealJson {
    pub digits: String,
    pub exponent: i64,
    pub prec: u32,
}

impl RealJson {
    pub fn from_real(x: &Real) -> Self {
        let (m, e) = x.parts();
        RealJson {
            digits: m.to_string(),
            exponent: e,
            prec: x.digits(),
        }
    }

    pub fn to_real(&self) -> Result<Real> {
        let m = BigInt::from_str(self.digits.trim())
            .map_err(|_| CliError::Input(format!("`{}` is not an integer", self.digits)))?;
        Ok(Real::from_parts(m, self.exponent, self.prec))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftJson {
    pub i: usize,
    /// Ascending coefficients of `P_i(n)`.
    pub poly: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationJson {
    pub a0: String,
    pub b_first_index: usize,
    pub b_first_value: String,
}

impl NormalizationJson {
    pub fn from_normalization(n: &Normalization) -> Self {
        NormalizationJson {
            a0: rational_to_string(&n.a0),
            b_first_index: n.b_first_index,
            b_first_value: rational_to_string(&n.b_first_value),
        }
    }

    pub fn to_normalization(&self) -> Result<Normalization> {
        Ok(Normalization {
            a0: parse_rational(&self.a0)?,
            b_first_index: self.b_first_index,
            b_first_value: parse_rational(&self.b_first_value)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceJson {
    pub shifts: Vec<ShiftJson>,
    pub valid_from: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormalizationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl RecurrenceJson {
    pub fn from_recurrence(rec: &Recurrence, norm: Option<&Normalization>) -> Self {
        RecurrenceJson {
            shifts: rec
                .shifts()
                .iter()
                .map(|(i, p)| ShiftJson {
                    i: *i,
                    poly: rationals(p.coeffs()),
                })
                .collect(),
            valid_from: rec.valid_from(),
            normalization: norm.map(NormalizationJson::from_normalization),
            label: None,
        }
    }

    pub fn to_recurrence(&self) -> Result<Recurrence> {
        let shifts = self
            .shifts
            .iter()
            .map(|s| Ok((s.i, PolyN::new(parse_rationals(&s.poly)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Recurrence::new(shifts, self.valid_from)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqPairJson {
    pub variety: String,
    pub normalization: NormalizationJson,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

impl SeqPairJson {
    pub fn from_pair(p: &SeqPair) -> Self {
        SeqPairJson {
            variety: p.variety.clone(),
            normalization: NormalizationJson::from_normalization(&p.normalization),
            a: rationals(&p.a),
            b: rationals(&p.b),
        }
    }

    pub fn to_pair(&self) -> Result<SeqPair> {
        Ok(SeqPair {
            a: parse_rationals(&self.a)?,
            b: parse_rationals(&self.b)?,
            variety: self.variety.clone(),
            normalization: self.normalization.to_normalization()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxLimitJson {
    pub value: RealJson,
    pub error_estimate: RealJson,
    pub n_used: usize,
    pub method: String,
    pub certified_digits: u32,
    /// Human-readable value, truncated to the certified digits.
    pub decimal: String,
}

impl ApproxLimitJson {
    pub fn from_limit(l: &ApproxLimit) -> Self {
        let cd = l.certified_digits();
        ApproxLimitJson {
            value: RealJson::from_real(&l.value),
            error_estimate: RealJson::from_real(&l.error_estimate),
            n_used: l.n_used,
            method: match l.method {
                LimitMethod::PlainRatio => "plain_ratio",
                LimitMethod::Aitken => "aitken",
            }
            .to_string(),
            certified_digits: cd,
            decimal: l.value.to_sci_string(cd.max(1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchJson {
    pub power: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReportJson {
    pub variety: String,
    pub identity: String,
    pub order_checked: usize,
    pub status: String,
    pub first_mismatch: Option<MismatchJson>,
}

pub fn status(passed: bool) -> String {
    if passed { "pass" } else { "fail" }.to_string()
}

impl IdentityReportJson {
    pub fn from_report(r: &IdentityReport) -> Self {
        IdentityReportJson {
            variety: r.variety.to_string(),
            identity: r.identity.label().to_string(),
            order_checked: r.order_checked,
            status: status(r.passed()),
            first_mismatch: r.first_mismatch.as_ref().map(|m| MismatchJson {
                power: m.power,
                lhs: rational_to_string(&m.lhs),
                rhs: rational_to_string(&m.rhs),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyReportJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub e: String,
    pub u: String,
    pub ordering: Vec<usize>,
    pub power: i64,
    /// Eigen-residuals of `M_∞`, then the wedge ratio and combination
    /// residuals, then the second-route gap when the form is invertible.
    pub residuals: Vec<String>,
    pub status: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use aperylab_core::holonomic::{apery_pair, Variety};
    use aperylab_core::precision::pi;

    #[test]
    fn rational_strings() {
        let q = parse_rational("-12/8").unwrap();
        assert_eq!(rational_to_string(&q), "-3/2");
        assert_eq!(
            parse_rational(" 7 ").unwrap(),
            Rational::from_integer(7.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn real_round_trip_is_bit_exact() {
        let x = pi(60).mul_i64(-3);
        let j = RealJson::from_real(&x);
        let text = serde_json::to_string(&j).unwrap();
        let back: RealJson = serde_json::from_str(&text).unwrap();
        let y = back.to_real().unwrap();
        assert_eq!(x.parts(), y.parts());
        assert_eq!(x.digits(), y.digits());
    }

    #[test]
    fn seq_pair_round_trip() {
        let p = apery_pair(Variety::V12, 12).unwrap();
        let j = SeqPairJson::from_pair(&p);
        let back: SeqPairJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.to_pair().unwrap(), p);
    }
}
