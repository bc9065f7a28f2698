//! Frobenius basis at a maximal unipotent point and the mirror map.
//!
//! With `L tⁿ⁺ᵋ` expanded through `P_i(n+ε)`, the coefficients `A_n(ε)` of
//! `Σ A_n(ε) tⁿ⁺ᵋ` solve `Σ_i P_i(n+ε) A_{n−i}(ε) = 0`. Working modulo ε²
//! gives both the analytic solution `A = A(0)` and the logarithmic one
//! `A·log t + Ã` with `Ã_n = A_n'(0)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::operator::DiffOp;
use super::recurrence::op_to_recurrence;
use crate::error::{Error, Result};
use crate::modular::QSeries;
use crate::precision::{PolyN, Rational};

/// `a + a'·ε` modulo ε².
#[derive(Clone, Debug)]
struct Dual(Rational, Rational);

impl Dual {
    fn mul(&self, o: &Dual) -> Dual {
        Dual(&self.0 * &o.0, &self.0 * &o.1 + &self.1 * &o.0)
    }

    fn div(&self, o: &Dual) -> Dual {
        let v = &self.0 / &o.0;
        Dual(v.clone(), (&self.1 - &v * &o.1) / &o.0)
    }
}

fn derivative(p: &PolyN) -> PolyN {
    PolyN::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c * Rational::from_integer(BigInt::from(j)))
            .collect(),
    )
}

fn ensure_mum(op: &DiffOp) -> Result<()> {
    let p0 = op.t_part(0);
    let k = op.order();
    let pure = p0.degree() == Some(k) && p0.coeffs()[..k].iter().all(Zero::is_zero);
    if pure && k >= 2 {
        Ok(())
    } else {
        Err(Error::NotMum)
    }
}

/// `(A, Ã)` through `t^order`, with `A_0 = 1` and `Ã_0 = 0`.
pub fn frobenius_mum(op: &DiffOp, order: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    ensure_mum(op)?;
    let rec = op_to_recurrence(op);
    let polys: Vec<(usize, PolyN, PolyN)> = rec
        .shifts()
        .iter()
        .map(|(i, p)| (*i, p.clone(), derivative(p)))
        .collect();
    let at = |p: &PolyN, dp: &PolyN, n: usize| Dual(p.eval_int(n as i64), dp.eval_int(n as i64));
    let mut coeffs: Vec<Dual> =
        alloc::vec![Dual(Rational::from_integer(1.into()), Rational::zero())];
    for n in 1..=order {
        let mut acc = Dual(Rational::zero(), Rational::zero());
        let mut lead = None;
        for (i, p, dp) in &polys {
            if *i == 0 {
                lead = Some(at(p, dp, n));
            } else if *i <= n {
                let t = at(p, dp, n).mul(&coeffs[n - i]);
                acc = Dual(acc.0 - t.0, acc.1 - t.1);
            }
        }
        let lead = lead.expect("P_0 exists");
        coeffs.push(acc.div(&lead));
    }
    Ok(coeffs.into_iter().map(|d| (d.0, d.1)).unzip())
}

/// `L(F·log t + G)` returned in the same `(log part, plain part)` form,
/// exact up to the input length. Uses `D(f log t) = (Df) log t + f`.
pub fn apply_to_log_series(
    op: &DiffOp,
    f: &[Rational],
    g: &[Rational],
) -> (Vec<Rational>, Vec<Rational>) {
    let len = f.len().min(g.len());
    let mut log_part = alloc::vec![Rational::zero(); len];
    let mut plain = alloc::vec![Rational::zero(); len];
    for (&(i, j), b) in op.terms() {
        for n in 0..len {
            if n + i >= len {
                break;
            }
            let nn = Rational::from_integer(BigInt::from(n));
            // Dʲ(tⁿ log t) = nʲ tⁿ log t + j n^{j−1} tⁿ
            let nj = num_traits::pow(nn.clone(), j);
            let dnj = if j == 0 {
                Rational::zero()
            } else {
                Rational::from_integer(BigInt::from(j)) * num_traits::pow(nn, j - 1)
            };
            log_part[n + i] += b * &nj * &f[n];
            plain[n + i] += b * (&dnj * &f[n] + &nj * &g[n]);
        }
    }
    (log_part, plain)
}

/// `q(t) = t·exp(Ã/A)` and its compositional inverse `t(q)`.
pub fn mirror_map(op: &DiffOp, order: usize) -> Result<(QSeries, QSeries)> {
    let (a, at) = frobenius_mum(op, order)?;
    let a = QSeries::new(a, order);
    let at = QSeries::new(at, order);
    let ratio = &at * &a.inv()?;
    let q_of_t = &QSeries::var(order) * &ratio.exp()?;
    if order == 0 {
        return Ok((q_of_t.clone(), q_of_t));
    }
    let t_of_q = q_of_t.reverse()?;
    Ok((q_of_t, t_of_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomic::{apery_pair, mukai_operator, Variety};
    use alloc::collections::BTreeMap;

    fn d_cubed() -> DiffOp {
        let mut t = BTreeMap::new();
        t.insert((0, 3), Rational::from_integer(1.into()));
        DiffOp::new(t).unwrap()
    }

    #[test]
    fn analytic_solution_is_the_apery_sequence() {
        for v in Variety::ALL {
            let (a, _) = frobenius_mum(&mukai_operator(v), 12).unwrap();
            assert_eq!(a, apery_pair(v, 12).unwrap().a, "{v}");
        }
    }

    #[test]
    fn pure_power_of_d() {
        let (a, at) = frobenius_mum(&d_cubed(), 5).unwrap();
        assert_eq!(a[0], Rational::from_integer(1.into()));
        assert!(a[1..].iter().all(Zero::is_zero));
        assert!(at.iter().all(Zero::is_zero));
    }

    #[test]
    fn log_solution_is_annihilated() {
        let op = mukai_operator(Variety::V16);
        let (a, at) = frobenius_mum(&op, 15).unwrap();
        let (l, p) = apply_to_log_series(&op, &a, &at);
        assert!(l.iter().all(Zero::is_zero));
        assert!(p.iter().all(Zero::is_zero));
    }

    #[test]
    fn non_mum_is_rejected() {
        let mut t = BTreeMap::new();
        t.insert((0, 3), Rational::from_integer(1.into()));
        t.insert((0, 1), Rational::from_integer(1.into()));
        assert_eq!(
            frobenius_mum(&DiffOp::new(t).unwrap(), 3).unwrap_err(),
            Error::NotMum
        );
    }

    #[test]
    fn mirror_map_round_trip() {
        let (qt, tq) = mirror_map(&mukai_operator(Variety::V12), 20).unwrap();
        assert_eq!(qt.coeff(0), Rational::zero());
        assert_eq!(qt.coeff(1), Rational::from_integer(1.into()));
        assert_eq!(tq.compose(&qt).unwrap(), QSeries::var(20));
        assert_eq!(qt.compose(&tq).unwrap(), QSeries::var(20));
    }
}
