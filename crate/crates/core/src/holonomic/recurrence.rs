use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::operator::{mukai_operator, DiffOp, Variety};
use crate::error::{Error, Result};
use crate::precision::{lcm_range, PolyN, Rational};

/// `Σ_i P_i(n)·u(n−i) = 0`, asserted for `n ≥ valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    shifts: Vec<(usize, PolyN)>,
    valid_from: usize,
}

/// Largest integer root `r ≥ 0` of `p`, if any. Searches up to the Cauchy
/// bound, so the answer holds for all integers.
fn last_nonnegative_root(p: &PolyN) -> Option<usize> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let bound = p.root_bound().to_usize().unwrap_or(usize::MAX);
    (0..=bound).rev().find(|&n| p.eval_int(n as i64).is_zero())
}

impl Recurrence {
    /// Checks that `P_0` exists and never vanishes at `n ≥ valid_from`.
    pub fn new(shifts: Vec<(usize, PolyN)>, valid_from: usize) -> Result<Self> {
        let mut merged: Vec<(usize, PolyN)> = Vec::new();
        for (i, p) in shifts {
            match merged.iter_mut().find(|(j, _)| *j == i) {
                Some((_, q)) => *q = &*q + &p,
                None => merged.push((i, p)),
            }
        }
        merged.retain(|(_, p)| !p.is_zero());
        merged.sort_by_key(|(i, _)| *i);
        let Some((0, p0)) = merged.first() else {
            return Err(Error::Precondition(String::from(
                "recurrence needs a nonzero P_0",
            )));
        };
        if let Some(r) = last_nonnegative_root(p0) {
            if r >= valid_from {
                return Err(Error::LeadingZero { n: r });
            }
        }
        Ok(Recurrence {
            shifts: merged,
            valid_from,
        })
    }

    /// The same relation asserted from a later index.
    pub fn with_valid_from(&self, valid_from: usize) -> Result<Self> {
        Recurrence::new(self.shifts.clone(), valid_from)
    }

    pub fn shifts(&self) -> &[(usize, PolyN)] {
        &self.shifts
    }

    pub fn poly(&self, i: usize) -> PolyN {
        self.shifts
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    }

    pub fn order(&self) -> usize {
        self.shifts.last().map(|(i, _)| *i).unwrap_or(0)
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// `Σ_i P_i(n) u(n−i)` with `u` zero at negative indices.
    pub fn residual(&self, u: &[Rational], n: usize) -> Rational {
        self.shifts
            .iter()
            .filter(|(i, _)| *i <= n)
            .map(|(i, p)| p.eval_int(n as i64) * &u[n - i])
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// `P_i(n) = Σ_j b_ij (n−i)ʲ`. `valid_from` is one past the last
/// nonnegative integer root of `P_0`.
pub fn op_to_recurrence(op: &DiffOp) -> Recurrence {
    let mut shifts = Vec::new();
    for i in 0..=op.t_degree() {
        let part = op.t_part(i);
        if !part.is_zero() {
            shifts.push((i, part.shift(-(i as i64))));
        }
    }
    let p0 = shifts
        .iter()
        .find(|(i, _)| *i == 0)
        .map(|(_, p)| p.clone())
        .unwrap_or_default();
    let valid_from = last_nonnegative_root(&p0).map_or(0, |r| r + 1);
    Recurrence::new(shifts, valid_from).expect("valid_from chosen past the last root")
}

/// The recurrence satisfied by `n!·u(n)`: `P_i` is multiplied by
/// `n(n−1)⋯(n−i+1)`.
pub fn regularize_recurrence(rec: &Recurrence) -> Recurrence {
    let shifts = rec
        .shifts
        .iter()
        .map(|(i, p)| (*i, p * &PolyN::falling_factorial(*i)))
        .collect();
    Recurrence::new(shifts, rec.valid_from).expect("P_0 is unchanged")
}

/// Forward solution `u(0..=n_max)` from the given initial terms.
pub fn solve(rec: &Recurrence, initial: &[Rational], n_max: usize) -> Result<Vec<Rational>> {
    if initial.len() < rec.valid_from {
        return Err(Error::Precondition(format!(
            "{} initial values given, the recurrence is asserted only from n = {}",
            initial.len(),
            rec.valid_from
        )));
    }
    let mut u: Vec<Rational> = initial.iter().take(n_max + 1).cloned().collect();
    let p0 = rec.poly(0);
    for n in u.len()..=n_max {
        let lead = p0.eval_int(n as i64);
        if lead.is_zero() {
            return Err(Error::LeadingZero { n });
        }
        let mut acc = Rational::zero();
        for (i, p) in rec.shifts.iter().skip(1) {
            if *i <= n {
                acc += p.eval_int(n as i64) * &u[n - i];
            }
        }
        u.push(-acc / lead);
    }
    Ok(u)
}

/// How a solution pair is pinned down: `a(0) = a0`, `b` vanishes below
/// `b_first_index` and equals `b_first_value` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub a0: Rational,
    pub b_first_index: usize,
    pub b_first_value: Rational,
}

impl Normalization {
    /// `a₀ = 1`, `b₀ = 0`, `b₁ = 1`.
    pub fn standard() -> Self {
        Normalization {
            a0: Rational::one(),
            b_first_index: 1,
            b_first_value: Rational::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqPair {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub variety: String,
    pub normalization: Normalization,
}

impl SeqPair {
    pub fn len(&self) -> usize {
        self.a.len().min(self.b.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The first `n + 1` terms.
    pub fn truncated(&self, n_max: usize) -> SeqPair {
        SeqPair {
            a: self.a.iter().take(n_max + 1).cloned().collect(),
            b: self.b.iter().take(n_max + 1).cloned().collect(),
            variety: self.variety.clone(),
            normalization: self.normalization.clone(),
        }
    }
}

/// `a` from `[a0]`; `b` from zeros up to `b_first_index` followed by
/// `b_first_value`, with the relation asserted only past that index.
pub fn pair_from_recurrence(
    rec: &Recurrence,
    norm: &Normalization,
    label: &str,
    n_max: usize,
) -> Result<SeqPair> {
    let a = solve(rec, core::slice::from_ref(&norm.a0), n_max)?;
    let mut init = alloc::vec![Rational::zero(); norm.b_first_index];
    init.push(norm.b_first_value.clone());
    let b_rec = rec.with_valid_from(rec.valid_from.max(norm.b_first_index + 1))?;
    let b = solve(&b_rec, &init, n_max)?;
    Ok(SeqPair {
        a,
        b,
        variety: String::from(label),
        normalization: norm.clone(),
    })
}

/// The normalized Apery pair of a Mukai threefold, `n = 0..=n_max`.
pub fn apery_pair(v: Variety, n_max: usize) -> Result<SeqPair> {
    let rec = op_to_recurrence(&mukai_operator(v));
    let pair = pair_from_recurrence(&rec, &Normalization::standard(), v.label(), n_max)?;
    if let Some(n) = pair.a.iter().position(|x| !x.is_integer()) {
        return Err(Error::Integrality {
            n,
            detail: format!("a_{n} = {} for {v}", pair.a[n]),
        });
    }
    Ok(pair)
}

/// Whether the denominator of `b_n` divides `12·lcm(1..n)³`.
pub fn denominator_bound_check(pair: &SeqPair, n: usize) -> Result<bool> {
    let b = pair.b.get(n).ok_or_else(|| {
        Error::Precondition(format!("b_{n} requested, {} terms available", pair.b.len()))
    })?;
    let l = lcm_range(n as u64);
    let bound = BigInt::from(12) * &l * &l * &l;
    Ok(bound.is_multiple_of(b.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn v12_operator_gives_apery_recurrence() {
        let rec = op_to_recurrence(&mukai_operator(Variety::V12));
        assert_eq!(rec.poly(0), PolyN::from_ints(&[0, 0, 0, 1]));
        assert_eq!(rec.poly(1), PolyN::from_ints(&[5, -27, 51, -34]));
        assert_eq!(rec.poly(2), PolyN::from_ints(&[-1, 3, -3, 1]));
        assert_eq!(rec.valid_from(), 1);
    }

    #[test]
    fn v18_recurrence() {
        let rec = op_to_recurrence(&mukai_operator(Variety::V18));
        let expect1 = &(&PolyN::from_ints(&[-3]) * &PolyN::from_ints(&[-1, 2]))
            * &PolyN::from_ints(&[1, -3, 3]);
        assert_eq!(rec.poly(1), expect1);
        assert_eq!(
            rec.poly(2),
            &PolyN::from_ints(&[-27]) * &PolyN::from_ints(&[-1, 1]).pow(3)
        );
    }

    #[test]
    fn pure_d_cubed() {
        let mut t = BTreeMap::new();
        t.insert((0, 3), q(1, 1));
        let rec = op_to_recurrence(&DiffOp::new(t).unwrap());
        assert_eq!(rec.shifts().len(), 1);
        assert_eq!(rec.poly(0), PolyN::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn first_terms() {
        let p = apery_pair(Variety::V12, 3).unwrap();
        let a: Vec<Rational> = [1, 5, 73, 1445].iter().map(|&v| q(v, 1)).collect();
        assert_eq!(p.a, a);
        assert_eq!(p.b[..3], [q(0, 1), q(1, 1), q(117, 8)]);
        let z = apery_pair(Variety::V16, 0).unwrap();
        assert_eq!((z.a.len(), z.b.len()), (1, 1));
        assert_eq!(z.b[0], q(0, 1));
        let v10 = apery_pair(Variety::V10, 2).unwrap();
        assert_eq!(v10.a, [q(1, 1), q(6, 1), q(114, 1)]);
    }

    #[test]
    fn constant_sequence() {
        let rec = Recurrence::new(
            alloc::vec![(0, PolyN::from_ints(&[1])), (1, PolyN::from_ints(&[-1]))],
            0,
        )
        .unwrap();
        let u = solve(&rec, &[q(1, 1)], 5).unwrap();
        assert!(u.iter().all(|x| *x == q(1, 1)));
    }

    #[test]
    fn leading_root_after_valid_from_is_rejected() {
        let p0 = PolyN::from_ints(&[-4, 1]);
        let err = Recurrence::new(alloc::vec![(0, p0)], 2).unwrap_err();
        assert_eq!(err, Error::LeadingZero { n: 4 });
    }

    #[test]
    fn solve_needs_initial_values() {
        let rec = op_to_recurrence(&mukai_operator(Variety::V12));
        assert!(solve(&rec, &[], 3).is_err());
    }

    #[test]
    fn small_denominators() {
        let p = apery_pair(Variety::V12, 2).unwrap();
        assert!(denominator_bound_check(&p, 1).unwrap());
        assert!(denominator_bound_check(&p, 2).unwrap());
        assert!(denominator_bound_check(&p, 3).is_err());
    }

    #[test]
    fn regularized_shift_polynomials() {
        let rec = op_to_recurrence(&mukai_operator(Variety::V12));
        let reg = regularize_recurrence(&rec);
        assert_eq!(reg.poly(1), &rec.poly(1) * &PolyN::n());
        assert_eq!(reg.poly(2), &rec.poly(2) * &PolyN::falling_factorial(2));
    }
}
