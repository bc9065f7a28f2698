//! Monodromy of the regularized hypergeometric equation through its
//! reflection data, and the second-wedge identity behind the sine formula.
//!
//! With `H(y) = (1−y^N)/∏(1−y·z_i)`, `z_i = exp(2πiα_i)`, `H = 1 + Σ c_i yⁱ`,
//! the basis `v_1..v_N` carries `(v_i,v_i) = 2` and `(v_i,v_j) = c_{|j−i|}`.
//! The turn around the `j`-th root of unity is the reflection in `v_j`, and
//! the vectors with pairings `(e_i, v_j) = z_iʲ` diagonalize the monodromy
//! at infinity.

pub mod linalg;
mod wedge;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use num_traits::{Signed, Zero};

use crate::precision::{guard_digits, Complex, Rational, Real};
use linalg::{cnorm, identity, mat_cvec, mat_mul, solve, Matrix};

pub use wedge::{wedge_coefficient_identity, WedgeFrame, WedgeReport};

/// Taylor coefficients `c_0..c_order` of `H(y)`. The exponents must be
/// symmetric under `α ↔ 1−α`, which makes the coefficients real; the
/// imaginary parts are checked below `10^{−p}` and dropped.
pub fn h_expansion(alphas: &[Rational], order: usize, p: u32) -> Result<Vec<Real>> {
    let n = alphas.len();
    let wd = p + guard_digits(n + order);
    let len = order + 1;
    let mut h: Vec<Complex> = (0..len).map(|_| Complex::zero(wd)).collect();
    h[0] = Complex::one(wd);
    if n < len {
        h[n] = -&Complex::one(wd);
    }
    for a in alphas {
        let z = Complex::exp_2pi_i(a, wd);
        // multiply by 1/(1 − y·z): h_k += z·h_{k−1}
        for k in 1..len {
            let t = &z * &h[k - 1];
            h[k] = &h[k] + &t;
        }
    }
    let tol = Real::pow10(-i64::from(p), wd);
    let mut out = Vec::with_capacity(len);
    for (k, c) in h.into_iter().enumerate() {
        let scale = if c.re.abs() > Real::one(wd) {
            c.re.abs()
        } else {
            Real::one(wd)
        };
        if c.im.abs() > &tol * &scale {
            return Err(Error::Precondition(format!(
                "H(y) coefficient {k} has imaginary part {}; exponents are not symmetric",
                c.im.to_sci_string(5)
            )));
        }
        out.push(c.re.with_digits(p));
    }
    Ok(out)
}

/// Exponents, the coefficients of `H`, and the symmetric form on `v_1..v_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypFrame {
    pub alphas: Vec<Rational>,
    pub c: Vec<Real>,
    pub gram: Matrix,
    pub prec: u32,
}

impl HypFrame {
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    /// `z_i = exp(2πiα_i)` at the frame precision.
    pub fn z(&self) -> Vec<Complex> {
        self.alphas
            .iter()
            .map(|a| Complex::exp_2pi_i(a, self.prec))
            .collect()
    }

    /// The semiorthogonal half `[v_i, v_j)`: 1 on the diagonal, `c_{j−i}`
    /// above, 0 below; `gram` is its symmetrization.
    pub fn half_form(&self) -> Matrix {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match j.cmp(&i) {
                        core::cmp::Ordering::Equal => Real::one(self.prec),
                        core::cmp::Ordering::Greater => self.c[j - i].clone(),
                        core::cmp::Ordering::Less => Real::zero(self.prec),
                    })
                    .collect()
            })
            .collect()
    }

    /// `{½∓e, ½∓u}` completed by `½±w_k`, `w_k = (k+1)/(5N+3)`, and one `½`
    /// for odd `N`. The fillers split the remaining resonance; whether the
    /// form is nondegenerate depends on `e, u` (see [`is_admissible`]).
    pub fn deresonated(n: usize, e: &Rational, u: &Rational, p: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::Precondition(format!(
                "N must be at least 4, got {n}"
            )));
        }
        gram_matrix(&deresonated_exponents(n, e, u), p)
    }
}

fn deresonated_exponents(n: usize, e: &Rational, u: &Rational) -> Vec<Rational> {
    let h = Rational::new(1.into(), 2.into());
    let mut alphas = alloc::vec![&h - e, &h + e, &h - u, &h + u];
    let den = Rational::from_integer((5 * n as i64 + 3).into());
    let mut k = 0i64;
    while alphas.len() + 2 <= n {
        let w = Rational::from_integer((k + 1).into()) / &den;
        alphas.push(&h - &w);
        alphas.push(&h + &w);
        k += 1;
    }
    if alphas.len() < n {
        alphas.push(h);
    }
    alphas
}

/// Whether `(e, u)` gives a usable deresonated frame of rank `n`: `e, u`
/// nonzero with `|e|, |u| < 1/4`, all exponents distinct, and no `N·α_i`
/// an integer (otherwise the symmetric form degenerates).
pub fn is_admissible(n: usize, e: &Rational, u: &Rational) -> bool {
    let quarter = Rational::new(1.into(), 4.into());
    if n < 4 || e.is_zero() || u.is_zero() || e.abs() >= quarter || u.abs() >= quarter {
        return false;
    }
    let alphas = deresonated_exponents(n, e, u);
    let nq = Rational::from_integer((n as i64).into());
    for (i, a) in alphas.iter().enumerate() {
        if (a * &nq).is_integer() || alphas[..i].contains(a) {
            return false;
        }
    }
    true
}

/// `(v_i,v_i) = 2`, `(v_i,v_j) = c_{|j−i|}`.
pub fn gram_matrix(alphas: &[Rational], p: u32) -> Result<HypFrame> {
    let n = alphas.len();
    if n < 2 {
        return Err(Error::Precondition(String::from(
            "a frame needs at least two exponents",
        )));
    }
    let c = h_expansion(alphas, n - 1, p)?;
    let gram = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Real::from_i64(2, p)
                    } else {
                        c[i.abs_diff(j)].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(HypFrame {
        alphas: alphas.to_vec(),
        c,
        gram,
        prec: p,
    })
}

/// `x ↦ x − (x, v_j)·v_j` (0-based `j`).
pub fn reflection(frame: &HypFrame, j: usize) -> Result<Matrix> {
    let n = frame.n();
    if j >= n {
        return Err(Error::Precondition(format!(
            "reflection index {j} out of range for N = {n}"
        )));
    }
    let mut r = identity(n, frame.prec);
    for k in 0..n {
        r[j][k] = &r[j][k] - &frame.gram[j][k];
    }
    Ok(r)
}

/// Result of matching the Vandermonde vectors against `M_∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenReport {
    pub n: usize,
    /// Reflections in the order applied, 1-based.
    pub ordering: Vec<usize>,
    /// `λ_i = z_i^{power}`, `power = ±N`.
    pub power: i64,
    /// `‖M e_i − λ_i e_i‖ / ‖e_i‖`.
    pub residuals: Vec<Real>,
    pub tolerance: Real,
    /// Candidate orderings with their worst residual.
    pub tried: Vec<(Vec<usize>, i64, Real)>,
}

impl EigenReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| *r < self.tolerance)
    }
}

/// Candidate orderings: every rotation of `1..N`, forwards then reversed.
fn orderings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for rev in [false, true] {
        for rot in 0..n {
            let mut o: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
            if rev {
                o.reverse();
            }
            out.push(o);
        }
    }
    out
}

/// Eigenvectors `x_i = G^{−1}(z_i, z_i², …, z_i^N)`.
pub fn vandermonde_vectors(frame: &HypFrame) -> Result<Vec<Vec<Complex>>> {
    let n = frame.n();
    frame
        .z()
        .iter()
        .map(|z| {
            let rhs: Vec<Complex> = (1..=n as i64).map(|j| z.powi(j)).collect();
            solve(&frame.gram, &rhs)
        })
        .collect()
}

fn residual(m: &Matrix, x: &[Complex], lambda: &Complex) -> Real {
    let w = mat_cvec(m, x);
    let diff: Vec<Complex> = w.iter().zip(x).map(|(a, b)| a - &(lambda * b)).collect();
    &cnorm(&diff) / &cnorm(x)
}

/// Builds `M_∞` for each candidate ordering of the reflections and keeps
/// the first for which every Vandermonde vector is an eigenvector with
/// eigenvalue `z_i^{±N}` to `10^{−(p−15)}`.
pub fn infinity_monodromy_eigencheck(frame: &HypFrame, p: u32) -> Result<EigenReport> {
    let n = frame.n();
    let wd = frame.prec;
    let xs = vandermonde_vectors(frame)?;
    let z = frame.z();
    let tolerance = Real::pow10(-i64::from(p.saturating_sub(15)), wd);
    let reflections: Vec<Matrix> = (0..n)
        .map(|j| reflection(frame, j))
        .collect::<Result<_>>()?;
    let mut tried = Vec::new();
    for o in orderings(n) {
        let mut m = identity(n, wd);
        for &j in &o {
            m = mat_mul(&reflections[j], &m);
        }
        for power in [-(n as i64), n as i64] {
            let residuals: Vec<Real> = xs
                .iter()
                .zip(&z)
                .map(|(x, zi)| residual(&m, x, &zi.powi(power)))
                .collect();
            let worst = Real::max_abs(residuals.iter()).unwrap_or_else(|| Real::zero(wd));
            let ordering: Vec<usize> = o.iter().map(|j| j + 1).collect();
            tried.push((ordering.clone(), power, worst.clone()));
            if worst < tolerance {
                return Ok(EigenReport {
                    n,
                    ordering,
                    power,
                    residuals,
                    tolerance,
                    tried,
                });
            }
        }
    }
    let best = tried
        .iter()
        .min_by(|a, b| a.2.partial_cmp(&b.2).unwrap())
        .map(|t| t.2.to_sci_string(3))
        .unwrap_or_default();
    Err(Error::Verification(format!(
        "no reflection ordering diagonalizes M_∞; best residual {best}"
    )))
}

/// `det R_j` through an LU factorization.
pub fn reflection_det(frame: &HypFrame, j: usize) -> Result<Real> {
    Ok(linalg::det(&reflection(frame, j)?))
}

#[cfg(test)]
pub(crate) fn is_negligible(x: &Real, wd: u32, slack: u32) -> bool {
    x.is_zero() || x.log10_abs() < -f64::from(wd.saturating_sub(slack))
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg::{max_diff, transpose};

    #[test]
    fn admissibility() {
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        assert!(is_admissible(5, &q(1, 8), &q(1, 12)));
        // 5·(1/2 − 1/10) = 2
        assert!(!is_admissible(5, &q(1, 10), &q(1, 14)));
        assert!(is_admissible(6, &q(1, 10), &q(1, 14)));
        assert!(!is_admissible(5, &q(1, 8), &q(-1, 8)));
        assert!(!is_admissible(5, &q(1, 4), &q(1, 12)));
        // collides with the filler 1/33 at N = 6
        assert!(!is_admissible(6, &q(1, 33), &q(1, 12)));
        assert!(is_admissible(5, &q(1, 33), &q(1, 12)));
        let f = HypFrame::deresonated(6, &q(1, 10), &q(1, 14), 40).unwrap();
        assert!(vandermonde_vectors(&f).is_ok());
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn resonant_halves_give_c1_minus_n() {
        let alphas = alloc::vec![q(1, 2); 6];
        let c = h_expansion(&alphas, 3, 30).unwrap();
        assert!(c[0].close_to(&Real::one(30), 28));
        assert!(c[1].close_to(&Real::from_i64(-6, 30), 28));
    }

    #[test]
    fn asymmetric_exponents_are_rejected() {
        assert!(h_expansion(&[q(1, 3), q(1, 2)], 2, 30).is_err());
    }

    #[test]
    fn gram_entries() {
        let f = HypFrame::deresonated(5, &q(1, 8), &q(1, 12), 30).unwrap();
        assert!(f
            .gram
            .iter()
            .enumerate()
            .all(|(i, r)| r[i] == Real::from_i64(2, 30)));
        assert_eq!(f.gram[0][2], f.c[2]);
        assert_eq!(f.gram, transpose(&f.gram));
    }

    #[test]
    fn reflections_are_isometric_involutions() {
        let f = HypFrame::deresonated(6, &q(1, 10), &q(1, 14), 40).unwrap();
        let id = identity(6, 40);
        for j in 0..6 {
            let r = reflection(&f, j).unwrap();
            assert!(is_negligible(&max_diff(&mat_mul(&r, &r), &id), 40, 3));
            let g2 = mat_mul(&mat_mul(&transpose(&r), &f.gram), &r);
            assert!(is_negligible(&max_diff(&g2, &f.gram), 40, 3));
            assert!(reflection_det(&f, j)
                .unwrap()
                .close_to(&Real::from_i64(-1, 40), 35));
            let col: Vec<Real> = r.iter().map(|row| row[j].clone()).collect();
            assert!(col.iter().enumerate().all(|(k, v)| if k == j {
                v.close_to(&Real::from_i64(-1, 40), 38)
            } else {
                is_negligible(v, 40, 3)
            }));
        }
    }

    #[test]
    fn two_dimensional_frame() {
        let f = gram_matrix(&[q(2, 5), q(3, 5)], 40).unwrap();
        let r = infinity_monodromy_eigencheck(&f, 40).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn eigencheck_n5_forward() {
        let f = HypFrame::deresonated(5, &q(1, 8), &q(1, 12), 50).unwrap();
        let r = infinity_monodromy_eigencheck(&f, 50).unwrap();
        assert_eq!(r.ordering, alloc::vec![1, 2, 3, 4, 5]);
        assert_eq!(r.power, -5);
    }

    #[test]
    fn eigen_residual_is_projective() {
        let f = HypFrame::deresonated(5, &q(1, 8), &q(1, 12), 40).unwrap();
        let xs = vandermonde_vectors(&f).unwrap();
        let mut m = identity(5, 40);
        for j in 0..5 {
            m = mat_mul(&reflection(&f, j).unwrap(), &m);
        }
        let lam = f.z()[0].powi(-5);
        let k = Complex::new(Real::from_i64(3, 40), Real::from_i64(-7, 40));
        let scaled: Vec<Complex> = xs[0].iter().map(|v| &k * v).collect();
        let a = residual(&m, &xs[0], &lam);
        let b = residual(&m, &scaled, &lam);
        assert!(is_negligible(&a, 40, 10) && is_negligible(&b, 40, 10));
    }
}
