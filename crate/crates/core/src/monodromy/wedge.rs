//! The second wedge `Λ²V` and the `V̂_12`-components of `e_1∧e_2`,
//! `e_3∧e_4`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::linalg::Matrix;
use super::{vandermonde_vectors, HypFrame};
use crate::error::{Error, Result};
use crate::precision::{pi, Complex, Rational, Real};

/// Basis `V_ij = v_i∧v_j`, `i < j`, with the form induced by the
/// semiorthogonal half and by the symmetric form.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeFrame {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    /// `[V_ij,V_kl) = [v_i,v_k)[v_j,v_l) − [v_i,v_l)[v_j,v_k)`.
    pub half: Matrix,
    /// The same 2×2 expansion of `(,)`.
    pub sym: Matrix,
}

fn minor(m: &Matrix, (i, j): (usize, usize), (k, l): (usize, usize)) -> Real {
    &(&m[i][k] * &m[j][l]) - &(&m[i][l] * &m[j][k])
}

impl WedgeFrame {
    pub fn new(frame: &HypFrame) -> Self {
        let n = frame.n();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let s = frame.half_form();
        let build = |m: &Matrix| -> Matrix {
            pairs
                .iter()
                .map(|&a| pairs.iter().map(|&b| minor(m, a, b)).collect())
                .collect()
        };
        WedgeFrame {
            n,
            half: build(&s),
            sym: build(&frame.gram),
            pairs,
        }
    }

    pub fn dimension(&self) -> usize {
        self.pairs.len()
    }

    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WedgeReport {
    pub n: usize,
    pub e: Rational,
    pub u: Rational,
    /// `V̂_12`-components of `E_12` and `E_34`.
    pub kappa_12: Complex,
    pub kappa_34: Complex,
    /// `|κ_12/κ_34 − sin(2πe)/sin(2πu)|`, relative.
    pub ratio_residual: Real,
    /// `|sin(2πu)κ_12 − sin(2πe)κ_34| / max|κ|`.
    pub combination_residual: Real,
    /// Gap to the component rebuilt from `v`-coordinates through the
    /// wedge of the symmetric form; absent when that form is singular.
    pub route_gap: Option<Real>,
}

impl WedgeReport {
    pub fn max_residual(&self) -> Real {
        let mut m = self.ratio_residual.clone();
        for r in core::iter::once(&self.combination_residual).chain(self.route_gap.iter()) {
            if *r > m {
                m = r.clone();
            }
        }
        m
    }

    /// Every residual below `10^{−digits}`.
    pub fn passed(&self, digits: u32) -> bool {
        let m = self.max_residual();
        m.is_zero() || m.log10_abs() < -f64::from(digits)
    }
}

/// `(a∧b, V_12)` from the pairings `(a, v_j)`, `(b, v_j)`.
fn component_12(pa: &[Complex], pb: &[Complex]) -> Complex {
    &(&pa[0] * &pb[1]) - &(&pa[1] * &pb[0])
}

fn sin_2pi(x: &Rational, wd: u32) -> Real {
    pi(wd + 5).mul_pow2(1).mul_rational(x).sin().with_digits(wd)
}

/// Compares the `V̂_12`-components of `E_12 = e_1∧e_2` and `E_34` with
/// `sin(2πe)` and `sin(2πu)`. Only their ratio is asserted, since the
/// normalization of the `e_i` cancels in it.
pub fn wedge_coefficient_identity(
    frame: &HypFrame,
    e: &Rational,
    u: &Rational,
    p: u32,
) -> Result<WedgeReport> {
    let h = Rational::new(1.into(), 2.into());
    let want = [&h - e, &h + e, &h - u, &h + u];
    if frame.n() < 4 || frame.alphas[..4] != want {
        return Err(Error::Precondition(format!(
            "frame does not start with 1/2∓{e}, 1/2∓{u}"
        )));
    }
    if e == u || e == &-u.clone() {
        return Err(Error::Resonance(format!("e = {e}, u = {u} collide")));
    }
    let wd = frame.prec;
    if wd < p {
        return Err(Error::Precondition(format!(
            "frame carries {wd} digits, {p} requested"
        )));
    }
    let z = frame.z();
    // (e_i, v_j) = z_i^j
    let pairings: Vec<Vec<Complex>> = z
        .iter()
        .map(|zi| alloc::vec![zi.clone(), zi.powi(2)])
        .collect();
    let kappa_12 = component_12(&pairings[0], &pairings[1]);
    let kappa_34 = component_12(&pairings[2], &pairings[3]);
    if kappa_34.is_zero() {
        return Err(Error::Resonance(String::from("E_34 has no V̂_12 component")));
    }
    let se = sin_2pi(e, wd);
    let su = sin_2pi(u, wd);
    let target = &se / &su;
    let ratio = &kappa_12 / &kappa_34;
    let ratio_residual = &(&ratio - &Complex::from_real(target.clone())).abs() / &target.abs();
    let comb = &kappa_12.scale(&su) - &kappa_34.scale(&se);
    let big = if kappa_12.abs() > kappa_34.abs() {
        kappa_12.abs()
    } else {
        kappa_34.abs()
    };
    let combination_residual = &comb.abs() / &big;
    let route_gap = match vandermonde_vectors(frame) {
        Ok(xs) => {
            let w = WedgeFrame::new(frame);
            let col = w.index(0, 1).expect("V_12 exists");
            let rebuilt = |a: &[Complex], b: &[Complex]| {
                let mut acc = Complex::zero(wd);
                for (r, &(k, l)) in w.pairs.iter().enumerate() {
                    let x = &(&a[k] * &b[l]) - &(&a[l] * &b[k]);
                    acc = &acc + &x.scale(&w.sym[r][col]);
                }
                acc
            };
            let g12 = &(&rebuilt(&xs[0], &xs[1]) - &kappa_12).abs() / &kappa_12.abs();
            let g34 = &(&rebuilt(&xs[2], &xs[3]) - &kappa_34).abs() / &kappa_34.abs();
            Some(if g12 > g34 { g12 } else { g34 })
        }
        Err(Error::Singular) => None,
        Err(other) => return Err(other),
    };
    Ok(WedgeReport {
        n: frame.n(),
        e: e.clone(),
        u: u.clone(),
        kappa_12,
        kappa_34,
        ratio_residual,
        combination_residual,
        route_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn n5_sine_ratio() {
        let (e, u) = (q(1, 10), q(1, 14));
        let f = HypFrame::deresonated(5, &e, &u, 50).unwrap();
        let r = wedge_coefficient_identity(&f, &e, &u, 50).unwrap();
        assert!(r.passed(40), "{}", r.max_residual());
        // 5·(1/2 − 1/10) is an integer, so the symmetric form is singular.
        assert!(r.route_gap.is_none());
        let f = HypFrame::deresonated(6, &e, &u, 50).unwrap();
        let r = wedge_coefficient_identity(&f, &e, &u, 50).unwrap();
        assert!(r.passed(40), "{}", r.max_residual());
        assert!(r.route_gap.is_some());
    }

    #[test]
    fn wedge_form_matches_cauchy_binet_on_general_vectors() {
        let f = HypFrame::deresonated(5, &q(1, 8), &q(1, 12), 30).unwrap();
        let w = WedgeFrame::new(&f);
        assert_eq!(w.dimension(), 10);
        let s = f.half_form();
        let v = |c: [i64; 5]| -> Vec<Real> { c.iter().map(|&x| Real::from_i64(x, 30)).collect() };
        let (a, b, c, d) = (
            v([1, -2, 0, 3, 1]),
            v([0, 1, 4, -1, 2]),
            v([2, 0, -1, 1, 5]),
            v([-3, 1, 1, 0, 2]),
        );
        let form = |x: &[Real], y: &[Real]| {
            let mut acc = Real::zero(30);
            for i in 0..5 {
                for j in 0..5 {
                    acc = &acc + &(&(&x[i] * &s[i][j]) * &y[j]);
                }
            }
            acc
        };
        let want = &(&form(&a, &c) * &form(&b, &d)) - &(&form(&a, &d) * &form(&b, &c));
        let wedge = |x: &[Real], y: &[Real]| -> Vec<Real> {
            w.pairs
                .iter()
                .map(|&(i, j)| &(&x[i] * &y[j]) - &(&x[j] * &y[i]))
                .collect()
        };
        let (ab, cd) = (wedge(&a, &b), wedge(&c, &d));
        let mut got = Real::zero(30);
        for r in 0..w.dimension() {
            for t in 0..w.dimension() {
                got = &got + &(&(&ab[r] * &w.half[r][t]) * &cd[t]);
            }
        }
        assert!(got.close_to(&want, 25), "{got} vs {want}");
    }

    #[test]
    fn collisions_rejected() {
        let f = HypFrame::deresonated(5, &q(1, 8), &q(1, 12), 30).unwrap();
        assert!(wedge_coefficient_identity(&f, &q(1, 8), &q(1, 8), 30).is_err());
        assert!(wedge_coefficient_identity(&f, &q(1, 9), &q(1, 12), 30).is_err());
    }
}
