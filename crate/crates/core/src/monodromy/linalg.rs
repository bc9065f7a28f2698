//! Dense Real/Complex matrices for the small frames of this module.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::precision::{Complex, Real};

pub type Matrix = Vec<Vec<Real>>;
pub type CVector = Vec<Complex>;

pub fn identity(n: usize, wd: u32) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Real::one(wd)
                    } else {
                        Real::zero(wd)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Real::zero(row[0].digits());
                    for k in 0..inner {
                        acc = &acc + &(&row[k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_cvec(a: &Matrix, x: &[Complex]) -> CVector {
    a.iter()
        .map(|row| {
            let wd = row[0].digits().min(x[0].digits());
            let mut acc = Complex::zero(wd);
            for (r, xi) in row.iter().zip(x) {
                acc = &acc + &xi.scale(r);
            }
            acc
        })
        .collect()
}

/// Euclidean norm of a complex vector.
pub fn cnorm(x: &[Complex]) -> Real {
    let wd = x[0].digits();
    let mut s = Real::zero(wd);
    for v in x {
        s = &s + &v.norm_sqr();
    }
    s.sqrt()
}

/// Largest entry magnitude of `a − b`.
pub fn max_diff(a: &Matrix, b: &Matrix) -> Real {
    let mut m = Real::zero(a[0][0].digits());
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            let d = (x - y).abs();
            if d > m {
                m = d;
            }
        }
    }
    m
}

/// LU factorization with partial pivoting; `None` when a pivot falls
/// below `10^{−(wd−10)}` times the largest entry.
struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: i32,
}

fn factor(a: &Matrix) -> Option<Lu> {
    let n = a.len();
    let mut lu = a.clone();
    let wd = a[0][0].digits();
    let scale = Real::max_abs(a.iter().flatten())?;
    let tiny = &scale * &Real::pow10(-i64::from(wd.saturating_sub(10)), wd);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| lu[i][c].abs().partial_cmp(&lu[j][c].abs()).unwrap())?;
        if lu[p][c].abs() <= tiny {
            return None;
        }
        if p != c {
            lu.swap(p, c);
            perm.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            let f = &lu[r][c] / &lu[c][c];
            for k in c + 1..n {
                let t = &f * &lu[c][k];
                lu[r][k] = &lu[r][k] - &t;
            }
            lu[r][c] = f;
        }
    }
    Some(Lu { lu, perm, sign })
}

pub fn det(a: &Matrix) -> Real {
    match factor(a) {
        None => Real::zero(a[0][0].digits()),
        Some(f) => {
            let mut d = Real::from_i64(i64::from(f.sign), a[0][0].digits());
            for i in 0..a.len() {
                d = &d * &f.lu[i][i];
            }
            d
        }
    }
}

/// Solves `A x = b` for a real matrix and a complex right-hand side.
pub fn solve(a: &Matrix, b: &[Complex]) -> Result<CVector> {
    let f = factor(a).ok_or(Error::Singular)?;
    let n = a.len();
    let mut y: CVector = f.perm.iter().map(|&i| b[i].clone()).collect();
    for r in 0..n {
        for k in 0..r {
            let t = y[k].scale(&f.lu[r][k]);
            y[r] = &y[r] - &t;
        }
    }
    for r in (0..n).rev() {
        for k in r + 1..n {
            let t = y[k].scale(&f.lu[r][k]);
            y[r] = &y[r] - &t;
        }
        let inv = f.lu[r][r].recip();
        y[r] = y[r].scale(&inv);
    }
    Ok(y)
}
