//! Small dense complex linear algebra helpers. Matrices are nalgebra's; the
//! factorizations come from faer.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;
pub type Vector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest absolute entry; zero for empty matrices.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Full SVD m = U·diag(s)·V† with singular values in decreasing order.
///
/// nalgebra's SVD loses accuracy on some matrices with repeated singular values when
/// it also forms U and V, so the factorizations go through faer.
fn svd(m: &Mat) -> (Mat, Vec<f64>, Mat) {
    let (r, c) = (m.nrows(), m.ncols());
    let a = faer::Mat::<C64>::from_fn(r, c, |i, j| m[(i, j)]);
    let f = a.svd().expect("svd converges");
    let (u, s, v) = (f.U(), f.S(), f.V());
    let s: Vec<f64> = (0..r.min(c)).map(|i| s[i].re).collect();
    (Mat::from_fn(r, r, |i, j| u[(i, j)]), s, Mat::from_fn(c, c, |i, j| v[(i, j)]))
}

pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let a = faer::Mat::<C64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    let mut sv: Vec<f64> = a.singular_values().expect("svd converges");
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Eigenvalues of a square matrix.
pub fn eigenvalues(m: &Mat) -> Vec<C64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let a = faer::Mat::<C64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    a.eigenvalues().expect("eigenvalues converge")
}

fn threshold(s: &[f64], tol: f64) -> f64 {
    tol * s.first().copied().unwrap_or(0.0).max(1.0)
}

/// Numerical rank with a threshold relative to max(1, largest singular value).
pub fn rank(m: &Mat, tol: f64) -> usize {
    let sv = singular_values(m);
    let cut = threshold(&sv, tol);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Orthonormal basis (as columns) of the null space of `m`.
pub fn nullspace(m: &Mat, tol: f64) -> Mat {
    let n = m.ncols();
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return Mat::identity(n, n);
    }
    let (_, s, v) = svd(m);
    let cut = threshold(&s, tol);
    let keep = s.iter().filter(|&&x| x > cut).count();
    v.columns(keep, n - keep).into_owned()
}

/// Orthonormal basis of the column space.
pub fn column_space(m: &Mat, tol: f64) -> Mat {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Mat::zeros(m.nrows(), 0);
    }
    let (u, s, _) = svd(m);
    let cut = threshold(&s, tol);
    let keep = s.iter().filter(|&&x| x > cut).count();
    u.columns(0, keep).into_owned()
}

/// Greedy column pivoting: indices of columns that raise the rank, in order.
pub fn pivot_columns(m: &Mat, tol: f64) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    let scale = m.column_iter().map(|c| c.norm()).fold(0.0f64, f64::max).max(1.0);
    for j in 0..m.ncols() {
        let mut v: Vector = m.column(j).into_owned();
        for b in &basis {
            let proj = b.dotc(&v);
            v -= b * proj;
        }
        // second pass for stability
        for b in &basis {
            let proj = b.dotc(&v);
            v -= b * proj;
        }
        let n = v.norm();
        if n > tol.sqrt().max(tol * 1e3) * scale {
            basis.push(v / C64::new(n, 0.0));
            chosen.push(j);
        }
    }
    chosen
}

/// 2-norm condition number; infinite for singular or empty-but-nonsquare input.
pub fn condition_number(m: &Mat) -> f64 {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        (None, None) => 1.0,
        _ => f64::INFINITY,
    }
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    if m.nrows() != m.ncols() {
        return None;
    }
    if m.nrows() == 0 {
        return Some(Mat::zeros(0, 0));
    }
    m.clone().try_inverse()
}

/// Least-squares solution of `a x = b` through the SVD pseudo-inverse.
pub fn lstsq(a: &Mat, b: &Vector, tol: f64) -> Vector {
    if a.ncols() == 0 {
        return Vector::zeros(0);
    }
    if a.nrows() == 0 {
        return Vector::zeros(a.ncols());
    }
    let (u, s, v) = svd(a);
    let cut = threshold(&s, tol);
    let ub = u.adjoint() * b;
    let mut y = Vector::zeros(a.ncols());
    for (i, &si) in s.iter().enumerate() {
        if si > cut {
            y[i] = ub[i] / si;
        }
    }
    v * y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace_agree() {
        let m = Mat::from_row_slice(2, 3, &[c(1.0), c(2.0), c(3.0), c(2.0), c(4.0), c(6.0)]);
        assert_eq!(rank(&m, 1e-9), 1);
        let ns = nullspace(&m, 1e-9);
        assert_eq!(ns.ncols(), 2);
        assert!(max_abs(&(&m * &ns)) < 1e-12);
    }

    #[test]
    fn pivoting_skips_dependent_columns() {
        let m = Mat::from_row_slice(2, 3, &[c(1.0), c(2.0), c(0.0), c(0.0), c(0.0), c(1.0)]);
        assert_eq!(pivot_columns(&m, 1e-9), vec![0, 2]);
    }

    #[test]
    fn lstsq_recovers_exact_solution() {
        let a = Mat::from_row_slice(3, 2, &[c(1.0), c(0.0), c(0.0), c(1.0), c(1.0), c(1.0)]);
        let x = Vector::from_vec(vec![c(2.0), C64::new(0.0, -1.0)]);
        let b = &a * &x;
        let y = lstsq(&a, &b, 1e-12);
        assert!((y - x).norm() < 1e-12);
    }

    #[test]
    fn condition_of_identity_is_one() {
        assert!((condition_number(&Mat::identity(3, 3)) - 1.0).abs() < 1e-12);
    }
}
