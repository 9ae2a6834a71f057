//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::tol;

/// A point (or vector) in R^n.
pub type Point = DVector<f64>;

/// Symmetric positive semidefinite square root.
pub fn sym_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    sym_fn(m, |x| x.max(0.0).sqrt())
}

/// Inverse square root of a symmetric positive definite matrix.
pub fn sym_inv_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    sym_fn(m, |x| 1.0 / x.sqrt())
}

/// Applies `f` to the spectrum of a symmetric matrix.
pub fn sym_fn(m: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(f));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Matrix whose columns are the given vectors.
pub fn columns(vs: &[Point]) -> DMatrix<f64> {
    let n = vs.first().map_or(0, |v| v.len());
    DMatrix::from_fn(n, vs.len(), |i, j| vs[j][i])
}

/// Numerical rank via singular values, relative to the largest one.
pub fn rank(m: &DMatrix<f64>, rel: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * max).count()
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[Point]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<Point> = points[1..].iter().map(|p| p - &points[0]).collect();
    rank(&columns(&diffs), tol::RANK)
}

/// Orthonormal basis (as columns) of the span of `vs`; fails if they are dependent.
pub fn orthonormal_basis(vs: &[Point]) -> Result<DMatrix<f64>> {
    let a = columns(vs);
    let r = rank(&a, tol::RANK);
    if r < vs.len() {
        return Err(Error::RankDeficientBasis {
            rank: r,
            expected: vs.len(),
        });
    }
    Ok(a.qr().q())
}

/// Unit normal of the hyperplane through n affinely independent points in R^n,
/// via the generalized cross product of the edge vectors.
pub fn hyperplane_normal(points: &[&Point]) -> Option<Point> {
    let n = points[0].len();
    debug_assert_eq!(points.len(), n);
    if n == 1 {
        return Some(DVector::from_element(1, 1.0));
    }
    let edges = DMatrix::from_fn(n - 1, n, |i, j| points[i + 1][j] - points[0][j]);
    let mut normal = DVector::zeros(n);
    for k in 0..n {
        let minor = edges.clone().remove_column(k);
        let det = minor.determinant();
        normal[k] = if k % 2 == 0 { det } else { -det };
    }
    let norm = normal.norm();
    let scale = edges.row_iter().map(|r| r.norm()).fold(1.0, |a: f64, b| a * b.max(f64::MIN_POSITIVE));
    if norm <= 1e-14 * scale || !norm.is_finite() {
        return None;
    }
    Some(normal / norm)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Exact binomial coefficient (saturating).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Volume of the Euclidean unit ball in R^n.
pub fn unit_ball_volume(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    std::f64::consts::PI.powf(half) / statrs::function::gamma::gamma(half + 1.0)
}

/// Uniform frame check: ‖BᵀB − cI‖_F / c with c = tr(BᵀB)/n.
pub fn orthogonal_scalar_deviation(b: &DMatrix<f64>) -> f64 {
    let g = b.transpose() * b;
    let n = g.nrows();
    let c = g.trace() / n as f64;
    (g - DMatrix::identity(n, n) * c).norm() / c
}
