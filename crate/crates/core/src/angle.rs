use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{orthonormal_basis, Point};

/// Angle in [0, π/2] between span(basis) and `v`: arccos(‖Π v‖ / ‖v‖).
pub fn subspace_angle(basis: &[Point], v: &Point) -> Result<f64> {
    let q = orthonormal_basis(basis)?;
    angle_to_orthonormal(&q, v)
}

/// Same as [`subspace_angle`] with an already orthonormal basis (columns of `q`).
pub fn angle_to_orthonormal(q: &DMatrix<f64>, v: &Point) -> Result<f64> {
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ShapeMismatch("zero vector has no angle".into()));
    }
    let proj = (q.transpose() * v).norm() / norm;
    Ok(proj.clamp(0.0, 1.0).acos())
}

/// Orthonormal basis of the orthogonal complement of span(basis).
pub fn orthogonal_complement(basis: &[Point]) -> Result<Vec<Point>> {
    let n = basis[0].len();
    let q = orthonormal_basis(basis)?;
    let p = DMatrix::identity(n, n) - &q * q.transpose();
    let eig = nalgebra::SymmetricEigen::new(p);
    Ok((0..n)
        .filter(|&k| eig.eigenvalues[k] > 0.5)
        .map(|k| eig.eigenvectors.column(k).into_owned())
        .collect())
}
