use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::Point;
use crate::polytope::Polytope;

/// An invertible linear map of R^n.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    matrix: DMatrix<f64>,
    det: f64,
}

impl LinearMap {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "linear map must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n = matrix.nrows();
        let det = matrix.determinant();
        let scale = matrix.norm().max(f64::MIN_POSITIVE).powi(n as i32);
        if !det.is_finite() || det.abs() <= 1e-13 * scale {
            return Err(Error::SingularMap { det });
        }
        Ok(Self { matrix, det })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
            det: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        &self.matrix * p
    }

    pub fn apply(&self, body: &Polytope) -> Result<Polytope> {
        Polytope::new(body.vertices().iter().map(|v| self.apply_point(v)).collect())
    }

    pub fn inverse(&self) -> Self {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .expect("invertibility is checked at construction");
        Self {
            matrix: inv,
            det: 1.0 / self.det,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinearMap) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix,
            det: self.det * other.det,
        }
    }

    /// Relative distance of the map from the orthogonal-times-scalar maps.
    pub fn similarity_deviation(&self) -> f64 {
        crate::linalg::orthogonal_scalar_deviation(&self.matrix)
    }
}
