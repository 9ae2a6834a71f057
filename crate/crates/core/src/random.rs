//! Seeded random inputs for tests and experiments.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::Point;
use crate::polytope::Polytope;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Point {
    DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// Uniform on the unit sphere.
pub fn unit_vector<R: Rng>(rng: &mut R, n: usize) -> Point {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}

/// Haar-distributed orthogonal matrix.
pub fn orthogonal_matrix_with<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..n {
        if r[(k, k)] < 0.0 {
            q.column_mut(k).neg_mut();
        }
    }
    q
}

pub fn orthogonal_matrix(n: usize, seed: u64) -> DMatrix<f64> {
    orthogonal_matrix_with(&mut rng(seed), n)
}

/// Convex hull of `points` Gaussian samples in Rⁿ.
pub fn polytope(n: usize, points: usize, seed: u64) -> Polytope {
    let mut r = rng(seed);
    loop {
        let pts: Vec<Point> = (0..points.max(n + 1)).map(|_| gaussian_vector(&mut r, n)).collect();
        if let Ok(p) = Polytope::new(pts) {
            return p;
        }
    }
}

/// Convex hull of `pairs` Gaussian samples and their negatives.
pub fn symmetric_polytope(n: usize, pairs: usize, seed: u64) -> Polytope {
    let mut r = rng(seed);
    loop {
        let half: Vec<Point> = (0..pairs.max(n)).map(|_| gaussian_vector(&mut r, n)).collect();
        let pts: Vec<Point> = half.iter().cloned().chain(half.iter().map(|p| -p)).collect();
        if let Ok(p) = Polytope::new(pts) {
            return p;
        }
    }
}

/// Orthonormal basis (as columns) of a uniformly random i-dimensional subspace.
pub fn subspace<R: Rng>(rng: &mut R, n: usize, i: usize) -> Vec<Point> {
    let q = orthogonal_matrix_with(rng, n);
    (0..i).map(|k| q.column(k).into_owned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_and_seeded() {
        let q = orthogonal_matrix(4, 3);
        assert!((q.transpose() * &q - DMatrix::identity(4, 4)).norm() < 1e-12);
        assert_eq!(q, orthogonal_matrix(4, 3));
        assert_ne!(q, orthogonal_matrix(4, 4));
    }

    #[test]
    fn symmetric_bodies_are_symmetric() {
        for seed in 0..5 {
            let p = symmetric_polytope(3, 8, seed);
            assert!(p.is_symmetric(1e-9));
            assert_eq!(p.dim(), 3);
        }
    }
}
