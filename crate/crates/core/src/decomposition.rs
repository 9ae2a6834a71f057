//! Decompositions of the identity Σ λᵢ uᵢuᵢᵀ = Iₙ: verification, NNLS fitting,
//! Cauchy–Binet sums over principal Gram minors, and the elementary symmetric
//! polynomial bound used to turn those sums into volume bounds.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{binomial, factorial, Point};
use crate::nnls::nnls;
use crate::tol;

/// Unit directions with nonnegative weights intended to decompose Iₙ.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityDecomposition {
    dim: usize,
    directions: Vec<Point>,
    weights: Vec<f64>,
    residual: f64,
}

/// Outcome of [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// ‖Σλᵢuᵢuᵢᵀ − I‖_F.
    pub residual: f64,
    /// |Σλᵢ − n|.
    pub trace_deviation: f64,
    pub passed: bool,
}

fn check_shapes(dirs: &[Point], weights: &[f64]) -> Result<usize> {
    if dirs.len() != weights.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} directions but {} weights",
            dirs.len(),
            weights.len()
        )));
    }
    let n = dirs
        .first()
        .map(|d| d.len())
        .ok_or_else(|| Error::ShapeMismatch("no directions".into()))?;
    if let Some(i) = dirs.iter().position(|d| d.len() != n) {
        return Err(Error::ShapeMismatch(format!("direction {i} has wrong dimension")));
    }
    if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::ShapeMismatch(format!(
            "weight {i} = {} is not a nonnegative number",
            weights[i]
        )));
    }
    if let Some(i) = dirs.iter().position(|d| d.norm() == 0.0) {
        return Err(Error::ShapeMismatch(format!("direction {i} is zero")));
    }
    Ok(n)
}

/// Σλᵢuᵢuᵢᵀ for unit-normalized directions.
pub fn frame_operator(dirs: &[Point], weights: &[f64]) -> DMatrix<f64> {
    let n = dirs[0].len();
    let mut m = DMatrix::zeros(n, n);
    for (d, &w) in dirs.iter().zip(weights) {
        let u = d.normalize();
        m += &u * u.transpose() * w;
    }
    m
}

/// Residual and trace deviation of a candidate decomposition, checked against `tol`.
pub fn verify(dirs: &[Point], weights: &[f64], tol: f64) -> Result<VerifyReport> {
    let n = check_shapes(dirs, weights)?;
    let residual = (frame_operator(dirs, weights) - DMatrix::identity(n, n)).norm();
    let trace_deviation = (weights.iter().sum::<f64>() - n as f64).abs();
    Ok(VerifyReport {
        residual,
        trace_deviation,
        passed: residual <= tol,
    })
}

impl IdentityDecomposition {
    /// Normalizes the directions and records the residual; does not require it to be small.
    pub fn new(directions: Vec<Point>, weights: Vec<f64>) -> Result<Self> {
        let dim = check_shapes(&directions, &weights)?;
        let directions: Vec<Point> = directions.into_iter().map(|d| d.normalize()).collect();
        let residual = verify(&directions, &weights, f64::INFINITY)?.residual;
        Ok(Self {
            dim,
            directions,
            weights,
            residual,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Point] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn trace_deviation(&self) -> f64 {
        (self.weights.iter().sum::<f64>() - self.dim as f64).abs()
    }

    pub fn verify(&self, tol: f64) -> VerifyReport {
        verify(&self.directions, &self.weights, tol).expect("shapes checked at construction")
    }

    /// Drops directions whose weight is at most `threshold`.
    pub fn pruned(&self, threshold: f64) -> Result<Self> {
        let (d, w): (Vec<Point>, Vec<f64>) = self
            .directions
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w > threshold)
            .map(|(d, &w)| (d.clone(), w))
            .unzip();
        Self::new(d, w)
    }
}

/// Result of [`fit_weights`].
#[derive(Clone, Debug, PartialEq)]
pub enum Fit {
    Feasible { weights: Vec<f64>, residual: f64 },
    /// Best nonnegative weights found, whose residual exceeds the tolerance.
    Infeasible { weights: Vec<f64>, residual: f64 },
}

impl Fit {
    pub fn residual(&self) -> f64 {
        match self {
            Fit::Feasible { residual, .. } | Fit::Infeasible { residual, .. } => *residual,
        }
    }

    pub fn weights(&self) -> &[f64] {
        match self {
            Fit::Feasible { weights, .. } | Fit::Infeasible { weights, .. } => weights,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Fit::Feasible { .. })
    }
}

/// Row layout of a symmetric n×n matrix as a vector whose Euclidean norm is
/// the Frobenius norm: diagonal entries as is, off-diagonal entries times √2.
fn sym_vec(n: usize, entry: impl Fn(usize, usize) -> f64) -> DVector<f64> {
    let mut v = Vec::with_capacity(n * (n + 1) / 2);
    for k in 0..n {
        for l in k..n {
            let s = if k == l { 1.0 } else { std::f64::consts::SQRT_2 };
            v.push(s * entry(k, l));
        }
    }
    DVector::from_vec(v)
}

/// Fits λ ≥ 0 minimizing ‖Σλᵢuᵢuᵢᵀ − I‖_F; feasible when the optimum is within `tol`.
pub fn fit_weights(dirs: &[Point], tol: f64) -> Result<Fit> {
    let n = check_shapes(dirs, &vec![0.0; dirs.len()])?;
    let units: Vec<Point> = dirs.iter().map(|d| d.normalize()).collect();
    let rows = n * (n + 1) / 2;
    let mut a = DMatrix::zeros(rows, units.len());
    for (j, u) in units.iter().enumerate() {
        a.set_column(j, &sym_vec(n, |k, l| u[k] * u[l]));
    }
    let b = sym_vec(n, |k, l| if k == l { 1.0 } else { 0.0 });
    let sol = nnls(&a, &b);
    let weights: Vec<f64> = sol.x.iter().copied().collect();
    let residual = verify(&units, &weights, tol)?.residual;
    Ok(if residual <= tol {
        Fit::Feasible { weights, residual }
    } else {
        Fit::Infeasible { weights, residual }
    })
}

/// NNLS re-fit of weights on unit directions, optionally also asking Σλᵢuᵢ = 0.
/// Returns the weights and the combined residual.
pub(crate) fn refit(units: &[Point], barycenter: bool) -> (Vec<f64>, f64) {
    let n = units[0].len();
    let sym = n * (n + 1) / 2;
    let rows = if barycenter { sym + n } else { sym };
    let mut a = DMatrix::zeros(rows, units.len());
    for (j, u) in units.iter().enumerate() {
        a.view_mut((0, j), (sym, 1)).copy_from(&sym_vec(n, |k, l| u[k] * u[l]));
        if barycenter {
            a.view_mut((sym, j), (n, 1)).copy_from(u);
        }
    }
    let mut b = DVector::zeros(rows);
    b.rows_mut(0, sym).copy_from(&sym_vec(n, |k, l| if k == l { 1.0 } else { 0.0 }));
    let sol = nnls(&a, &b);
    let residual = (&a * &sol.x - &b).norm();
    (sol.x.iter().copied().collect(), residual)
}

/// Combined residual of [`refit`]'s objective at given weights.
pub(crate) fn combined_residual(units: &[Point], weights: &[f64], barycenter: bool) -> f64 {
    let n = units[0].len();
    let r = (frame_operator(units, weights) - DMatrix::identity(n, n)).norm();
    if !barycenter {
        return r;
    }
    let c = units
        .iter()
        .zip(weights)
        .fold(DVector::zeros(n), |acc: Point, (u, &w)| acc + u * w)
        .norm();
    (r * r + c * c).sqrt()
}

/// Both sides of the Cauchy–Binet identity Σ_J λ_J det(U_JᵀU_J) = C(n, i).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyBinet {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

fn check_subset_count(m: usize, i: usize) -> Result<()> {
    let count = binomial(m, i);
    if count > tol::SUBSET_CAP {
        return Err(Error::CombinatorialBlowup {
            count,
            cap: tol::SUBSET_CAP,
        });
    }
    Ok(())
}

pub fn cauchy_binet_check(d: &IdentityDecomposition, i: usize) -> Result<CauchyBinet> {
    let n = d.dim();
    if i == 0 || i > n {
        return Err(Error::InvalidQuery(format!("subset size {i} not in 1..={n}")));
    }
    check_subset_count(d.len(), i)?;
    let lhs = binomial(n, i) as f64;
    let rhs: f64 = (0..d.len())
        .combinations(i)
        .map(|subset| {
            let lambda: f64 = subset.iter().map(|&k| d.weights[k]).product();
            lambda * gram_det(&subset.iter().map(|&k| &d.directions[k]).collect::<Vec<_>>())
        })
        .sum();
    Ok(CauchyBinet {
        lhs,
        rhs,
        gap: lhs - rhs,
    })
}

fn gram_det(cols: &[&Point]) -> f64 {
    let j = cols.len();
    DMatrix::from_fn(j, j, |a, b| cols[a].dot(cols[b])).determinant()
}

/// vol_j(conv{0, u₁, …, u_j}) = √det(UᵀU) / j!; 0 when the Gram matrix is singular.
pub fn gram_simplex_volume(cols: &[Point]) -> f64 {
    let refs: Vec<&Point> = cols.iter().collect();
    gram_simplex_volume_refs(&refs)
}

pub(crate) fn gram_simplex_volume_refs(cols: &[&Point]) -> f64 {
    let det = gram_det(cols);
    if det <= 0.0 {
        0.0
    } else {
        det.sqrt() / factorial(cols.len())
    }
}

/// σ_d(λ) together with its maximum over the simplex Σλ = c, C(m, d)(c/m)^d.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaBound {
    pub sigma: f64,
    pub bound: f64,
    pub holds: bool,
}

/// d-th elementary symmetric polynomial via Newton's identities on power sums.
pub fn elementary_symmetric(weights: &[f64], d: usize) -> f64 {
    let power: Vec<f64> = (0..=d)
        .map(|k| weights.iter().map(|w| w.powi(k as i32)).sum())
        .collect();
    let mut e = vec![1.0; d + 1];
    for k in 1..=d {
        let mut acc = 0.0;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[k - i] * power[i];
        }
        e[k] = acc / k as f64;
    }
    e[d].max(0.0)
}

pub fn sigma_bound_check(weights: &[f64], d: usize) -> Result<SigmaBound> {
    let m = weights.len();
    if d > m {
        return Err(Error::InvalidQuery(format!("d = {d} exceeds m = {m}")));
    }
    if weights.iter().any(|w| w.is_nan() || *w < 0.0) {
        return Err(Error::ShapeMismatch("weights must be nonnegative".into()));
    }
    let c: f64 = weights.iter().sum();
    let sigma = elementary_symmetric(weights, d);
    let bound = binomial(m, d) as f64 * (c / m as f64).powi(d as i32);
    Ok(SigmaBound {
        sigma,
        bound,
        holds: sigma <= bound + 1e-9 * bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dr;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn e(n: usize, i: usize) -> Point {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v
    }

    fn at_120() -> Vec<Point> {
        (0..3)
            .map(|k| {
                let t = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                DVector::from_row_slice(&[t.cos(), t.sin()])
            })
            .collect()
    }

    #[test]
    fn verify_examples() {
        let basis: Vec<Point> = (0..4).map(|i| e(4, i)).collect();
        let r = verify(&basis, &[1.0; 4], 1e-12).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.passed);

        let w = dr::witness_library("dr533").unwrap();
        let r = verify(w.decomposition.directions(), &[1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0], 1e-12).unwrap();
        assert!(r.residual < 1e-12, "{}", r.residual);

        // direct 2x2 summation: Σ (2/3) u uᵀ for three unit vectors at 120°
        let r = verify(&at_120(), &[2.0 / 3.0; 3], 1e-12).unwrap();
        assert!(r.residual < 1e-12);

        assert!(matches!(verify(&basis, &[1.0; 3], 1e-9), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn trace_deviation_scales() {
        let dirs = at_120();
        for s in [0.5, 1.0, 2.0] {
            let r = verify(&dirs, &[2.0 / 3.0 * s; 3], 1e-9).unwrap();
            assert_relative_eq!(r.trace_deviation, (2.0 * s - 2.0f64).abs(), epsilon = 1e-14);
            // Σ sλ uuᵀ − I = (s − 1) I here, so the Frobenius residual is |s − 1|·√2
            assert_relative_eq!(r.residual, (s - 1.0f64).abs() * 2f64.sqrt(), epsilon = 1e-14);
        }
    }

    #[test]
    fn fit_square_diagonals() {
        let dirs: Vec<Point> = [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]]
            .iter()
            .map(|c| DVector::from_row_slice(c) / 2f64.sqrt())
            .collect();
        let fit = fit_weights(&dirs, 1e-10).unwrap();
        let Fit::Feasible { weights, residual } = fit else {
            panic!("expected feasible")
        };
        assert!(residual < 1e-10);
        // antipodal classes carry total weight 1 each
        assert_relative_eq!(weights[0] + weights[3], 1.0, epsilon = 1e-10);
        assert_relative_eq!(weights[1] + weights[2], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn fit_triangle_lines_with_both_signs() {
        let mut dirs = at_120();
        dirs.extend(at_120().into_iter().map(|d| -d));
        let Fit::Feasible { weights, .. } = fit_weights(&dirs, 1e-10).unwrap() else {
            panic!("expected feasible")
        };
        for k in 0..3 {
            assert_relative_eq!(weights[k] + weights[k + 3], 2.0 / 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn two_directions_cannot_fill_r3() {
        let fit = fit_weights(&[e(3, 0), e(3, 1)], 1e-6).unwrap();
        assert!(matches!(fit, Fit::Infeasible { residual, .. } if (residual - 1.0).abs() < 1e-12));
    }

    #[test]
    fn cauchy_binet_examples() {
        let cross = IdentityDecomposition::new((0..3).map(|i| e(3, i)).collect(), vec![1.0; 3]).unwrap();
        let cb = cauchy_binet_check(&cross, 2).unwrap();
        assert_eq!((cb.lhs, cb.rhs), (3.0, 3.0));

        // 3·(4/9)·det[[1, −1/2], [−1/2, 1]] = 3·(4/9)·(3/4) = 1
        let tri = IdentityDecomposition::new(at_120(), vec![2.0 / 3.0; 3]).unwrap();
        let cb = cauchy_binet_check(&tri, 2).unwrap();
        assert_relative_eq!(cb.rhs, 1.0, epsilon = 1e-14);

        let w = dr::witness_library("dr533").unwrap();
        let cb = cauchy_binet_check(&w.decomposition, 3).unwrap();
        assert!((cb.rhs - 1.0).abs() < 1e-10);
        let cb1 = cauchy_binet_check(&w.decomposition, 1).unwrap();
        assert!(cb1.gap.abs() <= 3f64.sqrt() * w.decomposition.residual() + 1e-15);
    }

    #[test]
    fn cauchy_binet_cap() {
        let dirs: Vec<Point> = (0..200).map(|k| DVector::from_row_slice(&[(k as f64).cos(), (k as f64).sin(), 1.0, 0.5, 0.1])).collect();
        let d = IdentityDecomposition::new(dirs, vec![0.01; 200]).unwrap();
        assert!(matches!(cauchy_binet_check(&d, 5), Err(Error::CombinatorialBlowup { .. })));
    }

    #[test]
    fn gram_volumes() {
        let ortho: Vec<Point> = (0..3).map(|i| e(4, i)).collect();
        assert_relative_eq!(gram_simplex_volume(&ortho), 1.0 / 6.0, epsilon = 1e-15);
        let theta = 0.7f64;
        let pair = vec![e(2, 0), DVector::from_row_slice(&[theta.cos(), theta.sin()])];
        assert_relative_eq!(gram_simplex_volume(&pair), theta.sin() / 2.0, epsilon = 1e-15);
        assert_eq!(gram_simplex_volume(&[e(2, 0), e(2, 0)]), 0.0);
        let w = dr::witness_library("dr533").unwrap();
        let u = w.decomposition.directions();
        assert_relative_eq!(gram_simplex_volume(&[u[0].clone(), u[1].clone(), u[3].clone()]), 0.125, epsilon = 1e-15);
    }

    #[test]
    fn sigma_examples() {
        let s = sigma_bound_check(&[1.0, 1.0, 1.0], 2).unwrap();
        assert_relative_eq!(s.sigma, 3.0);
        assert_relative_eq!(s.bound, 3.0);
        let s = sigma_bound_check(&[2.0, 1.0, 0.0], 2).unwrap();
        assert_relative_eq!(s.sigma, 2.0);
        assert_relative_eq!(s.bound, 3.0);
        let s = sigma_bound_check(&[3.0, 0.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(s.sigma, 0.0);
        assert_relative_eq!(s.bound, 27.0 / 8.0);
        assert!(s.holds);
    }

    /// Independent O(md) dynamic program for σ_d.
    fn sigma_dp(w: &[f64], d: usize) -> f64 {
        let mut e = vec![0.0; d + 1];
        e[0] = 1.0;
        for &x in w {
            for k in (1..=d).rev() {
                e[k] += x * e[k - 1];
            }
        }
        e[d]
    }

    #[test]
    fn newton_matches_dynamic_program() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let m = rng.random_range(1..=12);
            let d = rng.random_range(1..=m);
            let w: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
            let a = elementary_symmetric(&w, d);
            let b = sigma_dp(&w, d);
            assert!((a - b).abs() <= 1e-10 * b.max(1e-3), "{a} vs {b}");
        }
    }

    proptest! {
        #[test]
        fn sigma_never_exceeds_uniform(w in proptest::collection::vec(0.0f64..5.0, 1..10), d in 1usize..10) {
            prop_assume!(d <= w.len());
            let s = sigma_bound_check(&w, d).unwrap();
            prop_assert!(s.holds, "{:?}", s);
        }
    }
}
