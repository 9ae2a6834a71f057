//! Nonnegative least squares by the Lawson–Hanson active-set method.

use nalgebra::{DMatrix, DVector};

use crate::tol;

#[derive(Clone, Debug)]
pub struct NnlsSolution {
    pub x: DVector<f64>,
    /// ‖Ax − b‖₂ at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Solves min ‖Ax − b‖ subject to x ≥ 0.
///
/// Indices move from the active (zero) set to the passive set one at a time by
/// largest positive gradient component; when the unconstrained passive solve
/// leaves the orthant the iterate is moved back to the boundary and the
/// offending indices return to the active set.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> NnlsSolution {
    let m = a.ncols();
    let mut x = DVector::zeros(m);
    let mut passive = vec![false; m];
    let scale = a.iter().fold(0.0f64, |s, v| s.max(v.abs())).max(1.0);
    let gtol = tol::NNLS_GRADIENT.max(10.0 * f64::EPSILON * scale * (a.nrows().max(m) as f64));
    let max_iter = 30 * m.max(1) + 30;
    let mut iterations = 0;

    loop {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..m)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let t = match candidate {
            Some(t) if w[t] > gtol => t,
            _ => break,
        };
        if iterations >= max_iter {
            break;
        }
        passive[t] = true;

        loop {
            iterations += 1;
            let s = solve_passive(a, b, &passive);
            if (0..m).filter(|&j| passive[j]).all(|j| s[j] > 0.0) {
                x = s;
                break;
            }
            let alpha = (0..m)
                .filter(|&j| passive[j] && s[j] <= 0.0)
                .map(|j| x[j] / (x[j] - s[j]))
                .fold(f64::INFINITY, f64::min);
            x += (&s - &x) * alpha;
            for j in 0..m {
                if passive[j] && x[j] <= 1e-15 {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
            if iterations >= max_iter {
                break;
            }
        }
    }

    let residual = (a * &x - b).norm();
    NnlsSolution {
        x,
        residual,
        iterations,
    }
}

fn solve_passive(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let idx: Vec<usize> = (0..passive.len()).filter(|&j| passive[j]).collect();
    let sub = DMatrix::from_fn(a.nrows(), idx.len(), |i, k| a[(i, idx[k])]);
    let sol = sub
        .svd(true, true)
        .solve(b, 1e-13)
        .unwrap_or_else(|_| DVector::zeros(idx.len()));
    let mut full = DVector::zeros(passive.len());
    for (k, &j) in idx.iter().enumerate() {
        full[j] = sol[k];
    }
    full
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unconstrained_optimum_is_feasible() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_row_slice(&[1.0, 2.0, 3.0]);
        let s = nnls(&a, &b);
        assert!((s.x[0] - 1.0).abs() < 1e-12 && (s.x[1] - 2.0).abs() < 1e-12);
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn negative_component_is_clamped() {
        let a = DMatrix::identity(2, 2);
        let b = DVector::from_row_slice(&[1.0, -2.0]);
        let s = nnls(&a, &b);
        assert_eq!(s.x[1], 0.0);
        assert!((s.x[0] - 1.0).abs() < 1e-14);
        assert!((s.residual - 2.0).abs() < 1e-14);
    }

    proptest! {
        // KKT conditions: x ≥ 0, gradient ≤ 0 on zeros, ≈ 0 on the support
        #[test]
        fn kkt_holds(entries in proptest::collection::vec(-1.0f64..1.0, 6 * 5), rhs in proptest::collection::vec(-1.0f64..1.0, 6)) {
            let a = DMatrix::from_row_slice(6, 5, &entries);
            let b = DVector::from_row_slice(&rhs);
            let s = nnls(&a, &b);
            let g = a.transpose() * (&b - &a * &s.x);
            for j in 0..5 {
                prop_assert!(s.x[j] >= 0.0);
                if s.x[j] > 0.0 {
                    prop_assert!(g[j].abs() < 1e-9);
                } else {
                    prop_assert!(g[j] < 1e-9);
                }
            }
        }
    }
}
