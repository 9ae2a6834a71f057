//! Minimal-volume enclosing ellipsoids (Löwner) and, through polarity, maximal
//! inscribed ellipsoids (John) of symmetric polytopes.
//!
//! The solver is the Frank–Wolfe scheme on the dual log-det problem with
//! Todd–Yıldırım away steps: weights live on the points, each iteration moves
//! mass toward the point that sticks out the most (or away from the least
//! useful support point) with an exact line search.

use nalgebra::{DMatrix, DVector};

use crate::decomposition::{combined_residual, refit, IdentityDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{rank, sym_sqrt, symmetrize, unit_ball_volume, Point};
use crate::map::LinearMap;
use crate::polytope::Polytope;
use crate::tol;

/// {x : (x − c)ᵀ M (x − c) ≤ 1} with M symmetric positive definite.
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipsoid {
    shape: DMatrix<f64>,
    center: Point,
}

impl Ellipsoid {
    pub fn new(shape: DMatrix<f64>, center: Point) -> Result<Self> {
        let n = center.len();
        if shape.nrows() != n || shape.ncols() != n {
            return Err(Error::ShapeMismatch(format!(
                "shape is {}x{}, center has length {n}",
                shape.nrows(),
                shape.ncols()
            )));
        }
        let asym = (&shape - shape.transpose()).norm();
        if asym > 1e-12 * shape.norm().max(1.0) {
            return Err(Error::ShapeMismatch(format!("shape matrix not symmetric ({asym:.2e})")));
        }
        let shape = symmetrize(&shape);
        let min_eig = shape.symmetric_eigenvalues().min();
        if min_eig.is_nan() || min_eig <= 0.0 {
            return Err(Error::ShapeMismatch(format!(
                "shape matrix not positive definite (min eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(Self { shape, center })
    }

    pub fn unit_ball(n: usize) -> Self {
        Self {
            shape: DMatrix::identity(n, n),
            center: DVector::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn shape(&self) -> &DMatrix<f64> {
        &self.shape
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    /// κₙ / √det M.
    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim()) / self.shape.determinant().sqrt()
    }

    /// (x − c)ᵀ M (x − c).
    pub fn gauge_sq(&self, x: &Point) -> f64 {
        let d = x - &self.center;
        d.dot(&(&self.shape * &d))
    }
}

/// Contact points of a normalized ellipsoid and the weights decomposing Iₙ.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactData {
    /// Unit vectors: contact points mapped by M^{1/2} (after centering).
    pub points: Vec<Point>,
    /// Indices of the contact points in the solver input.
    pub indices: Vec<usize>,
    pub weights: Vec<f64>,
    /// ‖Σλᵢuᵢuᵢᵀ − Iₙ‖_F.
    pub residual: f64,
    /// ‖Σλᵢuᵢ‖, only for the free-center problem.
    pub barycenter_residual: Option<f64>,
}

impl ContactData {
    pub fn decomposition(&self) -> Result<IdentityDecomposition> {
        IdentityDecomposition::new(self.points.clone(), self.weights.clone())
    }
}

#[derive(Clone, Debug)]
pub struct MveeOptions {
    pub eps: f64,
    pub max_iter: usize,
    /// Record log det of the moment matrix after every iteration.
    pub record_objective: bool,
    pub warm_start: Option<Vec<f64>>,
}

impl Default for MveeOptions {
    fn default() -> Self {
        Self {
            eps: tol::MVEE_EPS,
            max_iter: tol::MVEE_MAX_ITER,
            record_objective: false,
            warm_start: None,
        }
    }
}

impl MveeOptions {
    pub fn with_eps(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolverStats {
    pub iterations: usize,
    /// max(κ_max/d − 1, 1 − κ_min/d) at termination.
    pub gap: f64,
    pub objective: Vec<f64>,
    /// Final weights on the solver input (sum 1).
    pub weights: Vec<f64>,
}

/// A solved minimal-volume ellipsoid problem.
#[derive(Clone, Debug)]
pub struct Mvee {
    pub ellipsoid: Ellipsoid,
    pub contact: ContactData,
    pub stats: SolverStats,
}

struct Moment {
    inv: DMatrix<f64>,
    kappa: Vec<f64>,
    log_det: f64,
}

fn moment(q: &[Point], u: &[f64]) -> Result<Moment> {
    let d = q[0].len();
    let mut x = DMatrix::zeros(d, d);
    for (p, &w) in q.iter().zip(u) {
        if w > 0.0 {
            x += p * p.transpose() * w;
        }
    }
    let chol = x
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numerical("moment matrix lost positive definiteness".into()))?;
    let log_det = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();
    let inv = chol.inverse();
    let kappa = q.iter().map(|p| p.dot(&(&inv * p))).collect();
    Ok(Moment { inv, kappa, log_det })
}

/// Maximizes log det Σuᵢqᵢqᵢᵀ over the probability simplex.
///
/// Terminates when every κᵢ = qᵢᵀX⁻¹qᵢ is at most d(1+eps) and every support
/// point has κᵢ ≥ d(1−eps).
fn khachiyan(q: &[Point], opts: &MveeOptions) -> Result<(Vec<f64>, Moment, SolverStats)> {
    let m = q.len();
    let d = q[0].len() as f64;
    let mut u = match &opts.warm_start {
        Some(w) if w.len() == m && w.iter().all(|x| *x >= 0.0) && w.iter().sum::<f64>() > 0.0 => {
            let s: f64 = w.iter().sum();
            w.iter().map(|x| x / s).collect()
        }
        _ => vec![1.0 / m as f64; m],
    };
    let mut mom = moment(q, &u)?;
    let mut stats = SolverStats::default();
    if opts.record_objective {
        stats.objective.push(mom.log_det);
    }

    loop {
        let (jp, kp) = mom
            .kappa
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let (jm, km) = mom
            .kappa
            .iter()
            .copied()
            .enumerate()
            .filter(|&(i, _)| u[i] > 0.0)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let up = kp / d - 1.0;
        let down = 1.0 - km / d;
        stats.gap = up.max(down);
        if up <= opts.eps && down <= opts.eps {
            break;
        }
        if stats.iterations >= opts.max_iter {
            return Err(Error::MaxIterations {
                iterations: stats.iterations,
                gap: stats.gap,
            });
        }
        stats.iterations += 1;

        let (j, kj) = if up > down { (jp, kp) } else { (jm, km) };
        let floor = if u[j] < 1.0 { -u[j] / (1.0 - u[j]) } else { f64::NEG_INFINITY };
        let tau = if kj <= 1.0 {
            floor
        } else {
            ((kj - d) / (d * (kj - 1.0))).max(floor)
        };
        let dropped = tau <= floor;

        for w in u.iter_mut() {
            *w *= 1.0 - tau;
        }
        u[j] += tau;
        if dropped {
            u[j] = 0.0;
        }

        if stats.iterations % 64 == 0 {
            mom = moment(q, &u)?;
        } else {
            // Sherman–Morrison update of X⁻¹ and κ.
            let c = tau / (1.0 - tau);
            let a = &mom.inv * &q[j];
            let denom = 1.0 + c * kj;
            let scale = 1.0 / (1.0 - tau);
            for (i, p) in q.iter().enumerate() {
                let s = p.dot(&a);
                mom.kappa[i] = (mom.kappa[i] - c * s * s / denom) * scale;
            }
            mom.inv = (&mom.inv - &a * a.transpose() * (c / denom)) * scale;
            mom.log_det += d * (1.0 - tau).ln() + denom.ln();
        }
        if opts.record_objective {
            stats.objective.push(mom.log_det);
        }
    }
    stats.weights = u.clone();
    Ok((u, mom, stats))
}

fn check_rank(points: &[Point], n: usize) -> Result<()> {
    let r = rank(&crate::linalg::columns(points), tol::RANK);
    if r < n {
        return Err(Error::RankDeficient { rank: r, dim: n });
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(Error::ParamOutOfRange {
            name: "eps",
            value: eps,
            range: "0 < eps ≤ 1e-3",
        });
    }
    Ok(())
}

/// Groups an origin-symmetric point set into antipodal classes, one representative each.
fn antipodal_classes(points: &[Point]) -> Result<Vec<usize>> {
    let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let tol = 1e-9 * scale.max(f64::MIN_POSITIVE);
    let mut reps: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if p.norm() <= tol {
            continue;
        }
        if !points.iter().any(|q| (p + q).norm() <= tol) {
            return Err(Error::NotSymmetric { index: i });
        }
        let known = reps
            .iter()
            .any(|&r| (&points[r] - p).norm() <= tol || (&points[r] + p).norm() <= tol);
        if !known {
            reps.push(i);
        }
    }
    Ok(reps)
}

/// Minimal-volume origin-centered ellipsoid of an origin-symmetric point set.
pub fn mvee_centered(points: &[Point], eps: f64) -> Result<Mvee> {
    mvee_centered_with(points, &MveeOptions::with_eps(eps))
}

pub fn mvee_centered_with(points: &[Point], opts: &MveeOptions) -> Result<Mvee> {
    check_eps(opts.eps)?;
    let n = points
        .first()
        .map(|p| p.len())
        .ok_or_else(|| Error::ShapeMismatch("empty point set".into()))?;
    let reps = antipodal_classes(points)?;
    let q: Vec<Point> = reps.iter().map(|&i| points[i].clone()).collect();
    check_rank(&q, n)?;

    let (u, mom, stats) = khachiyan(&q, opts)?;
    let kmax = mom.kappa.iter().copied().fold(0.0, f64::max);
    let shape = symmetrize(&(mom.inv / kmax));
    let ellipsoid = Ellipsoid::new(shape, DVector::zeros(n))?;
    let root = sym_sqrt(ellipsoid.shape());

    let threshold = 1.0 - 10.0 * opts.eps;
    let mut indices = Vec::new();
    let mut dirs = Vec::new();
    let mut weights = Vec::new();
    for (k, &i) in reps.iter().enumerate() {
        let g = ellipsoid.gauge_sq(&points[i]);
        if g >= threshold && u[k] * n as f64 >= tol::WEIGHT_PRUNE {
            indices.push(i);
            dirs.push((&root * &points[i]).normalize());
            weights.push(u[k]);
        }
    }
    rescale(&mut weights, n);

    polish_support(&mut indices, &mut dirs, &mut weights, false, opts.eps);
    let residual = crate::decomposition::verify(&dirs, &weights, f64::INFINITY)?.residual;

    Ok(Mvee {
        ellipsoid,
        contact: ContactData {
            points: dirs,
            indices,
            weights,
            residual,
            barycenter_residual: None,
        },
        stats,
    })
}

/// Shrinks the contact support. The solver leaves slowly decaying weight on
/// contact points outside the optimal support, so the smallest weight is
/// dropped and the rest re-fit by NNLS for as long as the residual stays
/// within the solver's own accuracy.
fn polish_support(indices: &mut Vec<usize>, dirs: &mut Vec<Point>, weights: &mut Vec<f64>, barycenter: bool, eps: f64) {
    let n = match dirs.first() {
        Some(d) => d.len(),
        None => return,
    };
    let budget = combined_residual(dirs, weights, barycenter).max(eps);
    let mut keep: Vec<usize> = (0..dirs.len()).collect();
    let mut current = weights.clone();
    while keep.len() > n {
        let drop = (0..keep.len())
            .min_by(|&a, &b| current[a].total_cmp(&current[b]))
            .unwrap();
        let trial: Vec<usize> = keep.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &i)| i).collect();
        let sub: Vec<Point> = trial.iter().map(|&i| dirs[i].clone()).collect();
        let (w, r) = refit(&sub, barycenter);
        if r > budget || w.iter().any(|&x| x <= tol::WEIGHT_PRUNE) {
            break;
        }
        keep = trial;
        current = w;
    }
    if keep.len() < dirs.len() {
        *indices = keep.iter().map(|&k| indices[k]).collect();
        *dirs = keep.iter().map(|&k| dirs[k].clone()).collect();
        *weights = current;
    }
}

fn rescale(weights: &mut [f64], n: usize) {
    let s: f64 = weights.iter().sum();
    if s > 0.0 {
        for w in weights.iter_mut() {
            *w *= n as f64 / s;
        }
    }
}

/// Minimal-volume ellipsoid with free center, via the lift p ↦ (p, 1).
pub fn mvee_general(points: &[Point], eps: f64) -> Result<Mvee> {
    mvee_general_with(points, &MveeOptions::with_eps(eps))
}

pub fn mvee_general_with(points: &[Point], opts: &MveeOptions) -> Result<Mvee> {
    check_eps(opts.eps)?;
    let n = points
        .first()
        .map(|p| p.len())
        .ok_or_else(|| Error::ShapeMismatch("empty point set".into()))?;
    let r = crate::linalg::affine_rank(points);
    if r < n {
        return Err(Error::RankDeficient { rank: r, dim: n });
    }
    let lifted: Vec<Point> = points
        .iter()
        .map(|p| DVector::from_fn(n + 1, |i, _| if i < n { p[i] } else { 1.0 }))
        .collect();
    let (u, _, stats) = khachiyan(&lifted, opts)?;

    let center = points
        .iter()
        .zip(&u)
        .fold(DVector::zeros(n), |acc, (p, &w)| acc + p * w);
    let mut scatter = DMatrix::zeros(n, n);
    for (p, &w) in points.iter().zip(&u) {
        let d = p - &center;
        scatter += &d * d.transpose() * w;
    }
    let inv = symmetrize(
        &scatter
            .try_inverse()
            .ok_or_else(|| Error::Numerical("singular scatter matrix".into()))?,
    );
    let gmax = points
        .iter()
        .map(|p| {
            let d = p - &center;
            d.dot(&(&inv * &d))
        })
        .fold(0.0, f64::max);
    let ellipsoid = Ellipsoid::new(symmetrize(&(inv / gmax)), center)?;
    let root = sym_sqrt(ellipsoid.shape());

    let threshold = 1.0 - 10.0 * opts.eps;
    let mut indices = Vec::new();
    let mut dirs = Vec::new();
    let mut weights = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if ellipsoid.gauge_sq(p) >= threshold && u[i] * n as f64 >= tol::WEIGHT_PRUNE {
            indices.push(i);
            dirs.push((&root * (p - ellipsoid.center())).normalize());
            weights.push(u[i]);
        }
    }
    rescale(&mut weights, n);
    polish_support(&mut indices, &mut dirs, &mut weights, true, opts.eps);
    let residual = crate::decomposition::verify(&dirs, &weights, f64::INFINITY)?.residual;
    let bary = dirs
        .iter()
        .zip(&weights)
        .fold(DVector::zeros(n), |acc: Point, (d, &w)| acc + d * w)
        .norm();

    Ok(Mvee {
        ellipsoid,
        contact: ContactData {
            points: dirs,
            indices,
            weights,
            residual,
            barycenter_residual: Some(bary),
        },
        stats,
    })
}

/// Result of [`is_loewner`].
#[derive(Clone, Debug)]
pub struct LoewnerCheck {
    pub is_loewner: bool,
    /// The computed minimal ellipsoid (the violation witness when not Löwner).
    pub ellipsoid: Ellipsoid,
    pub contact: ContactData,
}

/// Whether the unit ball is the minimal-volume ellipsoid of `body` within `tol`.
pub fn is_loewner(body: &Polytope, tol: f64) -> Result<LoewnerCheck> {
    let norm = body.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    if norm > 1.0 + tol {
        return Err(Error::NotContainedInBall { norm });
    }
    let n = body.dim();
    let sol = mvee_general(body.vertices(), tol::MVEE_EPS)?;
    let shape_dev = (sol.ellipsoid.shape() - DMatrix::identity(n, n)).norm();
    let center_dev = sol.ellipsoid.center().norm();
    Ok(LoewnerCheck {
        is_loewner: shape_dev <= tol && center_dev <= tol,
        ellipsoid: sol.ellipsoid,
        contact: sol.contact,
    })
}

/// Maximal-volume inscribed ellipsoid of an origin-symmetric polytope, through
/// the minimal enclosing ellipsoid of its polar: John(P) has shape Löwner(P°)⁻¹.
pub fn john_ellipsoid_symmetric(body: &Polytope) -> Result<Ellipsoid> {
    john_ellipsoid_symmetric_with(body, tol::MVEE_EPS).map(|(e, _)| e)
}

/// As [`john_ellipsoid_symmetric`], also returning the polar's solve.
pub fn john_ellipsoid_symmetric_with(body: &Polytope, eps: f64) -> Result<(Ellipsoid, Mvee)> {
    if !body.is_symmetric(1e-9) {
        let index = body
            .vertices()
            .iter()
            .position(|v| !body.vertices().iter().any(|w| (v + w).norm() <= 1e-9 * v.norm().max(1.0)))
            .unwrap_or(0);
        return Err(Error::NotSymmetric { index });
    }
    let polar = body.polar()?;
    let sol = mvee_centered(polar.vertices(), eps)?;
    let shape = symmetrize(
        &sol.ellipsoid
            .shape()
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numerical("singular Löwner shape".into()))?,
    );
    Ok((Ellipsoid::new(shape, DVector::zeros(body.dim()))?, sol))
}

/// The symmetric square root M^{1/2}, which maps a centered ellipsoid onto the unit ball.
pub fn normalization_map(e: &Ellipsoid) -> Result<LinearMap> {
    let scale = e.shape().norm().max(1.0);
    if e.center().norm() > 1e-12 * scale.sqrt().recip().max(1.0) {
        return Err(Error::ShapeMismatch(format!(
            "normalization requires a centered ellipsoid, center norm {:.3e}",
            e.center().norm()
        )));
    }
    LinearMap::new(sym_sqrt(e.shape()))
}
