//! Dvoretzky–Rogers-type constants DR(m, n, j): the largest ν such that every
//! m-term decomposition of Iₙ contains j directions spanning, together with the
//! origin, a simplex of j-volume at least ν.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use statrs::function::factorial::{ln_binomial, ln_factorial};

use crate::bodies;
use crate::decomposition::{gram_simplex_volume_refs, IdentityDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{binomial, factorial, sym_inv_sqrt, Point};
use crate::tol;

/// A valid triple 1 ≤ j ≤ n ≤ m ≤ C(n+1, 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DRQuery {
    pub m: usize,
    pub n: usize,
    pub j: usize,
    /// The requested m when it exceeded C(n+1, 2) and was clamped.
    pub clamped_from: Option<usize>,
}

impl DRQuery {
    pub fn new(m: usize, n: usize, j: usize) -> Result<Self> {
        if j < 1 || j > n || n > m {
            return Err(Error::InvalidQuery(format!(
                "need 1 ≤ j ≤ n ≤ m, got m={m}, n={n}, j={j}"
            )));
        }
        let cap = (n * (n + 1)) / 2;
        Ok(if m > cap {
            Self {
                m: cap,
                n,
                j,
                clamped_from: Some(m),
            }
        } else {
            Self {
                m,
                n,
                j,
                clamped_from: None,
            }
        })
    }

    /// Human-readable clamping note, if any.
    pub fn note(&self) -> Option<String> {
        self.clamped_from.map(|orig| {
            format!(
                "m={orig} exceeds C(n+1,2)={}; DR is constant beyond it, evaluated at m={}",
                self.m, self.m
            )
        })
    }
}

/// √(C(n,j)·(m/n)^j / (C(m,j)·(j!)²)), evaluated in log space.
pub fn dr_lower_bound(q: DRQuery) -> f64 {
    let (m, n, j) = (q.m as u64, q.n as u64, q.j as u64);
    let ln_sq = ln_binomial(n, j) + j as f64 * (m as f64 / n as f64).ln()
        - ln_binomial(m, j)
        - 2.0 * ln_factorial(j);
    (0.5 * ln_sq).exp()
}

/// Closed form of DR(n+1, n, j): √((n−j+1)(n+1)^{j−1} / (n^j (j!)²)).
pub fn dr_simplex_value(n: usize, j: usize) -> f64 {
    assert!(1 <= j && j <= n, "need 1 ≤ j ≤ n");
    let (nf, jf) = (n as f64, j as f64);
    ((nf - jf + 1.0) * (nf + 1.0).powi(j as i32 - 1) / (nf.powi(j as i32) * factorial(j).powi(2))).sqrt()
}

/// √(n+1)/(n!·2^{n/2}), the value conjectured for DR(C(n+1,2), n, n). Reported, never asserted.
pub fn conjectured_value(n: usize) -> f64 {
    ((n + 1) as f64).sqrt() / (factorial(n) * 2f64.powf(n as f64 / 2.0))
}

/// Largest simplex volume over j-subsets of the decomposition's directions,
/// with the lexicographically smallest maximizing subset (0-based).
pub fn max_simplex_volume(d: &IdentityDecomposition, j: usize) -> Result<(f64, Vec<usize>)> {
    if j < 1 || j > d.dim() {
        return Err(Error::InvalidQuery(format!("j={j} outside 1..={}", d.dim())));
    }
    let count = binomial(d.len(), j);
    if count > tol::SUBSET_CAP {
        return Err(Error::CombinatorialBlowup {
            count,
            cap: tol::SUBSET_CAP,
        });
    }
    let dirs = d.directions();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for subset in (0..dirs.len()).combinations(j) {
        let cols: Vec<&Point> = subset.iter().map(|&i| &dirs[i]).collect();
        let v = gram_simplex_volume_refs(&cols);
        if v > best.0 * (1.0 + 1e-12) + 1e-300 {
            best = (v, subset);
        }
    }
    Ok(best)
}

/// A decomposition with its largest j-simplex volume and a maximizing subset.
#[derive(Clone, Debug, PartialEq)]
pub struct DRWitness {
    pub decomposition: IdentityDecomposition,
    pub j: usize,
    pub value: f64,
    pub subset: Vec<usize>,
}

impl DRWitness {
    pub fn new(decomposition: IdentityDecomposition, j: usize) -> Result<Self> {
        let (value, subset) = max_simplex_volume(&decomposition, j)?;
        Ok(Self {
            decomposition,
            j,
            value,
            subset,
        })
    }
}

/// Names accepted by [`witness_library`].
pub fn witness_names() -> Vec<String> {
    let mut names = vec!["dr533".to_string(), "icosahedron_lines".to_string()];
    for n in 1..=6 {
        names.push(format!("crosspolytope{n}"));
    }
    for n in 1..=6 {
        names.push(format!("regular_simplex{n}"));
    }
    names
}

fn parse_dim(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)
        .and_then(|s| s.parse().ok())
        .filter(|&n| (1..=12).contains(&n))
}

/// Stored sharp configurations, with j = n.
///
/// - `crosspolytope<n>`: orthonormal basis, λ = 1.
/// - `regular_simplex<n>`: the n+1 vertex directions of a regular simplex, λ = n/(n+1).
/// - `dr533`: five directions in R³ with λ = (1/3, 2/3, 2/3, 2/3, 2/3) and value 1/8.
/// - `icosahedron_lines`: the six lines through antipodal icosahedron vertices, λ = 1/2.
pub fn witness_library(name: &str) -> Result<DRWitness> {
    let (dirs, weights): (Vec<Point>, Vec<f64>) = if name == "dr533" {
        let h = 3f64.sqrt() / 2.0;
        let cols = [
            [0.0, 0.0, 1.0],
            [h, 0.0, 0.5],
            [-h, 0.0, 0.5],
            [0.0, h, -0.5],
            [0.0, -h, -0.5],
        ];
        (
            cols.iter().map(|c| DVector::from_row_slice(c)).collect(),
            vec![1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
        )
    } else if name == "icosahedron_lines" {
        let verts = bodies::icosahedron_vertices();
        let mut lines: Vec<Point> = Vec::new();
        for v in verts {
            if !lines.iter().any(|l| (l + &v).norm() < 1e-12) {
                lines.push(v);
            }
        }
        (lines, vec![0.5; 6])
    } else if let Some(n) = parse_dim(name, "crosspolytope") {
        let dirs = (0..n).map(|i| DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 })).collect();
        (dirs, vec![1.0; n])
    } else if let Some(n) = parse_dim(name, "regular_simplex") {
        let w = n as f64 / (n as f64 + 1.0);
        (bodies::regular_simplex_vertices(n), vec![w; n + 1])
    } else {
        return Err(Error::UnknownWitness(name.to_string()));
    };
    let d = IdentityDecomposition::new(dirs, weights)?;
    let j = d.dim();
    DRWitness::new(d, j)
}

/// Pairwise |uₖᵀuₗ| statistics of a line set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equiangular {
    pub equiangular: bool,
    pub min_cos: f64,
    pub max_cos: f64,
    /// 1/√(n+2), the common cosine of C(n+1, 2) equiangular lines in Rⁿ.
    pub target: f64,
}

impl Equiangular {
    /// The common |cos| when the set is equiangular.
    pub fn common_cos(&self) -> Option<f64> {
        self.equiangular.then_some(0.5 * (self.min_cos + self.max_cos))
    }
}

pub fn equiangular_check(dirs: &[Point]) -> Result<Equiangular> {
    if dirs.len() < 2 {
        return Err(Error::ShapeMismatch("need at least two directions".into()));
    }
    let n = dirs[0].len();
    let units: Vec<Point> = dirs.iter().map(|d| d.normalize()).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (a, b) in units.iter().tuple_combinations() {
        let c = a.dot(b).abs();
        lo = lo.min(c);
        hi = hi.max(c);
    }
    Ok(Equiangular {
        equiangular: hi - lo <= 1e-9,
        min_cos: lo,
        max_cos: hi,
        target: 1.0 / ((n + 2) as f64).sqrt(),
    })
}

/// Annealing parameters for [`dr_search`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub restarts: usize,
    pub iters: usize,
    pub threads: usize,
    pub noise_start: f64,
    pub noise_end: f64,
    /// Metropolis temperature relative to the current objective, at full noise.
    pub temperature: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            iters: 5000,
            threads: 1,
            noise_start: 0.3,
            noise_end: 1e-4,
            temperature: 0.05,
        }
    }
}

/// W ← (WWᵀ)^{−1/2} W.
fn orthonormalize_rows(w: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let g = w * w.transpose();
    let min_eig = g.symmetric_eigenvalues().min();
    if min_eig.is_nan() || min_eig <= 1e-12 {
        return None;
    }
    Some(sym_inv_sqrt(&g) * w)
}

struct Objective {
    n: usize,
    subsets: Vec<Vec<usize>>,
}

impl Objective {
    fn new(m: usize, n: usize) -> Self {
        Self {
            n,
            subsets: (0..m).combinations(n).collect(),
        }
    }

    /// max |det U_J| / n! over column subsets, with zero columns contributing nothing.
    fn eval(&self, w: &DMatrix<f64>) -> f64 {
        let norms: Vec<f64> = w.column_iter().map(|c| c.norm()).collect();
        let mut best: f64 = 0.0;
        let mut sub = DMatrix::zeros(self.n, self.n);
        for s in &self.subsets {
            if s.iter().any(|&i| norms[i] < 1e-10) {
                continue;
            }
            let mut scale = 1.0;
            for (k, &i) in s.iter().enumerate() {
                sub.set_column(k, &w.column(i));
                scale *= norms[i];
            }
            best = best.max(sub.determinant().abs() / scale);
        }
        best / factorial(self.n)
    }
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample::<f64, _>(StandardNormal))
}

fn anneal(m: usize, n: usize, seed: u64, opts: &SearchOptions, obj: &Objective) -> (f64, DMatrix<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = loop {
        if let Some(w) = orthonormalize_rows(&gaussian_matrix(&mut rng, n, m)) {
            break w;
        }
    };
    let mut f = obj.eval(&w);
    let mut best = (f, w.clone());
    let iters = opts.iters.max(1);
    let ratio = if iters > 1 {
        (opts.noise_end / opts.noise_start).powf(1.0 / (iters - 1) as f64)
    } else {
        1.0
    };
    let mut sigma = opts.noise_start;
    for _ in 0..iters {
        let trial = &w + gaussian_matrix(&mut rng, n, m) * sigma;
        if let Some(trial) = orthonormalize_rows(&trial) {
            let g = obj.eval(&trial);
            let temp = opts.temperature * f * (sigma / opts.noise_start);
            let accept = g <= f || (temp > 0.0 && rng.random::<f64>() < (-(g - f) / temp).exp());
            if accept {
                w = trial;
                f = g;
                if f < best.0 {
                    best = (f, w.clone());
                }
            }
        }
        sigma *= ratio;
    }
    best
}

/// Simulated-annealing upper bound on DR(m, n, n) over row-orthonormal n×m
/// matrices W; column i gives λᵢ = ‖wᵢ‖² and uᵢ = wᵢ/‖wᵢ‖.
///
/// Restart r uses the seed `seed ^ r`; the best restart wins, ties going to the
/// lower index, so the result does not depend on `opts.threads`.
pub fn dr_search(m: usize, n: usize, seed: u64, opts: &SearchOptions) -> Result<DRWitness> {
    if n < 1 || n > m {
        return Err(Error::InvalidQuery(format!("need 1 ≤ n ≤ m, got m={m}, n={n}")));
    }
    if opts.restarts == 0 {
        return Err(Error::ParamOutOfRange {
            name: "restarts",
            value: 0.0,
            range: "≥ 1",
        });
    }
    let obj = Objective::new(m, n);
    let run = |r: usize| anneal(m, n, seed ^ r as u64, opts, &obj);
    let results: Vec<(f64, DMatrix<f64>)> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Numerical(e.to_string()))?;
        pool.install(|| (0..opts.restarts).into_par_iter().map(run).collect())
    } else {
        (0..opts.restarts).map(run).collect()
    };
    let (_, w) = results
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .map(|(_, r)| r)
        .expect("at least one restart");

    let (dirs, weights): (Vec<Point>, Vec<f64>) = w
        .column_iter()
        .filter(|c| c.norm() >= 1e-10)
        .map(|c| (c / c.norm(), c.norm_squared()))
        .unzip();
    DRWitness::new(IdentityDecomposition::new(dirs, weights)?, n)
}
