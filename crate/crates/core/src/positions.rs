//! Behrend (isodiametric) and isominwidth positions.
//!
//! A body is in Behrend position when (K − K)/D(K) is in Löwner position, and
//! in isominwidth position when (K − K)/w(K) is in John position. Both are
//! reached by one ellipsoid solve on the difference body followed by the
//! normalization map of the resulting ellipsoid.

use nalgebra::DMatrix;

use crate::angle::angle_to_orthonormal;
use crate::decomposition::{fit_weights, Fit, IdentityDecomposition};
use crate::ellipsoid::{john_ellipsoid_symmetric_with, mvee_centered, normalization_map};
use crate::error::{Error, Result};
use crate::linalg::{factorial, orthonormal_basis, Point};
use crate::map::LinearMap;
use crate::polytope::{DirectionSet, Polytope};
use crate::random;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositionKind {
    Behrend,
    Isominwidth,
}

impl PositionKind {
    pub fn name(self) -> &'static str {
        match self {
            PositionKind::Behrend => "behrend",
            PositionKind::Isominwidth => "isominwidth",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PositionCertificate {
    pub kind: PositionKind,
    pub map: LinearMap,
    pub quotient_before: f64,
    pub quotient_after: f64,
    /// Over the diametrical (Behrend) or minimum-width (isominwidth) directions of the output.
    pub decomposition: IdentityDecomposition,
    pub residual: f64,
}

/// A normalized body, the map that produced it and its certificate.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub map: LinearMap,
    pub body: Polytope,
    pub certificate: PositionCertificate,
}

/// NNLS fit over one representative per antipodal pair.
fn decompose(dirs: &DirectionSet, tol: f64) -> Result<(Fit, IdentityDecomposition)> {
    let reps = dirs.representatives();
    let fit = fit_weights(&reps, tol)?;
    let d = IdentityDecomposition::new(reps, fit.weights().to_vec())?;
    Ok((fit, d))
}

/// Maps P so that (P − P)/D(P) is in Löwner position.
pub fn behrend_normalize(body: &Polytope, eps: f64) -> Result<Normalized> {
    let (diam, _) = body.diameter();
    let diff = body.difference_body()?.scaled(1.0 / diam)?;
    let sol = mvee_centered(diff.vertices(), eps)?;
    let map = normalization_map(&sol.ellipsoid)?;
    let out = map.apply(body)?;

    let (fit, mut decomposition) = decompose(&out.diametrical_directions(tol::BEHREND_DIAMETER_REL), tol::BEHREND_RESIDUAL)?;
    if !fit.is_feasible() {
        // contact points of the normalized difference body are diametrical directions of `out`
        let contact = sol.contact.decomposition()?;
        if contact.residual() < decomposition.residual() {
            decomposition = contact;
        }
    }
    let residual = decomposition.residual();
    Ok(Normalized {
        certificate: PositionCertificate {
            kind: PositionKind::Behrend,
            map: map.clone(),
            quotient_before: body.iq(),
            quotient_after: out.iq(),
            decomposition,
            residual,
        },
        map,
        body: out,
    })
}

/// Result of [`is_behrend`].
#[derive(Clone, Debug)]
pub struct BehrendCheck {
    pub is_behrend: bool,
    pub directions: DirectionSet,
    /// Best nonnegative fit over the diametrical directions; its residual is the witness when not Behrend.
    pub decomposition: IdentityDecomposition,
    pub residual: f64,
}

/// Whether the diametrical directions of P admit a decomposition of Iₙ within `tol`.
pub fn is_behrend(body: &Polytope, tol: f64) -> Result<BehrendCheck> {
    let directions = body.diametrical_directions(tol::BEHREND_DIAMETER_REL);
    let (fit, decomposition) = decompose(&directions, tol)?;
    Ok(BehrendCheck {
        is_behrend: fit.is_feasible(),
        residual: fit.residual(),
        directions,
        decomposition,
    })
}

fn require_behrend(body: &Polytope) -> Result<DirectionSet> {
    let check = is_behrend(body, tol::BEHREND_RESIDUAL)?;
    if !check.is_behrend {
        return Err(Error::NotInBehrendPosition {
            residual: check.residual,
        });
    }
    Ok(check.directions)
}

/// Extreme angles between a subspace L and the diametrical directions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleRange {
    pub min: f64,
    pub max: f64,
    /// arccos(√(i/n)) for dim L = i.
    pub bound: f64,
}

impl AngleRange {
    /// min ≤ bound + tol and max ≥ bound − tol.
    pub fn holds(&self, tol: f64) -> bool {
        self.min <= self.bound + tol && self.max >= self.bound - tol
    }
}

/// Min and max of the angle between span(basis) and the diametrical directions of P.
pub fn distribution_check(body: &Polytope, basis: &[Point]) -> Result<AngleRange> {
    let dirs = require_behrend(body)?;
    distribution_angles(body.dim(), &dirs, basis)
}

fn distribution_angles(n: usize, dirs: &DirectionSet, basis: &[Point]) -> Result<AngleRange> {
    let q = orthonormal_basis(basis)?;
    let i = q.ncols();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for d in &dirs.directions {
        let a = angle_to_orthonormal(&q, d)?;
        lo = lo.min(a);
        hi = hi.max(a);
    }
    Ok(AngleRange {
        min: lo,
        max: hi,
        bound: (i as f64 / n as f64).sqrt().acos(),
    })
}

/// Checks that every sampled unit vector lies within arccos(√(1/n)) of a
/// diametrical direction. Returns the largest angle to the nearest direction.
pub fn spherical_covering_check(body: &Polytope, samples: usize, seed: u64) -> Result<(f64, f64)> {
    let dirs = require_behrend(body)?;
    let n = body.dim();
    let mut rng = random::rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = random::unit_vector(&mut rng, n);
        let best = dirs
            .directions
            .iter()
            .map(|d| d.dot(&x))
            .fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max(best.clamp(-1.0, 1.0).acos());
    }
    Ok((worst, (1.0 / n as f64).sqrt().acos()))
}

#[derive(Clone, Debug)]
pub struct GreedySimplex {
    /// |det(v₁, …, vₙ)| / n!.
    pub value: f64,
    pub chosen: Vec<Point>,
    /// 1/(√(n!)·n^{n/2}).
    pub bound: f64,
    pub iq: f64,
}

impl GreedySimplex {
    pub fn holds(&self) -> bool {
        self.value >= self.bound - 1e-9 && self.iq >= self.value - 1e-9
    }
}

/// Greedy choice of diametrical directions, each maximizing the angle to the
/// span of those already chosen.
pub fn greedy_simplex_bound(body: &Polytope) -> Result<GreedySimplex> {
    let dirs = require_behrend(body)?;
    let n = body.dim();
    let reps = dirs.representatives();
    let mut chosen = vec![reps[0].clone()];
    while chosen.len() < n {
        let q = orthonormal_basis(&chosen)?;
        let mut best = (f64::NEG_INFINITY, 0);
        for (k, d) in reps.iter().enumerate() {
            let a = angle_to_orthonormal(&q, d)?;
            if a > best.0 {
                best = (a, k);
            }
        }
        chosen.push(reps[best.1].clone());
    }
    let m = crate::linalg::columns(&chosen);
    let nf = n as f64;
    Ok(GreedySimplex {
        value: m.determinant().abs() / factorial(n),
        chosen,
        bound: 1.0 / (factorial(n).sqrt() * nf.powf(nf / 2.0)),
        iq: body.iq(),
    })
}

/// Maps P so that (P − P)/w(P) is in John position.
pub fn isominwidth_normalize(body: &Polytope, eps: f64) -> Result<Normalized> {
    let (w, _) = body.min_width()?;
    let diff = body.difference_body()?.scaled(1.0 / w)?;
    let (john, _) = john_ellipsoid_symmetric_with(&diff, eps)?;
    let map = normalization_map(&john)?;
    let out = map.apply(body)?;
    let (_, dirs) = out.min_width()?;
    let (_, decomposition) = decompose(&dirs, tol::ISOMINWIDTH_RESIDUAL)?;
    let residual = decomposition.residual();
    Ok(Normalized {
        certificate: PositionCertificate {
            kind: PositionKind::Isominwidth,
            map: map.clone(),
            quotient_before: body.iwq()?,
            quotient_after: out.iwq()?,
            decomposition,
            residual,
        },
        map,
        body: out,
    })
}

/// w(P)·D(P°) for an origin-symmetric P.
pub fn duality_check(body: &Polytope) -> Result<f64> {
    if !body.is_symmetric(1e-9) {
        return Err(Error::NotSymmetric { index: 0 });
    }
    let (w, _) = body.min_width()?;
    let (d, _) = body.polar()?.diameter();
    Ok(w * d)
}

/// Largest ‖BᵀB − cI‖_F / c over composite maps B = A_s Q_s A₀⁻¹, where Q_s is a
/// random rotation for each seed and A the normalization map of `kind`.
pub fn uniqueness_check(body: &Polytope, seeds: &[u64], kind: PositionKind) -> Result<f64> {
    let normalize = |p: &Polytope| match kind {
        PositionKind::Behrend => behrend_normalize(p, tol::MVEE_EPS),
        PositionKind::Isominwidth => isominwidth_normalize(p, tol::MVEE_EPS),
    };
    let base_inv = normalize(body)?.map.inverse();
    let mut worst: f64 = 0.0;
    for &s in seeds {
        let q = LinearMap::new(random::orthogonal_matrix(body.dim(), s))?;
        let a = normalize(&q.apply(body)?)?.map;
        let b = a.compose(&q).compose(&base_inv);
        worst = worst.max(b.similarity_deviation());
    }
    Ok(worst)
}

/// Convenience: the diagonal map diag(d).
pub fn diagonal_map(d: &[f64]) -> Result<LinearMap> {
    LinearMap::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(d)))
}
