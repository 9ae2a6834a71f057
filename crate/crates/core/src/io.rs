//! JSON formats and number formatting.
//!
//! Bodies: `{"dim": n, "vertices": [[...], ...]}` (`"points"` is accepted as an alias).
//! Ellipsoids: `{"dim": n, "shape": [[...]], "center": [...]}`.
//! Decompositions: `{"dim": n, "directions": [[...]], "weights": [...], "residual": r}`.
//! Witnesses: a decomposition plus `"j"`, `"value"` and `"subset"` (0-based indices).
//! Certificates: `{"kind", "map", "det", "quotient_before", "quotient_after", "decomposition", "residual"}`.
//!
//! serde_json writes floats as shortest round-trip decimals.

use nalgebra::{DMatrix, DVector};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decomposition::IdentityDecomposition;
use crate::dr::DRWitness;
use crate::ellipsoid::{ContactData, Ellipsoid};
use crate::error::{Error, Result};
use crate::linalg::Point;
use crate::positions::PositionCertificate;
use crate::polytope::Polytope;

/// `x` with 12 significant digits.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        format!("{:.*}", (11 - e).max(0) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn vecs(v: &[Point]) -> Vec<Vec<f64>> {
    v.iter().map(|p| p.iter().copied().collect()).collect()
}

fn to_points(rows: &[Vec<f64>], dim: Option<usize>, what: &str) -> Result<Vec<Point>> {
    let n = dim.or_else(|| rows.first().map(|r| r.len())).unwrap_or(0);
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(format!(
            "{what} {i} has {} coordinates, expected {n}",
            rows[i].len()
        )));
    }
    Ok(rows.iter().map(|r| DVector::from_row_slice(r)).collect())
}

fn to_matrix(rows: &[Vec<f64>], n: usize, what: &str) -> Result<DMatrix<f64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(format!("{what} must be {n}x{n}")));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

#[derive(Serialize, Deserialize)]
pub struct BodyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(alias = "points")]
    pub vertices: Vec<Vec<f64>>,
}

pub fn body_to_json(p: &Polytope) -> String {
    to_json(&BodyJson {
        dim: Some(p.dim()),
        vertices: vecs(p.vertices()),
    })
}

/// Raw point list of a body file (no hull computed).
pub fn points_from_json(text: &str) -> Result<Vec<Point>> {
    let b: BodyJson = parse(text)?;
    if b.vertices.is_empty() {
        return Err(Error::ShapeMismatch("no vertices".into()));
    }
    to_points(&b.vertices, b.dim, "vertex")
}

pub fn body_from_json(text: &str) -> Result<Polytope> {
    Polytope::new(points_from_json(text)?)
}

#[derive(Serialize, Deserialize)]
pub struct EllipsoidJson {
    pub dim: usize,
    pub shape: Vec<Vec<f64>>,
    pub center: Vec<f64>,
}

pub fn ellipsoid_json(e: &Ellipsoid) -> EllipsoidJson {
    EllipsoidJson {
        dim: e.dim(),
        shape: rows(e.shape()),
        center: e.center().iter().copied().collect(),
    }
}

pub fn ellipsoid_from_json(text: &str) -> Result<Ellipsoid> {
    let e: EllipsoidJson = parse(text)?;
    if e.center.len() != e.dim {
        return Err(Error::ShapeMismatch("center length differs from dim".into()));
    }
    Ellipsoid::new(to_matrix(&e.shape, e.dim, "shape")?, DVector::from_vec(e.center))
}

#[derive(Serialize, Deserialize)]
pub struct ContactJson {
    pub points: Vec<Vec<f64>>,
    pub indices: Vec<usize>,
    pub weights: Vec<f64>,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub barycenter_residual: Option<f64>,
}

pub fn contact_json(c: &ContactData) -> ContactJson {
    ContactJson {
        points: vecs(&c.points),
        indices: c.indices.clone(),
        weights: c.weights.clone(),
        residual: c.residual,
        barycenter_residual: c.barycenter_residual,
    }
}

#[derive(Serialize, Deserialize)]
pub struct DecompositionJson {
    pub dim: usize,
    pub directions: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    #[serde(default)]
    pub residual: Option<f64>,
}

pub fn decomposition_json(d: &IdentityDecomposition) -> DecompositionJson {
    DecompositionJson {
        dim: d.dim(),
        directions: vecs(d.directions()),
        weights: d.weights().to_vec(),
        residual: Some(d.residual()),
    }
}

/// Reads a decomposition or a witness (extra keys are ignored); the stored residual is recomputed.
pub fn decomposition_from_json(text: &str) -> Result<IdentityDecomposition> {
    let d: DecompositionJson = parse(text)?;
    let dirs = to_points(&d.directions, Some(d.dim), "direction")?;
    IdentityDecomposition::new(dirs, d.weights)
}

#[derive(Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(flatten)]
    pub decomposition: DecompositionJson,
    pub j: usize,
    pub value: f64,
    pub subset: Vec<usize>,
}

pub fn witness_json(w: &DRWitness) -> WitnessJson {
    WitnessJson {
        decomposition: decomposition_json(&w.decomposition),
        j: w.j,
        value: w.value,
        subset: w.subset.clone(),
    }
}

pub fn witness_from_json(text: &str) -> Result<DRWitness> {
    let w: WitnessJson = parse(text)?;
    let dirs = to_points(&w.decomposition.directions, Some(w.decomposition.dim), "direction")?;
    DRWitness::new(IdentityDecomposition::new(dirs, w.decomposition.weights)?, w.j)
}

#[derive(Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub map: Vec<Vec<f64>>,
    pub det: f64,
    pub quotient_before: f64,
    pub quotient_after: f64,
    pub decomposition: DecompositionJson,
    pub residual: f64,
}

pub fn certificate_json(c: &PositionCertificate) -> CertificateJson {
    CertificateJson {
        kind: c.kind.name().to_string(),
        map: rows(c.map.matrix()),
        det: c.map.det(),
        quotient_before: c.quotient_before,
        quotient_after: c.quotient_after,
        decomposition: decomposition_json(&c.decomposition),
        residual: c.residual,
    }
}

/// Parses arbitrary JSON, reporting line and column on failure.
pub fn parse_value(text: &str) -> Result<Value> {
    parse(text)
}
