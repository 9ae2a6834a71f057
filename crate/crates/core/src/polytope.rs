//! Vertex-represented convex polytopes and their metric functionals.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hull::convex_hull;
use crate::linalg::{affine_rank, factorial, rank, Point};
use crate::tol;

/// A supporting halfspace `normal · x ≤ offset` with unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Point,
    pub offset: f64,
}

/// A full-dimensional polytope given by its vertices.
///
/// Construction strips points that are not vertices and computes the facet
/// list and volume eagerly, so a `Polytope` is immutable and `Sync`.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    volume: f64,
}

/// A symmetric set of unit directions, e.g. diametrical or minimum-width directions.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSet {
    pub dim: usize,
    pub directions: Vec<Point>,
    /// Relative slack used to admit a direction.
    pub tolerance: f64,
}

impl DirectionSet {
    /// Normalizes, adds antipodes and removes near-duplicates, keeping first-seen order.
    pub fn symmetric(dim: usize, raw: impl IntoIterator<Item = Point>, tolerance: f64) -> Self {
        let mut directions: Vec<Point> = Vec::new();
        for d in raw {
            let u = d.normalize();
            for cand in [u.clone(), -u] {
                if !directions
                    .iter()
                    .any(|v| (v - &cand).norm() <= tol::DIRECTION_DEDUP)
                {
                    directions.push(cand);
                }
            }
        }
        Self {
            dim,
            directions,
            tolerance,
        }
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// One representative per antipodal pair (the first listed of each pair).
    pub fn representatives(&self) -> Vec<Point> {
        let mut reps: Vec<Point> = Vec::new();
        for d in &self.directions {
            if !reps
                .iter()
                .any(|r| (r + d).norm() <= tol::DIRECTION_DEDUP || (r - d).norm() <= tol::DIRECTION_DEDUP)
            {
                reps.push(d.clone());
            }
        }
        reps
    }
}

impl Polytope {
    /// Builds conv(points), rejecting inputs that do not span R^n affinely.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let dim = points
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::ShapeMismatch("empty point list".into()))?;
        if dim == 0 {
            return Err(Error::ShapeMismatch("zero-dimensional points".into()));
        }
        if let Some(bad) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::ShapeMismatch(format!(
                "point {bad} has dimension {}, expected {dim}",
                points[bad].len()
            )));
        }
        if points.iter().any(|p| p.iter().any(|x| !x.is_finite())) {
            return Err(Error::ShapeMismatch("non-finite coordinate".into()));
        }
        if points.len() < dim + 1 {
            return Err(Error::DegenerateInput {
                rank: affine_rank(&points),
                dim,
            });
        }
        if dim == 1 {
            return Self::segment(&points);
        }

        let simplices = convex_hull(&points)?;
        let centroid = points.iter().fold(DVector::zeros(dim), |a, p| a + p) / points.len() as f64;
        let scale = points
            .iter()
            .map(|p| (p - &centroid).norm())
            .fold(0.0, f64::max);

        let mut facets: Vec<Facet> = Vec::new();
        for s in &simplices {
            let dup = facets.iter().any(|f| {
                (&f.normal - &s.normal).norm() <= tol::FACET_MERGE
                    && (f.offset - s.offset).abs() <= tol::FACET_MERGE * scale
            });
            if !dup {
                facets.push(Facet {
                    normal: s.normal.clone(),
                    offset: s.offset,
                });
            }
        }

        let mut on_hull = vec![false; points.len()];
        for s in &simplices {
            for &v in &s.vertices {
                on_hull[v] = true;
            }
        }
        let incidence = 1e-9 * scale.max(1.0);
        let vertices: Vec<Point> = points
            .iter()
            .zip(&on_hull)
            .filter(|(_, &h)| h)
            .map(|(p, _)| p)
            .filter(|p| {
                let normals: Vec<Point> = facets
                    .iter()
                    .filter(|f| (f.normal.dot(p) - f.offset).abs() <= incidence)
                    .map(|f| f.normal.clone())
                    .collect();
                normals.len() >= dim
                    && rank(&crate::linalg::columns(&normals), 1e-7) == dim
            })
            .cloned()
            .collect();

        let interior = vertices.iter().fold(DVector::zeros(dim), |a, p| a + p) / vertices.len() as f64;
        let nfact = factorial(dim);
        let volume = simplices
            .iter()
            .map(|s| {
                let m = DMatrix::from_fn(dim, dim, |i, j| points[s.vertices[j]][i] - interior[i]);
                m.determinant().abs() / nfact
            })
            .sum();

        Ok(Self {
            dim,
            vertices,
            facets,
            volume,
        })
    }

    fn segment(points: &[Point]) -> Result<Self> {
        let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        if hi - lo <= tol::RANK * hi.abs().max(lo.abs()).max(1.0) {
            return Err(Error::DegenerateInput { rank: 0, dim: 1 });
        }
        Ok(Self {
            dim: 1,
            vertices: vec![DVector::from_element(1, lo), DVector::from_element(1, hi)],
            facets: vec![
                Facet {
                    normal: DVector::from_element(1, -1.0),
                    offset: -lo,
                },
                Facet {
                    normal: DVector::from_element(1, 1.0),
                    offset: hi,
                },
            ],
            volume: hi - lo,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| DVector::from_row_slice(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Diameter and every vertex pair `(i, j)`, `i < j`, attaining it within relative 1e-9.
    pub fn diameter(&self) -> (f64, Vec<(usize, usize)>) {
        let (d, pairs) = self.long_pairs(tol::DIAMETER_REL);
        (d, pairs)
    }

    fn long_pairs(&self, rel_tol: f64) -> (f64, Vec<(usize, usize)>) {
        let v = &self.vertices;
        let mut dists = Vec::new();
        let mut max: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let d = (&v[i] - &v[j]).norm();
                max = max.max(d);
                dists.push((i, j, d));
            }
        }
        let pairs = dists
            .into_iter()
            .filter(|&(_, _, d)| d >= (1.0 - rel_tol) * max)
            .map(|(i, j, _)| (i, j))
            .collect();
        (max, pairs)
    }

    /// Unit directions of vertex pairs at least `(1 − rel_tol)·D` apart, with antipodes.
    pub fn diametrical_directions(&self, rel_tol: f64) -> DirectionSet {
        let (_, pairs) = self.long_pairs(rel_tol);
        DirectionSet::symmetric(
            self.dim,
            pairs
                .into_iter()
                .map(|(i, j)| &self.vertices[i] - &self.vertices[j]),
            rel_tol,
        )
    }

    /// The difference body conv{v − w}.
    pub fn difference_body(&self) -> Result<Polytope> {
        let v = &self.vertices;
        let mut pts = Vec::with_capacity(v.len() * v.len());
        for a in v {
            for b in v {
                pts.push(a - b);
            }
        }
        Polytope::new(pts)
    }

    /// Support function h(P, u) = max over vertices of v·u.
    pub fn support(&self, u: &Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Width h(P,u) + h(P,−u); `u` is used as given (pass a unit vector for the Euclidean width).
    pub fn width(&self, u: &Point) -> f64 {
        self.support(u) + self.support(&-u)
    }

    fn unit_width(&self, u: &Point) -> f64 {
        self.width(u) / u.norm()
    }

    /// Minimum width and the set of directions attaining it.
    ///
    /// Seeds are the facet normals of the difference body, each refined by
    /// projected-gradient descent on the sphere with step halving. For polytopes
    /// the seeds already contain a minimizer, so the refinement only ever
    /// tightens near-ties.
    pub fn min_width(&self) -> Result<(f64, DirectionSet)> {
        let diff = self.difference_body()?;
        let refined: Vec<(f64, Point)> = diff
            .facets
            .iter()
            .map(|f| self.descend_width(f.normal.clone()))
            .collect();
        let w = refined.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let dirs = refined
            .into_iter()
            .filter(|(x, _)| *x <= w * (1.0 + tol::MIN_WIDTH_REL))
            .map(|(_, u)| u);
        Ok((w, DirectionSet::symmetric(self.dim, dirs, tol::MIN_WIDTH_REL)))
    }

    fn descend_width(&self, mut u: Point) -> (f64, Point) {
        u.normalize_mut();
        let mut w = self.unit_width(&u);
        let mut step = 0.1;
        for _ in 0..200 {
            let hi = self.argmax(&u);
            let lo = self.argmax(&-&u);
            let g = &self.vertices[hi] - &self.vertices[lo];
            let tangent = &g - &u * g.dot(&u);
            if tangent.norm() <= 1e-15 {
                break;
            }
            let mut moved = false;
            while step > 1e-12 {
                let cand = (&u - &tangent * step).normalize();
                let wc = self.unit_width(&cand);
                if wc < w {
                    let change = (&cand - &u).norm();
                    u = cand;
                    w = wc;
                    moved = change > 1e-10;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        (w, u)
    }

    fn argmax(&self, u: &Point) -> usize {
        (0..self.vertices.len())
            .max_by(|&a, &b| self.vertices[a].dot(u).total_cmp(&self.vertices[b].dot(u)))
            .unwrap()
    }

    /// Polar body {x : x·y ≤ 1 ∀y ∈ P}; requires the origin in the interior.
    pub fn polar(&self) -> Result<Polytope> {
        let scale = self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (i, f) in self.facets.iter().enumerate() {
            if f.offset <= tol::HULL * scale {
                return Err(Error::OriginNotInterior {
                    facet: i,
                    offset: f.offset,
                });
            }
        }
        Polytope::new(self.facets.iter().map(|f| &f.normal / f.offset).collect())
    }

    /// Isodiametric quotient vol / Dⁿ.
    pub fn iq(&self) -> f64 {
        self.volume / self.diameter().0.powi(self.dim as i32)
    }

    /// Isominwidth quotient vol / wⁿ.
    pub fn iwq(&self) -> Result<f64> {
        Ok(self.volume / self.min_width()?.0.powi(self.dim as i32))
    }

    pub fn scaled(&self, s: f64) -> Result<Polytope> {
        Polytope::new(self.vertices.iter().map(|v| v * s).collect())
    }

    pub fn translated(&self, t: &Point) -> Result<Polytope> {
        Polytope::new(self.vertices.iter().map(|v| v + t).collect())
    }

    /// Whether −P = P up to `tol` (relative to the circumradius about 0).
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let r = self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
        self.vertices.iter().all(|v| {
            self.vertices
                .iter()
                .any(|w| (v + w).norm() <= tol * r.max(1e-300))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies;
    use approx::assert_relative_eq;

    fn row(v: &[f64]) -> Point {
        DVector::from_row_slice(v)
    }

    #[test]
    fn cube_combinatorics_and_redundancy() {
        let cube = bodies::cube(3).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.facets().len(), 6);
        let mut pts = cube.vertices().to_vec();
        pts.push(DVector::zeros(3));
        pts.push(row(&[1.0, 1.0, 0.0]));
        let again = Polytope::new(pts).unwrap();
        assert_eq!(again.vertices().len(), 8);
        assert_eq!(again.facets().len(), 6);
    }

    #[test]
    fn coplanar_points_report_rank() {
        let pts = vec![
            row(&[0.0, 0.0, 0.0]),
            row(&[1.0, 0.0, 0.0]),
            row(&[0.0, 1.0, 0.0]),
            row(&[1.0, 1.0, 0.0]),
        ];
        assert_eq!(
            Polytope::new(pts).unwrap_err(),
            Error::DegenerateInput { rank: 2, dim: 3 }
        );
    }

    #[test]
    fn volumes() {
        assert_relative_eq!(bodies::cube(3).unwrap().volume(), 8.0, epsilon = 1e-12);
        assert_relative_eq!(bodies::crosspolytope(3).unwrap().volume(), 4.0 / 3.0, epsilon = 1e-12);
        let corner = Polytope::new(vec![
            row(&[0.0, 0.0, 0.0]),
            row(&[1.0, 0.0, 0.0]),
            row(&[0.0, 1.0, 0.0]),
            row(&[0.0, 0.0, 1.0]),
        ])
        .unwrap();
        assert_relative_eq!(corner.volume(), 1.0 / 6.0, epsilon = 1e-14);
        assert_relative_eq!(bodies::cube(5).unwrap().volume(), 32.0, epsilon = 1e-10);
    }

    #[test]
    fn diameters() {
        let (d, pairs) = bodies::cube(3).unwrap().diameter();
        assert_relative_eq!(d, 2.0 * 3f64.sqrt(), epsilon = 1e-14);
        assert_eq!(pairs.len(), 4);
        let (d, pairs) = bodies::crosspolytope(3).unwrap().diameter();
        assert_relative_eq!(d, 2.0, epsilon = 1e-14);
        assert_eq!(pairs.len(), 3);
        let boat = bodies::sailing_boat(0.95).unwrap();
        let (d, pairs) = boat.diameter();
        assert_relative_eq!(d, (2.0f64 * 1.95).sqrt(), epsilon = 1e-14);
        assert_eq!(pairs.len(), 2);
        let top = boat.vertices().iter().position(|v| (v - row(&[0.0, 1.0])).norm() < 1e-14).unwrap();
        assert!(pairs.iter().all(|&(i, j)| i == top || j == top));
    }

    #[test]
    fn diametrical_directions_of_fixtures() {
        for n in 2..=4 {
            let dirs = bodies::cube(n).unwrap().diametrical_directions(tol::DIAMETER_REL);
            assert_eq!(dirs.len(), 1 << n);
            for d in &dirs.directions {
                assert!(d.iter().all(|x| (x.abs() - 1.0 / (n as f64).sqrt()).abs() < 1e-14));
            }
        }
        let cross = bodies::crosspolytope(2).unwrap().diametrical_directions(tol::DIAMETER_REL);
        assert_eq!(cross.len(), 4);
        let tri = bodies::regular_simplex(2).unwrap().diametrical_directions(tol::DIAMETER_REL);
        assert_eq!(tri.len(), 6);
        assert_eq!(tri.representatives().len(), 3);
    }

    #[test]
    fn difference_body_of_corner_triangle_is_hexagon() {
        let tri = Polytope::new(vec![row(&[0.0, 0.0]), row(&[1.0, 0.0]), row(&[0.0, 1.0])]).unwrap();
        let hex = tri.difference_body().unwrap();
        assert_eq!(hex.vertices().len(), 6);
        for expect in [[1.0, 0.0], [0.0, 1.0], [1.0, -1.0]] {
            for s in [1.0, -1.0] {
                let e = row(&expect) * s;
                assert!(hex.vertices().iter().any(|v| (v - &e).norm() < 1e-14));
            }
        }
        assert_relative_eq!(hex.diameter().0, 2.0 * tri.diameter().0, max_relative = 1e-12);
    }

    #[test]
    fn symmetric_difference_body_is_doubled() {
        let cross = bodies::crosspolytope(3).unwrap();
        let diff = cross.difference_body().unwrap();
        assert_eq!(diff.vertices().len(), 6);
        for v in diff.vertices() {
            assert!(cross.vertices().iter().any(|w| (w * 2.0 - v).norm() < 1e-14));
        }
    }

    #[test]
    fn widths() {
        let (w, dirs) = bodies::cube(3).unwrap().min_width().unwrap();
        assert_relative_eq!(w, 2.0, epsilon = 1e-14);
        assert_eq!(dirs.len(), 6);
        let tri = Polytope::new(vec![
            row(&[0.0, 0.0]),
            row(&[1.0, 0.0]),
            row(&[0.5, 3f64.sqrt() / 2.0]),
        ])
        .unwrap();
        let (w, dirs) = tri.min_width().unwrap();
        assert_relative_eq!(w, 3f64.sqrt() / 2.0, epsilon = 1e-14);
        assert_eq!(dirs.len(), 6);
        let cube = bodies::cube(2).unwrap();
        assert_relative_eq!(cube.support(&row(&[1.0, 1.0])), 2.0);
        assert_relative_eq!(cube.width(&row(&[1.0, 0.0])), 2.0);
    }

    #[test]
    fn crosspolytope_min_width_against_dense_sampling() {
        let cross = bodies::crosspolytope(2).unwrap();
        // oracle: 10^5 directions on the half circle
        let oracle = (0..100_000)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / 100_000.0;
                cross.width(&row(&[t.cos(), t.sin()]))
            })
            .fold(f64::INFINITY, f64::min);
        let (w, dirs) = cross.min_width().unwrap();
        assert!((w - oracle).abs() < 1e-9);
        assert_relative_eq!(w, 2f64.sqrt(), epsilon = 1e-14);
        assert_eq!(dirs.len(), 4);
        for d in &dirs.directions {
            assert!((d[0].abs() - 0.5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_pairs() {
        for n in 2..=4 {
            let cube = bodies::cube(n).unwrap();
            let cross = bodies::crosspolytope(n).unwrap();
            let p = cube.polar().unwrap();
            assert_eq!(p.vertices().len(), 2 * n);
            assert_relative_eq!(p.volume(), cross.volume(), epsilon = 1e-12);
            let q = cross.polar().unwrap();
            assert_eq!(q.vertices().len(), 1 << n);
            assert_relative_eq!(q.volume(), cube.volume(), epsilon = 1e-10);
        }
        let shifted = bodies::cube(2).unwrap().translated(&row(&[1.0, 0.0])).unwrap();
        assert!(matches!(shifted.polar(), Err(Error::OriginNotInterior { .. })));
    }

    #[test]
    fn quotients() {
        assert_relative_eq!(bodies::crosspolytope(3).unwrap().iq(), 1.0 / 6.0, epsilon = 1e-14);
        assert_relative_eq!(bodies::regular_simplex(2).unwrap().iq(), 3f64.sqrt() / 4.0, epsilon = 1e-14);
        for n in 2..=4 {
            assert_relative_eq!(bodies::cube(n).unwrap().iwq().unwrap(), 1.0, epsilon = 1e-12);
        }
        assert_relative_eq!(
            bodies::regular_simplex(2).unwrap().iwq().unwrap(),
            1.0 / 3f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn segment_in_one_dimension() {
        let s = Polytope::new(vec![row(&[3.0]), row(&[-1.0]), row(&[0.5])]).unwrap();
        assert_eq!(s.vertices().len(), 2);
        assert_relative_eq!(s.volume(), 4.0);
        assert_relative_eq!(s.min_width().unwrap().0, 4.0);
    }
}
