//! Incremental (quickhull-style) convex hull in general dimension.
//!
//! Facets are simplices; coplanar facets are merged later by the caller.
//! Points are translated to their centroid and scaled to unit radius before
//! any predicate is evaluated, so [`tol::HULL`] acts as an absolute threshold.

use std::collections::{HashMap, VecDeque};

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{hyperplane_normal, Point};
use crate::tol;

/// A simplicial hull facet in the caller's coordinates.
#[derive(Clone, Debug)]
pub(crate) struct SimplexFacet {
    /// Indices into the input point list.
    pub vertices: Vec<usize>,
    pub normal: Point,
    pub offset: f64,
}

struct Facet {
    vertices: Vec<usize>,
    /// `neighbors[k]` shares every vertex except `vertices[k]`.
    neighbors: Vec<usize>,
    normal: Point,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Facet {
    fn dist(&self, q: &Point) -> f64 {
        self.normal.dot(q) - self.offset
    }
}

/// Tie-breaking direction; any fixed generic vector works.
fn generic_direction(n: usize) -> Point {
    DVector::from_fn(n, |i, _| 1.0 / (1.0 + (i as f64 + 1.0).sqrt() * std::f64::consts::E).powi(2) + (i as f64) * 0.1234567)
}

/// Greedy choice of n+1 affinely independent points, or the affine rank reached.
fn initial_simplex(q: &[Point]) -> std::result::Result<Vec<usize>, usize> {
    let n = q[0].len();
    let first = (0..q.len())
        .max_by(|&a, &b| q[a].norm_squared().total_cmp(&q[b].norm_squared()))
        .unwrap();
    let mut chosen = vec![first];
    let mut basis: Vec<Point> = Vec::new();
    while chosen.len() < n + 1 {
        let origin = &q[chosen[0]];
        let residual = |p: &Point| {
            let mut r = p - origin;
            for b in &basis {
                let c = b.dot(&r);
                r -= b * c;
            }
            r
        };
        let (best, dist) = (0..q.len())
            .map(|i| (i, residual(&q[i]).norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if dist <= tol::RANK {
            return Err(chosen.len() - 1);
        }
        let mut r = residual(&q[best]);
        // second pass for orthogonality
        for b in &basis {
            let c = b.dot(&r);
            r -= b * c;
        }
        basis.push(r.normalize());
        chosen.push(best);
    }
    Ok(chosen)
}

fn oriented_facet(q: &[Point], vertices: Vec<usize>, interior: &Point) -> Result<Facet> {
    let pts: Vec<&Point> = vertices.iter().map(|&i| &q[i]).collect();
    let mut normal = hyperplane_normal(&pts)
        .ok_or_else(|| Error::Numerical("degenerate hull facet".into()))?;
    let mut offset = normal.dot(pts[0]);
    if normal.dot(interior) > offset {
        normal = -normal;
        offset = -offset;
    }
    let n = vertices.len();
    Ok(Facet {
        vertices,
        neighbors: vec![usize::MAX; n],
        normal,
        offset,
        outside: Vec::new(),
        alive: true,
    })
}

/// Computes the simplicial facets of conv(points). Requires dimension ≥ 2.
pub(crate) fn convex_hull(points: &[Point]) -> Result<Vec<SimplexFacet>> {
    let n = points[0].len();
    let m = points.len();
    let centroid = points.iter().fold(DVector::zeros(n), |acc, p| acc + p) / m as f64;
    let scale = points
        .iter()
        .map(|p| (p - &centroid).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::DegenerateInput { rank: 0, dim: n });
    }
    let q: Vec<Point> = points.iter().map(|p| (p - &centroid) / scale).collect();

    let simplex = initial_simplex(&q).map_err(|rank| Error::DegenerateInput { rank, dim: n })?;
    let interior = simplex.iter().fold(DVector::zeros(n), |acc, &i| acc + &q[i]) / (n + 1) as f64;

    let mut facets: Vec<Facet> = Vec::new();
    for k in 0..=n {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &v)| v)
            .collect();
        let mut f = oriented_facet(&q, verts, &interior)?;
        // vertex at position p of facet k is simplex[j]; its opposite facet is j
        f.neighbors = (0..=n).filter(|&j| j != k).collect();
        facets.push(f);
    }

    let in_simplex: Vec<bool> = {
        let mut v = vec![false; m];
        for &i in &simplex {
            v[i] = true;
        }
        v
    };
    for i in (0..m).filter(|&i| !in_simplex[i]) {
        if let Some(f) = facets.iter_mut().find(|f| f.dist(&q[i]) > tol::HULL) {
            f.outside.push(i);
        }
    }

    let g = generic_direction(n);
    let mut queue: VecDeque<usize> = (0..facets.len()).collect();
    while let Some(fi) = queue.pop_front() {
        if !facets[fi].alive || facets[fi].outside.is_empty() {
            continue;
        }
        let apex = {
            let f = &facets[fi];
            let max = f
                .outside
                .iter()
                .map(|&i| f.dist(&q[i]))
                .fold(f64::NEG_INFINITY, f64::max);
            *f.outside
                .iter()
                .filter(|&&i| f.dist(&q[i]) >= max - tol::HULL)
                .max_by(|&&a, &&b| g.dot(&q[a]).total_cmp(&g.dot(&q[b])))
                .unwrap()
        };

        // visible region by flood fill
        let mut visible = vec![fi];
        let mut is_visible: HashMap<usize, bool> = HashMap::from([(fi, true)]);
        let mut k = 0;
        while k < visible.len() {
            let f = visible[k];
            k += 1;
            for &nb in &facets[f].neighbors {
                if is_visible.contains_key(&nb) {
                    continue;
                }
                let vis = facets[nb].dist(&q[apex]) > tol::HULL;
                is_visible.insert(nb, vis);
                if vis {
                    visible.push(nb);
                }
            }
        }

        let mut new_ids = Vec::new();
        let mut ridge_map: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for &f in &visible {
            for pos in 0..facets[f].vertices.len() {
                let nb = facets[f].neighbors[pos];
                if is_visible[&nb] {
                    continue;
                }
                let mut verts = facets[f].vertices.clone();
                verts[pos] = apex;
                let mut nf = oriented_facet(&q, verts, &interior)?;
                let id = facets.len();
                nf.neighbors[pos] = nb;
                let back = facets[nb]
                    .neighbors
                    .iter()
                    .position(|&x| x == f)
                    .ok_or_else(|| Error::Numerical("inconsistent hull adjacency".into()))?;
                facets[nb].neighbors[back] = id;
                for p in (0..nf.vertices.len()).filter(|&p| p != pos) {
                    let mut ridge: Vec<usize> = nf
                        .vertices
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != p)
                        .map(|(_, &v)| v)
                        .collect();
                    ridge.sort_unstable();
                    if let Some((other, opos)) = ridge_map.remove(&ridge) {
                        nf.neighbors[p] = other;
                        facets[other].neighbors[opos] = id;
                    } else {
                        ridge_map.insert(ridge, (id, p));
                    }
                }
                facets.push(nf);
                new_ids.push(id);
            }
        }
        if !ridge_map.is_empty() {
            return Err(Error::Numerical("unmatched horizon ridge".into()));
        }

        let mut orphans = Vec::new();
        for &f in &visible {
            facets[f].alive = false;
            orphans.append(&mut facets[f].outside);
        }
        for i in orphans.into_iter().filter(|&i| i != apex) {
            if let Some(&t) = new_ids
                .iter()
                .find(|&&t| facets[t].dist(&q[i]) > tol::HULL)
            {
                facets[t].outside.push(i);
            }
        }
        queue.extend(new_ids.iter().copied().filter(|&t| !facets[t].outside.is_empty()));
    }

    Ok(facets
        .into_iter()
        .filter(|f| f.alive)
        .map(|f| {
            let offset = f.offset * scale + f.normal.dot(&centroid);
            SimplexFacet {
                vertices: f.vertices,
                normal: f.normal,
                offset,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[f64]]) -> Vec<Point> {
        v.iter().map(|c| DVector::from_row_slice(c)).collect()
    }

    #[test]
    fn square_has_four_edges_after_triangulation() {
        let p = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0], &[0.5, 0.5]]);
        let h = convex_hull(&p).unwrap();
        assert_eq!(h.len(), 4);
        for f in &h {
            for v in &p {
                assert!(f.normal.dot(v) <= f.offset + 1e-12);
            }
        }
    }

    #[test]
    fn cube_with_edge_midpoints() {
        let mut p = Vec::new();
        for mask in 0..8u32 {
            p.push(DVector::from_fn(3, |i, _| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }));
        }
        p.push(DVector::from_row_slice(&[1.0, 1.0, 0.0]));
        p.push(DVector::from_row_slice(&[0.0, 0.0, 1.0]));
        let h = convex_hull(&p).unwrap();
        for f in &h {
            assert!((f.offset - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn coplanar_is_degenerate() {
        let p = pts(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0]]);
        assert_eq!(
            convex_hull(&p).unwrap_err(),
            Error::DegenerateInput { rank: 2, dim: 3 }
        );
    }
}
