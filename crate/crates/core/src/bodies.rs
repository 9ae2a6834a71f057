//! Canonical bodies used as fixtures: cubes, crosspolytopes, regular simplices,
//! the icosahedron and the planar sailing-boat / septagon / triangle family.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::Point;
use crate::polytope::Polytope;

/// Named body constructors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BodyKind {
    Cube(usize),
    Crosspolytope(usize),
    RegularSimplex(usize),
    Icosahedron,
    SailingBoat(f64),
    Septagon(f64),
    Triangle(f64),
}

pub fn make_body(kind: BodyKind) -> Result<Polytope> {
    match kind {
        BodyKind::Cube(n) => cube(n),
        BodyKind::Crosspolytope(n) => crosspolytope(n),
        BodyKind::RegularSimplex(n) => regular_simplex(n),
        BodyKind::Icosahedron => icosahedron(),
        BodyKind::SailingBoat(r) => sailing_boat(r),
        BodyKind::Septagon(eps) => septagon(eps),
        BodyKind::Triangle(r) => triangle(r),
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ParamOutOfRange {
            name: "n",
            value: 0.0,
            range: "n ≥ 1",
        });
    }
    Ok(())
}

fn pt(c: &[f64]) -> Point {
    DVector::from_row_slice(c)
}

/// The vertices {−1, 1}ⁿ in index order (bit i of the index sets coordinate i).
pub fn cube_vertices(n: usize) -> Vec<Point> {
    (0..1usize << n)
        .map(|mask| DVector::from_fn(n, |i, _| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }))
        .collect()
}

/// [−1, 1]ⁿ.
pub fn cube(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    Polytope::new(cube_vertices(n))
}

/// conv{±e₁, …, ±eₙ}.
pub fn crosspolytope(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let mut v = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut e = DVector::zeros(n);
            e[i] = s;
            v.push(e);
        }
    }
    Polytope::new(v)
}

/// Vertices of the regular n-simplex with circumcenter 0 and circumradius 1.
///
/// The standard basis of R^{n+1} is centered and expressed in the Helmert
/// basis of the hyperplane Σx = 0.
pub fn regular_simplex_vertices(n: usize) -> Vec<Point> {
    let radius = (n as f64 / (n as f64 + 1.0)).sqrt();
    (0..=n)
        .map(|i| {
            DVector::from_fn(n, |k, _| {
                // Helmert vector k: (1,…,1,−(k+1),0,…)/√((k+1)(k+2)), support 0..=k+1
                let norm = (((k + 1) * (k + 2)) as f64).sqrt();
                let coord = if i <= k {
                    1.0
                } else if i == k + 1 {
                    -((k + 1) as f64)
                } else {
                    0.0
                };
                coord / norm / radius
            })
        })
        .collect()
}

pub fn regular_simplex(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    Polytope::new(regular_simplex_vertices(n))
}

/// Regular icosahedron with circumradius 1: cyclic permutations of (0, ±1, ±φ).
pub fn icosahedron_vertices() -> Vec<Point> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let r = (1.0 + phi * phi).sqrt();
    let mut v = Vec::with_capacity(12);
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            v.push(pt(&[0.0, s1, s2 * phi]) / r);
            v.push(pt(&[s1, s2 * phi, 0.0]) / r);
            v.push(pt(&[s2 * phi, 0.0, s1]) / r);
        }
    }
    v
}

pub fn icosahedron() -> Result<Polytope> {
    Polytope::new(icosahedron_vertices())
}

/// The pentagon conv{(0,1), (±√3/2, −1/2), (±√(1−r²), −r)}, for √3/2 < r ≤ 1.
pub fn sailing_boat(r: f64) -> Result<Polytope> {
    if !(r > 3f64.sqrt() / 2.0 && r <= 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "r",
            value: r,
            range: "√3/2 < r ≤ 1",
        });
    }
    let h = 3f64.sqrt() / 2.0;
    let s = (1.0 - r * r).max(0.0).sqrt();
    Polytope::new(vec![
        pt(&[0.0, 1.0]),
        pt(&[h, -0.5]),
        pt(&[-h, -0.5]),
        pt(&[s, -r]),
        pt(&[-s, -r]),
    ])
}

fn triangle_vertices(r: f64) -> Vec<Point> {
    let s = (1.0 - r * r).sqrt();
    vec![pt(&[0.0, 1.0]), pt(&[s, -r]), pt(&[-s, -r])]
}

/// T_r = conv{(0,1), (±√(1−r²), −r)}, for 0 ≤ r < 1.
pub fn triangle(r: f64) -> Result<Polytope> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::ParamOutOfRange {
            name: "r",
            value: r,
            range: "0 ≤ r < 1",
        });
    }
    Polytope::new(triangle_vertices(r))
}

/// K_ε = conv{(1−ε)Q₂, T_{1/2−ε}} with Q₂ the square inscribed in the unit circle.
///
/// Its diameter is attained by opposite vertices of (1−ε)Q₂ only for
/// ε ≤ 0.02003…; beyond that a triangle vertex and a square vertex are farther apart.
pub fn septagon(eps: f64) -> Result<Polytope> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::ParamOutOfRange {
            name: "eps",
            value: eps,
            range: "0 < ε ≤ 0.1",
        });
    }
    let q = (1.0 - eps) / 2f64.sqrt();
    let mut v = vec![pt(&[q, q]), pt(&[q, -q]), pt(&[-q, q]), pt(&[-q, -q])];
    v.extend(triangle_vertices(0.5 - eps));
    Polytope::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn boat_vertices_on_unit_circle() {
        let boat = sailing_boat(0.95).unwrap();
        assert_eq!(boat.vertices().len(), 5);
        for v in boat.vertices() {
            assert_relative_eq!(v.norm(), 1.0, epsilon = 1e-15);
        }
        assert!(sailing_boat(0.8).is_err());
    }

    #[test]
    fn simplex_is_regular_with_unit_circumradius() {
        for n in 1..=6 {
            let v = regular_simplex_vertices(n);
            let edge = (2.0 * (n as f64 + 1.0) / n as f64).sqrt();
            for i in 0..=n {
                assert_relative_eq!(v[i].norm(), 1.0, epsilon = 1e-14);
                for j in i + 1..=n {
                    assert_relative_eq!((&v[i] - &v[j]).norm(), edge, epsilon = 1e-14);
                }
            }
        }
        let tri = regular_simplex_vertices(2);
        assert_relative_eq!((&tri[0] - &tri[1]).norm(), 3f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn septagon_has_seven_vertices() {
        let k = septagon(0.05).unwrap();
        assert_eq!(k.vertices().len(), 7);
        assert!(septagon(0.0).is_err());
        assert!(septagon(0.2).is_err());
    }

    #[test]
    fn icosahedron_is_regular() {
        let ico = icosahedron().unwrap();
        assert_eq!(ico.vertices().len(), 12);
        assert_eq!(ico.facets().len(), 20);
    }
}
