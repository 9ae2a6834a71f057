use approx::assert_relative_eq;
use isodiam::decomposition::{cauchy_binet_check, fit_weights, verify, IdentityDecomposition};
use isodiam::dr::{self, dr_lower_bound, dr_search, DRQuery, SearchOptions};
use isodiam::ellipsoid::{john_ellipsoid_symmetric_with, mvee_centered, mvee_centered_with, MveeOptions};
use isodiam::positions::{behrend_normalize, isominwidth_normalize};
use isodiam::{claims, random, LinearMap, Point};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let one_way = |x: &[Point], y: &[Point]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn iq_is_similarity_invariant(n in 2usize..=4, seed in 0u64..10_000, s in 0.1f64..10.0) {
        let p = random::polytope(n, n + 4, seed);
        let q = random::orthogonal_matrix(n, seed + 1) * s;
        let t = random::gaussian_vector(&mut random::rng(seed + 2), n) * 5.0;
        let image = LinearMap::new(q).unwrap().apply(&p).unwrap().translated(&t).unwrap();
        prop_assert!((image.iq() - p.iq()).abs() < 1e-9);
    }

    #[test]
    fn difference_body_diameter_and_volume(n in 2usize..=4, seed in 0u64..10_000) {
        let p = random::polytope(n, n + 3, seed);
        let d = p.difference_body().unwrap();
        prop_assert!((d.diameter().0 - 2.0 * p.diameter().0).abs() <= 1e-12 * p.diameter().0);
        prop_assert!(d.volume() >= 2f64.powi(n as i32) * p.volume() * (1.0 - 1e-12));
    }

    #[test]
    fn polar_is_an_involution(n in 2usize..=4, seed in 0u64..10_000) {
        let p = random::symmetric_polytope(n, n + 2, seed);
        let pp = p.polar().unwrap().polar().unwrap();
        prop_assert!(hausdorff(p.vertices(), pp.vertices()) < 1e-8);
    }

    #[test]
    fn mvee_objective_trace_and_rotation(n in 2usize..=4, seed in 0u64..10_000) {
        let pts = random::symmetric_polytope(n, n + 3, seed).vertices().to_vec();
        let opts = MveeOptions { record_objective: true, ..MveeOptions::with_eps(1e-9) };
        let sol = mvee_centered_with(&pts, &opts).unwrap();
        for w in sol.stats.objective.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-10 * w[0].abs().max(1.0));
        }
        prop_assert!((sol.contact.weights.iter().sum::<f64>() - n as f64).abs() <= 1e-6);
        prop_assert!(sol.contact.points.len() <= n * (n + 1) / 2);
        let q = random::orthogonal_matrix(n, seed ^ 0xabc);
        let rotated: Vec<Point> = pts.iter().map(|p| &q * p).collect();
        let rot = mvee_centered(&rotated, 1e-9).unwrap();
        let back = q.transpose() * rot.ellipsoid.shape() * &q;
        prop_assert!((back - sol.ellipsoid.shape()).norm() <= 1e-6 * sol.ellipsoid.shape().norm().max(1.0));
        // the NNLS fit over the contact directions is at least as good as the solver's weights
        let fit = fit_weights(&sol.contact.points, 1.0).unwrap();
        prop_assert!(fit.residual() <= sol.contact.residual + 1e-12);
    }

    #[test]
    fn decomposition_scaling_and_trace(seed in 0u64..10_000, s in 0.2f64..3.0) {
        let w = dr::witness_library("dr533").unwrap();
        let d = w.decomposition;
        let scaled: Vec<f64> = d.weights().iter().map(|x| x * s).collect();
        let r = verify(d.directions(), &scaled, 1e-9).unwrap();
        prop_assert!((r.trace_deviation - (3.0 * s - 3.0).abs()).abs() < 1e-12);
        // residual of sI + sR − I lies within s·ρ of |s − 1|·√n
        prop_assert!((r.residual - (s - 1.0).abs() * 3f64.sqrt()).abs() <= s * d.residual() + 1e-12);

        // perturbed decompositions: trace gap bounded by √n·ρ
        let mut rng = random::rng(seed);
        let dirs: Vec<Point> = d.directions().iter().map(|u| u + random::gaussian_vector(&mut rng, 3) * 0.05).collect();
        let p = IdentityDecomposition::new(dirs, d.weights().to_vec()).unwrap();
        let cb = cauchy_binet_check(&p, 1).unwrap();
        prop_assert!(cb.gap.abs() <= 3f64.sqrt() * p.residual() + 1e-12);
    }

    #[test]
    fn behrend_monotone_and_idempotent(n in 2usize..=4, seed in 0u64..10_000) {
        let p = random::polytope(n, n + 4, seed);
        let once = behrend_normalize(&p, 1e-8).unwrap();
        prop_assert!(once.body.iq() >= p.iq() - 1e-9);
        let twice = behrend_normalize(&once.body, 1e-8).unwrap();
        prop_assert!((twice.body.iq() - once.body.iq()).abs() < 1e-8);
        prop_assert!(twice.map.similarity_deviation() <= 1e-5);
    }

    #[test]
    fn isominwidth_bound_and_monotone(n in 2usize..=3, seed in 0u64..10_000) {
        let p = random::polytope(n, n + 4, seed);
        let r = isominwidth_normalize(&p, 1e-8).unwrap();
        prop_assert!(r.body.iwq().unwrap() <= 1.0 + 1e-6);
        prop_assert!(r.certificate.quotient_after <= r.certificate.quotient_before + 1e-9);
    }
}

#[test]
fn min_width_is_a_lower_envelope() {
    for f in claims::builtin_fixtures() {
        let (w, _) = f.body.min_width().unwrap();
        let mut rng = random::rng(99);
        for _ in 0..1000 {
            let u = random::unit_vector(&mut rng, f.body.dim());
            assert!(w <= f.body.width(&u) + 1e-12, "{}", f.name);
        }
    }
}

#[test]
fn john_loewner_polarity_on_symmetric_fixtures() {
    for f in claims::builtin_fixtures().into_iter().filter(|f| f.body.is_symmetric(1e-9)) {
        let (john, low) = john_ellipsoid_symmetric_with(&f.body, 1e-10).unwrap();
        let n = f.body.dim();
        let prod = john.shape() * low.ellipsoid.shape();
        assert!((prod - DMatrix::identity(n, n)).norm() < 1e-6, "{}", f.name);
    }
}

#[test]
fn behrend_monotone_on_fixtures() {
    for f in claims::builtin_fixtures() {
        let r = behrend_normalize(&f.body, 1e-8).unwrap();
        assert!(r.body.iq() >= f.body.iq() - 1e-9, "{}", f.name);
        assert!(r.certificate.quotient_after >= r.certificate.quotient_before - 1e-9);
    }
}

#[test]
fn witnesses_dominate_lower_bounds_and_are_sharp() {
    for name in dr::witness_names() {
        let w = dr::witness_library(&name).unwrap();
        let (m, n) = (w.decomposition.len(), w.decomposition.dim());
        let q = DRQuery::new(m, n, n).unwrap();
        assert!(dr_lower_bound(q) <= w.value + 1e-12, "{name}");
        if name.starts_with("crosspolytope") || name.starts_with("regular_simplex") {
            for j in 1..=n {
                let (v, _) = dr::max_simplex_volume(&w.decomposition, j).unwrap();
                assert_relative_eq!(v, dr_lower_bound(DRQuery::new(m, n, j).unwrap()), epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn search_values_do_not_increase_with_m() {
    let opts = SearchOptions { restarts: 16, iters: 3000, ..SearchOptions::default() };
    let mut prev = f64::INFINITY;
    for m in 3..=6 {
        let w = dr_search(m, 3, 5, &opts).unwrap();
        assert!(w.decomposition.residual() < 1e-8);
        assert!(w.decomposition.trace_deviation() < 1e-8);
        assert!(w.value <= prev + 1e-4, "m={m}: {} after {prev}", w.value);
        prev = prev.min(w.value);
    }
}

#[test]
fn fixture_files_match_builtin_bodies() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let on_disk = claims::load_fixtures(&dir).unwrap();
    let builtin = claims::builtin_fixtures();
    assert_eq!(on_disk.len(), builtin.len());
    for f in &builtin {
        let g = on_disk.iter().find(|g| g.name == f.name).unwrap_or_else(|| panic!("missing {}", f.name));
        assert!(hausdorff(f.body.vertices(), g.body.vertices()) == 0.0, "{}", f.name);
    }
}

#[test]
fn min_width_matches_dense_sampling() {
    for (n, seed) in [(3, 11), (3, 12), (4, 13)] {
        let p = random::polytope(n, n + 5, seed);
        let (w, _) = p.min_width().unwrap();
        let mut rng = random::rng(seed);
        let sampled = (0..100_000)
            .map(|_| p.width(&random::unit_vector(&mut rng, n)))
            .fold(f64::INFINITY, f64::min);
        assert!(w <= sampled + 1e-12);
        assert!(sampled <= w * 1.05, "n={n}: {w} vs sampled {sampled}");
    }
}
