//! Acceptance checks 1–13, shared by the `acceptance` test target and the
//! `verify-paper` CLI command. Each check returns one or more [`ClaimResult`]
//! lines; nothing here panics on a failed check.

use std::path::Path;
use std::time::Instant;

use nalgebra::DVector;
use rand::Rng;

use crate::bodies;
use crate::decomposition::{cauchy_binet_check, sigma_bound_check};
use crate::dr::{self, dr_lower_bound, dr_search, dr_simplex_value, DRQuery, SearchOptions};
use crate::ellipsoid::is_loewner;
use crate::error::Result;
use crate::io;
use crate::linalg::{factorial, Point};
use crate::polytope::Polytope;
use crate::positions::{
    behrend_normalize, diagonal_map, distribution_check, duality_check, greedy_simplex_bound, is_behrend,
    isominwidth_normalize, spherical_covering_check, uniqueness_check, PositionKind,
};
use crate::random;
use crate::tol;

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimResult {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

impl ClaimResult {
    fn new(id: impl Into<String>, title: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            title: title.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn error(id: &str, title: &str, e: impl std::fmt::Display) -> Self {
        Self::new(id, title, false, format!("error: {e}"))
    }

    /// `[PASS] 3 symmetric lower bound: ...`
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail
        )
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub body: Polytope,
}

/// The fixture bodies, as written to the repository's `fixtures/` directory.
pub fn builtin_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    let mut add = |name: String, body: Result<Polytope>| {
        out.push(Fixture {
            name,
            body: body.expect("fixture bodies are valid"),
        })
    };
    for n in 2..=4 {
        add(format!("cube{n}"), bodies::cube(n));
    }
    for n in 2..=5 {
        add(format!("crosspolytope{n}"), bodies::crosspolytope(n));
    }
    for n in 2..=4 {
        add(format!("regular_simplex{n}"), bodies::regular_simplex(n));
    }
    add("icosahedron".into(), bodies::icosahedron());
    add("sailing_boat_0.95".into(), bodies::sailing_boat(0.95));
    add("septagon_0.01".into(), bodies::septagon(0.01));
    add("triangle_0.2".into(), bodies::triangle(0.2));
    add(
        "diamond_2x1".into(),
        diagonal_map(&[2.0, 1.0]).and_then(|m| m.apply(&bodies::crosspolytope(2)?)),
    );
    add(
        "rectangle_3x1".into(),
        diagonal_map(&[3.0, 1.0]).and_then(|m| m.apply(&bodies::cube(2)?)),
    );
    add("random3".into(), Ok(random::polytope(3, 9, 2024)));
    add("random_symmetric3".into(), Ok(random::symmetric_polytope(3, 5, 2024)));
    out
}

/// Reads every `*.json` body in `dir`, sorted by file name.
pub fn load_fixtures(dir: &Path) -> std::result::Result<Vec<Fixture>, String> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            let body = io::body_from_json(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok(Fixture { name, body })
        })
        .collect()
}

fn behrend_fixtures(fixtures: &[Fixture]) -> Vec<&Fixture> {
    fixtures
        .iter()
        .filter(|f| is_behrend(&f.body, tol::BEHREND_RESIDUAL).is_ok_and(|c| c.is_behrend))
        .collect()
}

fn e(n: usize, i: usize) -> Point {
    DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 })
}

/// Crosspolytopes are fixed by the Behrend normalization (up to similarity).
pub fn c1() -> Vec<ClaimResult> {
    let title = "crosspolytope equality";
    let mut worst_iq: f64 = 0.0;
    let mut worst_map: f64 = 0.0;
    for n in 2..=5 {
        let r = match bodies::crosspolytope(n).and_then(|p| behrend_normalize(&p, tol::MVEE_EPS)) {
            Ok(r) => r,
            Err(err) => return vec![ClaimResult::error("1", title, err)],
        };
        worst_iq = worst_iq.max((r.body.iq() - 1.0 / factorial(n)).abs());
        worst_map = worst_map.max(r.map.similarity_deviation());
    }
    vec![ClaimResult::new(
        "1",
        title,
        worst_iq <= 1e-9 && worst_map <= 1e-6,
        format!("n=2..5: max |iq − 1/n!| = {worst_iq:.2e} (≤ 1e-9), max map deviation = {worst_map:.2e} (≤ 1e-6)"),
    )]
}

/// √(n+1)/(n!·2^{n/2}), iq of the regular simplex.
pub fn regular_simplex_iq(n: usize) -> f64 {
    ((n + 1) as f64).sqrt() / (factorial(n) * 2f64.powf(n as f64 / 2.0))
}

pub fn c2() -> Vec<ClaimResult> {
    let title = "regular simplex value";
    let mut worst: f64 = 0.0;
    let mut at3 = f64::NAN;
    for n in 2..=5 {
        let r = match bodies::regular_simplex(n).and_then(|p| behrend_normalize(&p, tol::MVEE_EPS)) {
            Ok(r) => r,
            Err(err) => return vec![ClaimResult::error("2", title, err)],
        };
        worst = worst.max((r.body.iq() - regular_simplex_iq(n)).abs());
        if n == 3 {
            at3 = r.body.iq();
        }
    }
    vec![ClaimResult::new(
        "2",
        title,
        worst <= 1e-6,
        format!("n=2..5: max deviation {worst:.2e} (≤ 1e-6); n=3 iq = {}", io::fmt12(at3)),
    )]
}

/// The seeded random suite: 100 symmetric and 100 general polytopes per n ∈ {2, 3, 4}.
pub fn random_suite(n: usize, symmetric: bool) -> Vec<Polytope> {
    (0..100u64)
        .map(|s| {
            let seed = 1000 * n as u64 + s;
            let extra = (s % 5) as usize;
            if symmetric {
                random::symmetric_polytope(n, n + 1 + extra, seed)
            } else {
                random::polytope(n, n + 3 + extra, seed)
            }
        })
        .collect()
}

/// Minimum normalized iq over a suite.
fn min_normalized_iq(suite: &[Polytope]) -> Result<f64> {
    let mut lo = f64::INFINITY;
    for p in suite {
        lo = lo.min(behrend_normalize(p, tol::MVEE_EPS)?.body.iq());
    }
    Ok(lo)
}

pub fn c3() -> Vec<ClaimResult> {
    let title = "symmetric lower bound";
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        match min_normalized_iq(&random_suite(n, true)) {
            Ok(lo) => {
                let bound = 1.0 / factorial(n);
                ok &= lo >= bound - 1e-6;
                parts.push(format!("n={n}: min iq {} ≥ {}", io::fmt12(lo), io::fmt12(bound)));
            }
            Err(err) => return vec![ClaimResult::error("3", title, err)],
        }
    }
    vec![ClaimResult::new("3", title, ok, format!("100 bodies per n; {}", parts.join("; ")))]
}

pub fn c4() -> Vec<ClaimResult> {
    let title = "asymptotic bound";
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        let bound = dr_lower_bound(DRQuery::new(n * (n + 1) / 2, n, n).expect("valid query"));
        for symmetric in [true, false] {
            match min_normalized_iq(&random_suite(n, symmetric)) {
                Ok(lo) => {
                    ok &= lo >= bound - 1e-6;
                    parts.push(format!(
                        "n={n} {}: min iq {} ≥ {}",
                        if symmetric { "sym" } else { "gen" },
                        io::fmt12(lo),
                        io::fmt12(bound)
                    ));
                }
                Err(err) => return vec![ClaimResult::error("4", title, err)],
            }
        }
    }
    vec![ClaimResult::new("4", title, ok, parts.join("; "))]
}

pub fn c5(fixtures: &[Fixture]) -> Vec<ClaimResult> {
    let mut out = Vec::new();

    let mut mismatches = Vec::new();
    let mut worst_residual: f64 = 0.0;
    for f in fixtures {
        let direct = is_behrend(&f.body, tol::BEHREND_RESIDUAL);
        let via_diff = f.body.difference_body().and_then(|d| is_behrend(&d, tol::BEHREND_RESIDUAL));
        match (direct, via_diff) {
            (Ok(a), Ok(b)) if a.is_behrend == b.is_behrend => {}
            (Ok(a), Ok(b)) => mismatches.push(format!("{} ({} vs {})", f.name, a.is_behrend, b.is_behrend)),
            (Err(err), _) | (_, Err(err)) => mismatches.push(format!("{}: {err}", f.name)),
        }
        match behrend_normalize(&f.body, tol::MVEE_EPS) {
            Ok(r) => worst_residual = worst_residual.max(r.certificate.residual),
            Err(err) => mismatches.push(format!("{}: {err}", f.name)),
        }
    }
    out.push(ClaimResult::new(
        "5a",
        "equivalence on fixtures",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("is_behrend(P) = is_behrend(P − P) on {} fixtures", fixtures.len())
        } else {
            format!("mismatch: {}", mismatches.join(", "))
        },
    ));
    out.push(ClaimResult::new(
        "5b",
        "behrend certificate residuals",
        worst_residual <= 1e-4,
        format!("max residual {worst_residual:.2e} (≤ 1e-4)"),
    ));

    out.push(match bodies::sailing_boat(0.95) {
        Ok(boat) => match (is_loewner(&boat, 1e-6), is_behrend(&boat, tol::BEHREND_RESIDUAL)) {
            (Ok(l), Ok(b)) => ClaimResult::new(
                "5c",
                "sailing boat r=0.95",
                l.is_loewner && !b.is_behrend,
                format!("Löwner {}, Behrend {} (fit residual {:.3e})", l.is_loewner, b.is_behrend, b.residual),
            ),
            (Err(err), _) | (_, Err(err)) => ClaimResult::error("5c", "sailing boat r=0.95", err),
        },
        Err(err) => ClaimResult::error("5c", "sailing boat r=0.95", err),
    });

    for (id, eps) in [("5d", 0.05), ("5e", 0.01)] {
        let name = format!("septagon ε={eps}");
        out.push(match bodies::septagon(eps) {
            Ok(s) => match (is_loewner(&s, 1e-6), is_behrend(&s, tol::BEHREND_RESIDUAL)) {
                (Ok(l), Ok(b)) => {
                    let (d, pairs) = s.diameter();
                    ClaimResult::new(
                        id,
                        name,
                        !l.is_loewner && b.is_behrend,
                        format!(
                            "Löwner {}, Behrend {} (fit residual {:.3e}); diameter {} over {} vertex pair(s), 2(1−ε) = {}",
                            l.is_loewner,
                            b.is_behrend,
                            b.residual,
                            io::fmt12(d),
                            pairs.len(),
                            io::fmt12(2.0 * (1.0 - eps))
                        ),
                    )
                }
                (Err(err), _) | (_, Err(err)) => ClaimResult::error(id, &name, err),
            },
            Err(err) => ClaimResult::error(id, &name, err),
        });
    }
    out
}

pub fn c6(fixtures: &[Fixture]) -> Vec<ClaimResult> {
    let title = "distribution lemma";
    let mut worst_cube: f64 = 0.0;
    for n in 2..=4 {
        let cube = match bodies::cube(n) {
            Ok(c) => c,
            Err(err) => return vec![ClaimResult::error("6", title, err)],
        };
        for i in 1..n {
            let basis: Vec<Point> = (0..i).map(|k| e(n, k)).collect();
            match distribution_check(&cube, &basis) {
                Ok(r) => worst_cube = worst_cube.max((r.min - r.bound).abs()).max((r.max - r.bound).abs()),
                Err(err) => return vec![ClaimResult::error("6", title, err)],
            }
        }
    }
    let mut failures = Vec::new();
    let mut worst_cover: f64 = f64::NEG_INFINITY;
    let behrend = behrend_fixtures(fixtures);
    for (k, f) in behrend.iter().enumerate() {
        let n = f.body.dim();
        let mut rng = random::rng(600 + k as u64);
        for _ in 0..100 {
            let i = if n > 1 { rng.random_range(1..n) } else { 1 };
            let basis = random::subspace(&mut rng, n, i);
            match distribution_check(&f.body, &basis) {
                Ok(r) if r.holds(1e-6) => {}
                Ok(r) => {
                    failures.push(format!("{} (min {:.6}, max {:.6}, bound {:.6})", f.name, r.min, r.max, r.bound));
                    break;
                }
                Err(err) => {
                    failures.push(format!("{}: {err}", f.name));
                    break;
                }
            }
        }
        match spherical_covering_check(&f.body, 10_000, 6000 + k as u64) {
            Ok((worst, bound)) => {
                worst_cover = worst_cover.max(worst - bound);
                if worst > bound + 1e-9 {
                    failures.push(format!("{} covering ({worst:.6} > {bound:.6})", f.name));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", f.name)),
        }
    }
    vec![ClaimResult::new(
        "6",
        title,
        worst_cube <= 1e-9 && failures.is_empty(),
        format!(
            "cube angle error {worst_cube:.2e} (≤ 1e-9); {} Behrend fixtures × 100 subspaces and 10⁴-sample covering (max excess {worst_cover:.2e}){}",
            behrend.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {}", failures.join(", "))
            }
        ),
    )]
}

pub fn c7(fixtures: &[Fixture]) -> Vec<ClaimResult> {
    let title = "greedy simplex bound";
    let mut failures = Vec::new();
    let behrend = behrend_fixtures(fixtures);
    let mut min_margin = f64::INFINITY;
    for f in &behrend {
        match greedy_simplex_bound(&f.body) {
            Ok(g) => {
                min_margin = min_margin.min(g.value - g.bound);
                if !g.holds() {
                    failures.push(format!("{} (value {:.6}, bound {:.6}, iq {:.6})", f.name, g.value, g.bound, g.iq));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", f.name)),
        }
    }
    vec![ClaimResult::new(
        "7",
        title,
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} Behrend fixtures; min(value − bound) = {min_margin:.4e}", behrend.len())
        } else {
            format!("failures: {}", failures.join(", "))
        },
    )]
}

pub fn c8() -> Vec<ClaimResult> {
    let title = "DR formulas";
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for j in 1..=n {
            let square = dr_lower_bound(DRQuery::new(n, n, j).expect("valid"));
            let simplex = dr_lower_bound(DRQuery::new(n + 1, n, j).expect("valid"));
            worst = worst
                .max((square - 1.0 / factorial(j)).abs())
                .max((simplex - dr_simplex_value(n, j)).abs());
        }
    }
    let mut sharp = Vec::new();
    let mut ok = worst <= 1e-12;
    for (name, m, n) in [("regular_simplex2", 3, 2), ("icosahedron_lines", 6, 3)] {
        let res = dr::witness_library(name).and_then(|w| {
            let (v, _) = dr::max_simplex_volume(&w.decomposition, 2)?;
            let eq = dr::equiangular_check(w.decomposition.directions())?;
            Ok((v, eq))
        });
        match res {
            Ok((v, eq)) => {
                let bound = dr_lower_bound(DRQuery::new(m, n, 2).expect("valid"));
                let cos_ok = eq.common_cos().is_some_and(|c| (c - eq.target).abs() <= 1e-12);
                ok &= (v - bound).abs() <= 1e-12 && cos_ok;
                sharp.push(format!(
                    "({m},{n},2): value {} vs bound {}, |cos| {}",
                    io::fmt12(v),
                    io::fmt12(bound),
                    eq.common_cos().map(io::fmt12).unwrap_or_else(|| "mixed".into())
                ));
            }
            Err(err) => return vec![ClaimResult::error("8", title, err)],
        }
    }
    vec![ClaimResult::new(
        "8",
        title,
        ok,
        format!("closed forms max error {worst:.2e} (≤ 1e-12); {}", sharp.join("; ")),
    )]
}

pub fn c9() -> Vec<ClaimResult> {
    let title = "Cauchy–Binet identity";
    let mut worst: f64 = 0.0;
    let names = dr::witness_names();
    for name in &names {
        let w = match dr::witness_library(name) {
            Ok(w) => w,
            Err(err) => return vec![ClaimResult::error("9", title, err)],
        };
        for i in 1..=w.decomposition.dim() {
            match cauchy_binet_check(&w.decomposition, i) {
                Ok(cb) => worst = worst.max(cb.gap.abs()),
                Err(err) => return vec![ClaimResult::error("9", title, err)],
            }
        }
    }
    vec![ClaimResult::new(
        "9",
        title,
        worst <= 1e-9,
        format!("{} witnesses, all i ≤ n: max gap {worst:.2e} (≤ 1e-9)", names.len()),
    )]
}

pub fn c10() -> Vec<ClaimResult> {
    let title = "symmetric-polynomial bound";
    let mut rng = random::rng(10);
    let mut violations = 0;
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let m = rng.random_range(1..=10usize);
        let d = rng.random_range(1..=m);
        let weights: Vec<f64> = (0..m)
            .map(|_| if rng.random::<f64>() < 0.1 { 0.0 } else { rng.random::<f64>() * 3.0 })
            .collect();
        match sigma_bound_check(&weights, d) {
            Ok(s) => {
                if s.bound > 0.0 {
                    worst = worst.max(s.sigma / s.bound - 1.0);
                }
                if !s.holds {
                    violations += 1;
                }
            }
            Err(err) => return vec![ClaimResult::error("10", title, err)],
        }
    }
    vec![ClaimResult::new(
        "10",
        title,
        violations == 0,
        format!("10⁴ weight vectors: {violations} violations, max σ/bound − 1 = {worst:.3e}"),
    )]
}

pub fn c11() -> Vec<ClaimResult> {
    let title = "DR search reproduction";
    let opts = SearchOptions::default();
    let mut parts = Vec::new();
    let mut ok = true;
    let start = Instant::now();
    for (m, target) in [(5usize, 0.125), (6, 1.0 / (6.0 * 2f64.sqrt()))] {
        match dr_search(m, 3, 1, &opts) {
            Ok(w) => {
                let bound = dr_lower_bound(DRQuery::new(m, 3, 3).expect("valid"));
                let good = (w.value - target).abs() <= 1e-3
                    && w.value >= bound
                    && w.decomposition.residual() < 1e-8;
                ok &= good;
                let conj = if m == 6 {
                    format!(", conjectured {}", io::fmt12(dr::conjectured_value(3)))
                } else {
                    String::new()
                };
                parts.push(format!(
                    "m={m}: value {} (target {}, bound {}{conj}), residual {:.1e}",
                    io::fmt12(w.value),
                    io::fmt12(target),
                    io::fmt12(bound),
                    w.decomposition.residual()
                ));
            }
            Err(err) => return vec![ClaimResult::error("11", title, err)],
        }
    }
    vec![ClaimResult::new(
        "11",
        title,
        ok,
        format!(
            "{} restarts × {} iters: {}; {:.1}s",
            opts.restarts,
            opts.iters,
            parts.join("; "),
            start.elapsed().as_secs_f64()
        ),
    )]
}

pub fn c12(fixtures: &[Fixture]) -> Vec<ClaimResult> {
    let title = "isominwidth";
    let mut failures = Vec::new();
    let mut cube_err: f64 = 0.0;
    for n in 2..=4 {
        match bodies::cube(n).and_then(|c| isominwidth_normalize(&c, tol::MVEE_EPS)).and_then(|r| r.body.iwq()) {
            Ok(v) => cube_err = cube_err.max((v - 1.0).abs()),
            Err(err) => failures.push(format!("cube{n}: {err}")),
        }
    }
    let mut max_iwq: f64 = 0.0;
    let mut count = 0;
    let suite: Vec<(String, Polytope)> = fixtures
        .iter()
        .map(|f| (f.name.clone(), f.body.clone()))
        .chain((2..=3).flat_map(|n| {
            random_suite(n, false)
                .into_iter()
                .enumerate()
                .map(move |(k, p)| (format!("random{n}_{k}"), p))
        }))
        .collect();
    for (name, p) in &suite {
        match isominwidth_normalize(p, tol::MVEE_EPS).and_then(|r| r.body.iwq()) {
            Ok(v) => {
                count += 1;
                max_iwq = max_iwq.max(v);
                if v > 1.0 + 1e-6 {
                    failures.push(format!("{name}: iwq {v:.9}"));
                }
            }
            Err(err) => failures.push(format!("{name}: {err}")),
        }
    }
    let tri = bodies::regular_simplex(2).and_then(|t| isominwidth_normalize(&t, tol::MVEE_EPS)).and_then(|r| r.body.iwq());
    let tri_err = match tri {
        Ok(v) => (v - 1.0 / 3f64.sqrt()).abs(),
        Err(err) => {
            failures.push(format!("triangle: {err}"));
            f64::INFINITY
        }
    };
    let mut duality_err: f64 = 0.0;
    let mut nsym = 0;
    for f in fixtures.iter().filter(|f| f.body.is_symmetric(1e-9)) {
        nsym += 1;
        match duality_check(&f.body) {
            Ok(v) => duality_err = duality_err.max((v - 4.0).abs()),
            Err(err) => failures.push(format!("{} duality: {err}", f.name)),
        }
    }
    let ok = failures.is_empty() && cube_err <= 1e-9 && tri_err <= 1e-9 && duality_err <= 1e-5;
    vec![ClaimResult::new(
        "12",
        title,
        ok,
        format!(
            "cube |iwq − 1| {cube_err:.1e}; max iwq {} over {count} bodies (≤ 1 + 1e-6); triangle |iwq − 1/√3| {tri_err:.1e}; duality max |w·D° − 4| {duality_err:.1e} on {nsym} symmetric fixtures{}",
            io::fmt12(max_iwq),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {}", failures.join(", "))
            }
        ),
    )]
}

pub fn c13() -> Vec<ClaimResult> {
    let title = "uniqueness";
    let seeds: Vec<u64> = (1..=10).collect();
    let bodies: Vec<(&str, Result<Polytope>)> = vec![
        ("regular_simplex3", bodies::regular_simplex(3)),
        ("crosspolytope3", bodies::crosspolytope(3)),
        ("random3", Ok(random::polytope(3, 9, 2024))),
        ("random2", Ok(random::polytope(2, 7, 77))),
    ];
    let mut worst = [0.0f64; 2];
    for (name, body) in &bodies {
        let body = match body {
            Ok(b) => b,
            Err(err) => return vec![ClaimResult::error("13", title, format!("{name}: {err}"))],
        };
        for (k, kind) in [PositionKind::Behrend, PositionKind::Isominwidth].into_iter().enumerate() {
            match uniqueness_check(body, &seeds, kind) {
                Ok(d) => worst[k] = worst[k].max(d),
                Err(err) => return vec![ClaimResult::error("13", title, format!("{name}: {err}"))],
            }
        }
    }
    vec![ClaimResult::new(
        "13",
        title,
        worst[0] <= 1e-5 && worst[1] <= 1e-5,
        format!(
            "{} bodies × 10 rotations: Behrend deviation {:.1e}, isominwidth deviation {:.1e} (≤ 1e-5)",
            bodies.len(),
            worst[0],
            worst[1]
        ),
    )]
}

/// Runs checks 1–13 in order.
pub fn run_all(fixtures: &[Fixture]) -> Vec<ClaimResult> {
    let mut out = Vec::new();
    out.extend(c1());
    out.extend(c2());
    out.extend(c3());
    out.extend(c4());
    out.extend(c5(fixtures));
    out.extend(c6(fixtures));
    out.extend(c7(fixtures));
    out.extend(c8());
    out.extend(c9());
    out.extend(c10());
    out.extend(c11());
    out.extend(c12(fixtures));
    out.extend(c13());
    out
}
