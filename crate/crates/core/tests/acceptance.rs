//! Acceptance suite: one PASS/FAIL line per criterion with its runtime.
//!
//! The process fails when a criterion outside `KNOWN_DEVIATIONS` fails, or
//! when a listed deviation unexpectedly passes.

use std::time::{Duration, Instant};

use neron_toric::arith::rational::{to_i, IVec};
use neron_toric::charts::{chart_ring, fiber_presentation};
use neron_toric::cli::{run_args, EXIT_OK};
use neron_toric::datum::Level;
use neron_toric::fixtures::{e8, hexagon, rank_two, tate};
use neron_toric::strata::{checked_stratification, component_group, component_polygon_report};
use neron_toric::verify::{run_suites, DEFAULT_CASES};
use neron_toric::voronoi::{
    is_integral, relevant_vectors, vor_complex, voronoi_polytope, IntegralityWitness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criteria expected to fail, with the reason recorded in the decisions ledger.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(
    3,
    "the Voronoi cell of E8 has vertex orbits through ω₁/2 and ω₂/3 only, so ℓ₀ = 3 rather than 30",
)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome {
        passed: true,
        detail: detail.into(),
    })
}

fn fail(detail: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome {
        passed: false,
        detail: detail.into(),
    })
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut all = vec!["ntoric", "--format", "json"];
    all.extend_from_slice(args);
    let out = run_args(all);
    if out.code != EXIT_OK {
        return Err(format!(
            "{args:?} exited {}: {}",
            out.code,
            out.stderr.trim()
        ));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn int_matrix(v: &Value) -> Vec<IVec> {
    v.as_array()
        .map(|rows| {
            rows.iter()
                .filter_map(|r| {
                    r.as_array()?
                        .iter()
                        .map(|x| match x {
                            Value::String(s) => s.parse().ok(),
                            other => other.as_i64(),
                        })
                        .collect()
                })
                .collect()
        })
        .unwrap_or_default()
}

fn closed_form(p: i64, q: i64, r: i64) -> Vec<IVec> {
    let mut v = Vec::new();
    for (a, b) in [(q + r, p + r), (q + r, -p + r), (-q + r, p + r)] {
        v.push(vec![a, b]);
        v.push(vec![-a, -b]);
    }
    v.sort();
    v.dedup();
    v
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn hexagon_level_one() -> Result<Outcome, String> {
    let doc = cli_json(&["--fixture", "hexagon", "--level", "1", "voronoi"])?;
    let mut verts = int_matrix(&doc["cell"]["vertices"]);
    verts.sort();
    let want = closed_form(1, 1, 1);
    let level = cli_json(&["--fixture", "hexagon", "integrality"])?;
    let l0 = level["minimal_level"]
        .as_str()
        .unwrap_or_default()
        .to_string();
    if verts == want && l0 == "1" {
        ok(format!("vertices {verts:?}, ℓ₀ = {l0}"))
    } else {
        fail(format!("vertices {verts:?}, ℓ₀ = {l0}"))
    }
}

fn rank_two_family() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for _ in 0..10 {
        let (p, q, r) = (
            rng.random_range(1..=4),
            rng.random_range(1..=4),
            rng.random_range(0..=3),
        );
        let cell = voronoi_polytope(&rank_two(p, q, r), Level::new(1).map_err(e)?).map_err(e)?;
        let got: Vec<IVec> = cell.vertices().iter().filter_map(|v| to_i(v)).collect();
        if got != closed_form(p, q, r) {
            bad.push((p, q, r));
        }
        seen.push((p, q, r));
    }
    if bad.is_empty() {
        ok(format!("triples {seen:?}"))
    } else {
        fail(format!("mismatch at {bad:?}"))
    }
}

fn e8_levels() -> Result<Outcome, String> {
    let datum = e8();
    let rel = relevant_vectors(&datum, Level::new(1).map_err(e)?).map_err(e)?;
    let doc = cli_json(&["--fixture", "e8", "--cap", "100", "integrality"])?;
    let l0 = doc["minimal_level"]
        .as_str()
        .unwrap_or_default()
        .to_string();
    let at15 = is_integral(&datum, Level::new(15).map_err(e)?).map_err(e)?;
    let witness15 = matches!(
        at15.witness,
        Some(IntegralityWitness::NonIntegralVertex { .. })
    );
    let at1 = is_integral(&datum, Level::new(1).map_err(e)?).map_err(e)?;
    let detail = format!(
        "{} relevant vectors; ℓ₀ = {l0} (expected 30); ℓ = 15 integral: {}; ℓ = 1 witness: {}",
        rel.len(),
        at15.integral,
        at1.witness.map(|w| w.to_string()).unwrap_or_default()
    );
    if rel.len() == 2 * 120 && l0 == "30" && !at15.integral && witness15 {
        ok(detail)
    } else {
        fail(detail)
    }
}

fn a2_delaunay() -> Result<Outcome, String> {
    let del = cli_json(&["--fixture", "hexagon", "delaunay"])?;
    let st = cli_json(&["--fixture", "hexagon", "strata", "--delaunay"])?;
    let cells = del["complex"]["cells"]
        .as_array()
        .cloned()
        .unwrap_or_default();
    let sizes: Vec<usize> = cells
        .iter()
        .map(|c| c["polytope"]["vertices"].as_array().map_or(0, |v| v.len()))
        .collect();
    let comps = st["report"]["components"].as_array().map_or(0, |c| c.len());
    let detail = format!("cells with {sizes:?} vertices, {comps} components");
    if sizes == vec![3, 3] && comps == 2 {
        ok(detail)
    } else {
        fail(detail)
    }
}

fn half_level_hexagon() -> Result<Outcome, String> {
    let datum = hexagon();
    let level = Level::half();
    let (report, checks) = checked_stratification(&datum, level).map_err(e)?;
    let polys = component_polygon_report(&datum, level).map_err(e)?;
    let shapes: Vec<(usize, usize)> = polys.iter().map(|p| (p.vertices, p.edges)).collect();
    let cell = voronoi_polytope(&datum, level).map_err(e)?;
    let mut regular = 0;
    for v in cell.vertices() {
        let v = to_i(v).ok_or("non-lattice vertex")?;
        let chart = chart_ring(&datum, level, &[v], &[0, 0]).map_err(e)?;
        if chart.semigroup.hilbert.len() == 3
            && chart.semigroup.lineality.is_empty()
            && chart.unimodular
        {
            regular += 1;
        }
    }
    let face: Vec<IVec> = cell.vertices().iter().filter_map(|v| to_i(v)).collect();
    let torus = chart_ring(&datum, level, &face, &[0, 0]).map_err(e)?;
    let torus_ok = torus.torus
        && torus.semigroup.lineality.len() == 2
        && torus.semigroup.lineality.iter().all(|l| l[0] == 0)
        && torus.semigroup.hilbert == vec![vec![1, 0, 0]];
    let detail = format!(
        "{} components {shapes:?}, {regular}/{} regular vertex charts, torus chart R[w^x; x ∈ X]: {torus_ok}",
        report.components.len(),
        cell.vertices().len()
    );
    let all_hex = shapes.iter().all(|&s| s == (6, 6));
    if report.components.len() == 3
        && all_hex
        && checks.iter().all(|c| c.passed)
        && regular == cell.vertices().len()
        && torus_ok
    {
        ok(detail)
    } else {
        fail(detail)
    }
}

fn tate_pipeline() -> Result<Outcome, String> {
    let datum = tate();
    let level = Level::new(1).map_err(e)?;
    let group = component_group(&datum).to_string();
    let (report, checks) = checked_stratification(&datum, level).map_err(e)?;
    let complex = vor_complex(&datum, level).map_err(e)?;
    let mut degree = vec![0usize; complex.faces().len()];
    for inc in complex.incidences() {
        degree[inc.face] += 1;
    }
    let cycle = complex
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.dim == 0)
        .all(|(i, _)| degree[i] == 2)
        && report.orbit_counts == vec![2, 2];
    let chart = chart_ring(&datum, level, &[vec![1]], &[0]).map_err(e)?;
    let mut gens = chart.semigroup.hilbert.clone();
    gens.push(vec![1, 0]);
    gens.sort();
    let want = vec![vec![0, -1], vec![1, 0], vec![1, 1]];
    let fiber = fiber_presentation(&chart);
    let relation =
        fiber.minimal_zero_monomials.len() == 1 && fiber.minimal_zero_monomials[0].len() == 2;
    let detail = format!(
        "group {group}, {} components in a cycle: {cycle}, chart generators m₀ with {:?}, xy = 0: {relation}",
        report.components.len(),
        chart.semigroup.hilbert
    );
    if group == "Z/2"
        && report.components.len() == 2
        && cycle
        && checks.iter().all(|c| c.passed)
        && gens == want
        && relation
    {
        ok(detail)
    } else {
        fail(detail)
    }
}

fn property_suites() -> Result<Outcome, String> {
    let start = Instant::now();
    let report = run_suites(1, DEFAULT_CASES);
    let took = start.elapsed();
    let failed: Vec<String> = report
        .suites
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.clone())
        .collect();
    let detail = format!(
        "{} suites over {} cases, failing {failed:?}",
        report.suites.len(),
        report.cases
    );
    if report.passed() && report.cases >= 200 && took < Duration::from_secs(120) {
        ok(detail)
    } else {
        fail(detail)
    }
}

fn determinism() -> Result<Outcome, String> {
    let go = || {
        run_args([
            "ntoric", "--seed", "5", "--format", "json", "verify", "--cases", "20",
        ])
    };
    let a = go();
    let b = go();
    let detail = format!(
        "{} bytes, exit codes {} and {}",
        a.stdout.len(),
        a.code,
        b.code
    );
    if a.code == EXIT_OK && a == b && !a.stdout.is_empty() {
        ok(detail)
    } else {
        fail(detail)
    }
}

type Criterion = (u32, &'static str, Duration, fn() -> Result<Outcome, String>);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            1,
            "hexagon Σ₁(0) and ℓ₀",
            Duration::from_secs(1),
            hexagon_level_one,
        ),
        (
            2,
            "rank-two closed form",
            Duration::from_secs(5),
            rank_two_family,
        ),
        (
            3,
            "E8 minimal level 30",
            Duration::from_secs(600),
            e8_levels,
        ),
        (4, "A2 Delaunay strata", Duration::from_secs(1), a2_delaunay),
        (
            5,
            "half-level hexagon strata and charts",
            Duration::from_secs(5),
            half_level_hexagon,
        ),
        (
            6,
            "Tate curve pipeline",
            Duration::from_secs(1),
            tate_pipeline,
        ),
        (
            7,
            "property suites",
            Duration::from_secs(120),
            property_suites,
        ),
        (
            8,
            "verify determinism",
            Duration::from_secs(120),
            determinism,
        ),
    ];
    let mut unexpected = 0;
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && took <= budget, o.detail),
            Err(msg) => (false, format!("error: {msg}")),
        };
        let known = KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == id);
        let status = if passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {id}: {name} [{:.2?} of {:.0?}] {detail}",
            took, budget
        );
        match (passed, known) {
            (false, Some((_, why))) => println!("     known deviation: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("     listed as a known deviation but passed");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
