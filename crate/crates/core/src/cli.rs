//! Command-line front end: datum ingestion, the subcommands over every
//! module, JSON, SVG and text emission, and exit codes.
//!
//! Exit codes are `0` on success, `2` for bad input, `3` when the Voronoi
//! polytope is not integral (or no integral level exists below the search
//! cap), `4` when a dimension or size cap is exceeded and `5` when a
//! verification fails.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::rational::{fmt_ivec, fmt_q, fmt_qvec, to_i, IVec};
use crate::charts::{chart_generators, chart_ring, fiber_presentation, iadic_bound, MonomialChart};
use crate::datum::{FcDatum, Level, Limits};
use crate::error::{Error, Result};
use crate::fan::{build_fan, check_fan_over_s, mumford_fan, separation_membership, sigma_star};
use crate::io::{
    complex_json, complex_svg, cone_json, document, fan_json, level_from, load_datum, parse_face,
    parse_ivec, parse_qvec, polytope_json, qvec_json,
};
use crate::report::Check;
use crate::strata::{
    checked_stratification, component_group, component_polygon_report, delaunay_polygon_report,
    delaunay_stratification, ComponentPolygon, StrataReport,
};
use crate::voronoi::{
    delaunay_complex, is_integral, minimal_level, relevant_vectors, vor_complex, voronoi_polytope,
};

/// Success.
pub const EXIT_OK: i32 = 0;
/// Malformed or invalid input.
pub const EXIT_BAD_INPUT: i32 = 2;
/// Not integral at the requested level, or no integral level below the cap.
pub const EXIT_NOT_INTEGRAL: i32 = 3;
/// A dimension or enumeration cap was exceeded.
pub const EXIT_CAP_EXCEEDED: i32 = 4;
/// A verification suite or consistency check failed.
pub const EXIT_VERIFICATION: i32 = 5;

/// Radius, in lattice steps, of the window drawn by the SVG output.
pub const SVG_RADIUS: i64 = 2;

/// Output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable summary.
    Text,
    /// A versioned JSON document.
    Json,
    /// An SVG drawing, for rank two only.
    Svg,
}

/// Built-in data, usable instead of `--input`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// `B = ((2, -1), (-1, 2))`.
    Hexagon,
    /// `g = 1`, `B = (2)`.
    Tate,
    /// The `E_8` root lattice.
    E8,
}

/// The command line.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "ntoric",
    version,
    about = "Voronoi, fan, chart and stratification data of degeneration data"
)]
pub struct RunConfig {
    /// What to compute.
    #[command(subcommand)]
    pub command: Command,
    /// Datum file (JSON).
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,
    /// Built-in datum used when no input file is given.
    #[arg(long, global = true, value_enum)]
    pub fixture: Option<Fixture>,
    /// The level ℓ; with `--half-level` the level is half of this value.
    #[arg(long, global = true, default_value_t = 1)]
    pub level: u64,
    /// Read `--level` as twice the level, allowing half-integral levels.
    #[arg(long, global = true)]
    pub half_level: bool,
    /// Largest level searched by `integrality`.
    #[arg(long, global = true, default_value_t = 100)]
    pub cap: u64,
    /// Largest ambient dimension of the polyhedral engine.
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Largest dimension for vertex enumeration without `--allow-high-dim`.
    #[arg(long, global = true)]
    pub vertex_dim_cap: Option<usize>,
    /// Largest cone dimension for Hilbert bases.
    #[arg(long, global = true)]
    pub hilbert_dim_cap: Option<usize>,
    /// Allow vertex enumeration above the vertex dimension cap.
    #[arg(long, global = true)]
    pub allow_high_dim: bool,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed of the property suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

/// Subcommands.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// The Voronoi polytope `Σ_ℓ(0)` and the complex `Vor_ℓ`.
    Voronoi,
    /// The Delaunay decomposition of `X_ℝ` for `B`.
    Delaunay,
    /// The fan over `S` built from `Vor_ℓ`, with its defining clauses checked.
    Fan {
        /// Build the fan `Fan(ξ)` from the inequalities of `A` instead (principal data).
        #[arg(long)]
        mumford: bool,
    },
    /// Chart semigroups at faces of `Vor_ℓ`.
    Charts {
        /// A face given by its vertices, as `"x,y;x,y"`; default: every vertex of `Σ_ℓ(0)` and its center.
        #[arg(long)]
        face: Option<String>,
        /// A base point `α ∈ Σ_ℓ` for the generating set of `A_{ℓ,α,u}`.
        #[arg(long)]
        point: Option<String>,
        /// The shift `u ∈ X^∨`; default zero.
        #[arg(long)]
        u: Option<String>,
        /// A point `x` at which to evaluate the `I`-adic bound (needs `--point`).
        #[arg(long)]
        iadic: Option<String>,
    },
    /// Orbit stratification of the closed fiber.
    Strata {
        /// Stratify by the Delaunay decomposition instead of `Vor_ℓ`.
        #[arg(long)]
        delaunay: bool,
    },
    /// The component group `X^∨/β(Y)`.
    ComponentGroup,
    /// The smallest integral level up to `--cap`, or the test at `--at`.
    Integrality {
        /// Test this integral level only.
        #[arg(long)]
        at: Option<u64>,
    },
    /// The polytope `Σ*_ℓ` and optional membership in its multiples.
    SigmaStar {
        /// A rational point `"p/q,..."` to test.
        #[arg(long)]
        member: Option<String>,
        /// The multiple `n` of `Σ*_ℓ` used with `--member`.
        #[arg(long, default_value_t = 1)]
        times: u64,
    },
    /// Seeded property suites over random data.
    Verify {
        /// Number of random data.
        #[arg(long, default_value_t = crate::verify::DEFAULT_CASES)]
        cases: usize,
    },
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// The process exit code.
    pub code: i32,
    /// Text for standard output (empty when written to `--output`).
    pub stdout: String,
    /// Text for standard error.
    pub stderr: String,
}

/// The exit code of an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotIntegral { .. }
        | Error::NotFoundBelowCap { .. }
        | Error::NonIntegralValuation(_) => EXIT_NOT_INTEGRAL,
        Error::DimensionCap { .. } | Error::TooLarge(_) => EXIT_CAP_EXCEEDED,
        Error::Internal(_) => EXIT_VERIFICATION,
        _ => EXIT_BAD_INPUT,
    }
}

impl RunConfig {
    /// The size limits after applying the overrides.
    pub fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(c) = self.dim_cap {
            l.dim_cap = c;
        }
        if let Some(c) = self.vertex_dim_cap {
            l.vertex_dim_cap = c;
        }
        if let Some(c) = self.hilbert_dim_cap {
            l.hilbert_dim_cap = c;
        }
        l.allow_high_dim_vertices = self.allow_high_dim;
        l
    }

    /// The datum named by `--input` or `--fixture`.
    pub fn datum(&self) -> Result<FcDatum> {
        let d = match (&self.input, self.fixture) {
            (Some(p), None) => load_datum(p)?,
            (None, Some(Fixture::Hexagon)) => crate::fixtures::hexagon(),
            (None, Some(Fixture::Tate)) => crate::fixtures::tate(),
            (None, Some(Fixture::E8)) => crate::fixtures::e8(),
            (Some(_), Some(_)) => {
                return Err(Error::parse(
                    "--fixture",
                    "give either --input or --fixture, not both",
                ))
            }
            (None, None) => {
                return Err(Error::parse(
                    "--input",
                    "a datum file or --fixture is required",
                ))
            }
        };
        Ok(d.with_limits(self.limits()))
    }

    /// The level from `--level` and `--half-level`, checked against the datum.
    pub fn level_for(&self, datum: &FcDatum) -> Result<Level> {
        let level = level_from(self.level, self.half_level)?;
        datum.check_level(level)?;
        Ok(level)
    }
}

/// Runs one invocation; the output is written to `--output` when given.
pub fn run(config: &RunConfig) -> Outcome {
    let (code, body) = match dispatch(config) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    match &config.output {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_BAD_INPUT,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}

/// Parses `args` (including the program name) and runs; parse errors give exit code `2`.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(c) => run(&c),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_BAD_INPUT
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_svg(what: &str) -> Error {
    Error::parse(
        "--format",
        format!("svg output is only available for voronoi and delaunay, not {what}"),
    )
}

fn checks_code(checks: &[Check]) -> i32 {
    if crate::report::all_passed(checks) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

fn checks_text(out: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = writeln!(out, "{c}");
    }
}

fn dispatch(config: &RunConfig) -> Result<(i32, String)> {
    if let Command::Verify { cases } = &config.command {
        return verify(config, *cases);
    }
    let datum = config.datum()?;
    match &config.command {
        Command::Voronoi => voronoi(config, &datum),
        Command::Delaunay => delaunay(config, &datum),
        Command::Fan { mumford } => fan(config, &datum, *mumford),
        Command::Charts {
            face,
            point,
            u,
            iadic,
        } => charts(config, &datum, face, point, u, iadic),
        Command::Strata { delaunay } => strata(config, &datum, *delaunay),
        Command::ComponentGroup => component(config, &datum),
        Command::Integrality { at } => integrality(config, &datum, *at),
        Command::SigmaStar { member, times } => star(config, &datum, member, *times),
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn voronoi(config: &RunConfig, datum: &FcDatum) -> Result<(i32, String)> {
    let level = config.level_for(datum)?;
    let test = is_integral(datum, level)?;
    if !test.integral {
        let witness = test.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::NotIntegral {
            level: level.to_string(),
            witness,
        });
    }
    let cell = voronoi_polytope(datum, level)?;
    let complex = vor_complex(datum, level)?;
    let text = match config.format {
        Format::Svg => complex_svg(datum, &complex, SVG_RADIUS)?,
        Format::Json => pretty(&document(
            "voronoi",
            json!({
                "level": level,
                "relevant_vectors": relevant_vectors(datum, level)?,
                "cell": polytope_json(&cell),
                "complex": complex_json(&complex),
            }),
        )),
        Format::Text => {
            let mut out = format!(
                "Σ_{level}(0): {} vertices, f-vector {:?}\n",
                cell.vertices().len(),
                cell.f_vector()
            );
            for v in cell.vertices() {
                let _ = writeln!(out, "  {}", fmt_qvec(v));
            }
            let _ = writeln!(
                out,
                "face classes mod translations: {:?}",
                complex.counts_mod_translation()
            );
            let _ = writeln!(
                out,
                "orbits mod X^∨/β(Y): {:?}",
                complex.counts_mod_quotient()
            );
            out
        }
    };
    Ok((EXIT_OK, text))
}

fn delaunay(config: &RunConfig, datum: &FcDatum) -> Result<(i32, String)> {
    let complex = delaunay_complex(datum)?;
    let text = match config.format {
        Format::Svg => complex_svg(datum, &complex, SVG_RADIUS)?,
        Format::Json => pretty(&document(
            "delaunay",
            json!({ "complex": complex_json(&complex) }),
        )),
        Format::Text => {
            let mut out = format!("{} maximal cells mod X\n", complex.cells().len());
            for (i, c) in complex.cells().iter().enumerate() {
                let verts: Vec<String> =
                    c.polytope.vertices().iter().map(|v| fmt_qvec(v)).collect();
                let _ = writeln!(
                    out,
                    "  cell {i}: {} vertices {}",
                    verts.len(),
                    verts.join(" ")
                );
            }
            let _ = writeln!(
                out,
                "face classes mod X: {:?}",
                complex.counts_mod_translation()
            );
            out
        }
    };
    Ok((EXIT_OK, text))
}

fn fan(config: &RunConfig, datum: &FcDatum, mumford: bool) -> Result<(i32, String)> {
    if config.format == Format::Svg {
        return Err(no_svg("fan"));
    }
    if mumford {
        let m = mumford_fan(datum)?;
        let check = check_fan_over_s(&m.fan)?;
        let text = match config.format {
            Format::Json => pretty(&document(
                "mumford-fan",
                json!({
                    "summary": m.summary(),
                    "cut": polytope_json(&m.cut),
                    "vertex_classes": m.vertex_classes.iter().map(|v| qvec_json(v)).collect::<Vec<_>>(),
                    "fan": fan_json(&m.fan),
                    "checks": check.checks,
                }),
            )),
            _ => {
                let s = m.summary();
                let mut out = format!(
                    "Fan(ξ): {} maximal cut cells mod β(X), {} cut vertices, {} component classes\n",
                    s.maximal_cells_mod_translation, s.cut_vertices, s.components
                );
                checks_text(&mut out, &check.checks);
                out
            }
        };
        return Ok((checks_code(&check.checks), text));
    }
    let level = config.level_for(datum)?;
    let fan = build_fan(datum, level)?;
    let check = check_fan_over_s(&fan)?;
    let text = match config.format {
        Format::Json => pretty(&document(
            "fan",
            json!({"level": level, "fan": fan_json(&fan), "clauses": check}),
        )),
        _ => {
            let mut out = format!(
                "fan over S at level {level}: {} maximal cone classes, {} cone classes\n",
                fan.maximal().len(),
                fan.cones().len()
            );
            checks_text(&mut out, &check.checks);
            out
        }
    };
    Ok((checks_code(&check.checks), text))
}

fn chart_json(chart: &MonomialChart) -> Value {
    json!({
        "face": chart.face,
        "face_dim": chart.face_dim,
        "u": chart.u,
        "cone": cone_json(&chart.cone),
        "weight_cone": cone_json(&chart.weight_cone),
        "semigroup": chart.semigroup,
        "torus": chart.torus,
        "unimodular": chart.unimodular,
        "well_defined": chart.well_defined,
        "fiber": fiber_presentation(chart),
    })
}

fn chart_text(out: &mut String, chart: &MonomialChart) {
    let face: Vec<String> = chart.face.iter().map(|v| fmt_ivec(v)).collect();
    let _ = writeln!(
        out,
        "chart at {} (dim {}), u = {}{}",
        face.join(" "),
        chart.face_dim,
        fmt_ivec(&chart.u),
        if chart.torus { ", torus" } else { "" }
    );
    let hb: Vec<String> = chart
        .semigroup
        .hilbert
        .iter()
        .map(|v| fmt_ivec(v))
        .collect();
    let lin: Vec<String> = chart
        .semigroup
        .lineality
        .iter()
        .map(|v| fmt_ivec(v))
        .collect();
    let _ = writeln!(out, "  Hilbert basis: {}", hb.join(" "));
    if !lin.is_empty() {
        let _ = writeln!(out, "  units: ±{}", lin.join(" ±"));
    }
    let _ = writeln!(
        out,
        "  unimodular: {}, independent of the representative: {}",
        chart.unimodular, chart.well_defined
    );
    let fiber = fiber_presentation(chart);
    for m in &fiber.minimal_zero_monomials {
        let factors: Vec<String> = m.iter().map(|&i| fmt_ivec(&fiber.generators[i])).collect();
        let _ = writeln!(out, "  fiber relation: {} = 0", factors.join("·"));
    }
}

fn default_faces(datum: &FcDatum, level: Level) -> Result<Vec<Vec<IVec>>> {
    let cell = voronoi_polytope(datum, level)?;
    let mut faces: Vec<Vec<IVec>> = Vec::new();
    for v in cell.vertices() {
        let iv = to_i(v)
            .ok_or_else(|| Error::Internal("integral cell with a fractional vertex".into()))?;
        faces.push(vec![iv]);
    }
    faces.push(
        cell.vertices()
            .iter()
            .map(|v| {
                to_i(v)
                    .ok_or_else(|| Error::Internal("integral cell with a fractional vertex".into()))
            })
            .collect::<Result<_>>()?,
    );
    Ok(faces)
}

fn charts(
    config: &RunConfig,
    datum: &FcDatum,
    face: &Option<String>,
    point: &Option<String>,
    u: &Option<String>,
    iadic: &Option<String>,
) -> Result<(i32, String)> {
    if config.format == Format::Svg {
        return Err(no_svg("charts"));
    }
    let level = config.level_for(datum)?;
    let g = datum.rank();
    let u = match u {
        Some(s) => parse_ivec(s, "--u")?,
        None => vec![0; g],
    };
    if u.len() != g {
        return Err(Error::parse("--u", format!("expected {g} entries")));
    }
    if let Some(p) = point {
        let alpha = parse_ivec(p, "--point")?;
        if alpha.len() != g {
            return Err(Error::parse("--point", format!("expected {g} entries")));
        }
        let gens = chart_generators(datum, level, &alpha, &u)?;
        let bound = match iadic {
            Some(x) => {
                let x = parse_ivec(x, "--iadic")?;
                if x.len() != g {
                    return Err(Error::parse("--iadic", format!("expected {g} entries")));
                }
                Some(iadic_bound(datum, level, &alpha, &u, &x)?)
            }
            None => None,
        };
        let text = match config.format {
            Format::Json => pretty(&document(
                "chart-generators",
                json!({"level": level, "generators": gens, "iadic": bound}),
            )),
            _ => {
                let mut out = format!(
                    "A_{{{level},{},{}}}: M = {}, |Δ| = {}, {} generators\n",
                    fmt_ivec(&alpha),
                    fmt_ivec(&u),
                    fmt_q(&gens.m),
                    gens.delta.len(),
                    gens.weights.len()
                );
                if let Some(b) = &bound {
                    let _ = writeln!(
                        out,
                        "M* = {}, C(x) = {}, t = {}",
                        fmt_q(&b.m_star),
                        fmt_q(&b.c_x),
                        b.t
                    );
                }
                out
            }
        };
        return Ok((EXIT_OK, text));
    }
    if iadic.is_some() {
        return Err(Error::parse("--iadic", "needs --point"));
    }
    let faces = match face {
        Some(f) => vec![parse_face(f, "--face")?],
        None => default_faces(datum, level)?,
    };
    let mut charts = Vec::new();
    for f in &faces {
        if f.iter().any(|v| v.len() != g) {
            return Err(Error::parse("--face", format!("vertices need {g} entries")));
        }
        charts.push(chart_ring(datum, level, f, &u)?);
    }
    let text = match config.format {
        Format::Json => pretty(&document(
            "charts",
            json!({"level": level, "charts": charts.iter().map(chart_json).collect::<Vec<_>>()}),
        )),
        _ => {
            let mut out = String::new();
            for c in &charts {
                chart_text(&mut out, c);
            }
            out
        }
    };
    Ok((EXIT_OK, text))
}

fn polygon_text(out: &mut String, polys: &[ComponentPolygon]) {
    for p in polys {
        let _ = writeln!(
            out,
            "  component {}: {} vertices, {} edges; {}",
            p.label.join(","),
            p.vertices,
            p.edges,
            p.annotation
        );
    }
}

fn strata(config: &RunConfig, datum: &FcDatum, use_delaunay: bool) -> Result<(i32, String)> {
    if config.format == Format::Svg {
        return Err(no_svg("strata"));
    }
    let (report, checks, polygons): (StrataReport, Vec<Check>, Option<Vec<ComponentPolygon>>) =
        if use_delaunay {
            let report = delaunay_stratification(datum)?;
            let checks = report.checks(&delaunay_complex(datum)?);
            let polys = if datum.rank() == 2 {
                Some(delaunay_polygon_report(datum)?)
            } else {
                None
            };
            (report, checks, polys)
        } else {
            let level = config.level_for(datum)?;
            let (report, checks) = checked_stratification(datum, level)?;
            let polys = if datum.rank() == 2 {
                Some(component_polygon_report(datum, level)?)
            } else {
                None
            };
            (report, checks, polys)
        };
    let text = match config.format {
        Format::Json => pretty(&document(
            "strata",
            json!({"report": report, "checks": checks, "polygons": polygons}),
        )),
        _ => {
            let mut out = format!(
                "{} components; orbit counts by dimension {:?}; Euler characteristic {}\n",
                report.components.len(),
                report.orbit_counts,
                report.euler_characteristic
            );
            let _ = writeln!(out, "component group: {}", report.component_group);
            for c in &report.components {
                let _ = writeln!(
                    out,
                    "  component {}: {} vertices, f-vector {:?}",
                    c.label.join(","),
                    c.vertices.len(),
                    c.f_vector
                );
            }
            if let Some(p) = &polygons {
                polygon_text(&mut out, p);
            }
            let _ = writeln!(out, "{}", report.complement.statement);
            checks_text(&mut out, &checks);
            out
        }
    };
    Ok((checks_code(&checks), text))
}

fn component(config: &RunConfig, datum: &FcDatum) -> Result<(i32, String)> {
    let cg = component_group(datum);
    let text = match config.format {
        Format::Svg => return Err(no_svg("component-group")),
        Format::Json => pretty(&document(
            "component-group",
            json!({"group": cg.to_string(), "detail": cg}),
        )),
        Format::Text => format!("{cg}\n"),
    };
    Ok((EXIT_OK, text))
}

fn integrality(config: &RunConfig, datum: &FcDatum, at: Option<u64>) -> Result<(i32, String)> {
    if config.format == Format::Svg {
        return Err(no_svg("integrality"));
    }
    match at {
        Some(l) => {
            let level = Level::new(l)?;
            let r = is_integral(datum, level)?;
            let code = if r.integral {
                EXIT_OK
            } else {
                EXIT_NOT_INTEGRAL
            };
            let text = match config.format {
                Format::Json => pretty(&document("integrality", json!({ "test": r }))),
                _ => match &r.witness {
                    None => format!("Σ_{level}(0) is integral\n"),
                    Some(w) => format!("Σ_{level}(0) is not integral: {w}\n"),
                },
            };
            Ok((code, text))
        }
        None => {
            let level = minimal_level(datum, config.cap)?;
            let text = match config.format {
                Format::Json => pretty(&document(
                    "integrality",
                    json!({"cap": config.cap, "minimal_level": level}),
                )),
                _ => format!("ℓ₀={level}\n"),
            };
            Ok((EXIT_OK, text))
        }
    }
}

fn star(
    config: &RunConfig,
    datum: &FcDatum,
    member: &Option<String>,
    times: u64,
) -> Result<(i32, String)> {
    if config.format == Format::Svg {
        return Err(no_svg("sigma-star"));
    }
    let level = config.level_for(datum)?;
    let p = sigma_star(datum, level)?;
    let membership = match member {
        Some(s) => {
            let x = parse_qvec(s, "--member")?;
            if x.len() != datum.rank() {
                return Err(Error::parse(
                    "--member",
                    format!("expected {} entries", datum.rank()),
                ));
            }
            Some((
                fmt_qvec(&x),
                separation_membership(datum, level, &x, times)?,
            ))
        }
        None => None,
    };
    let text = match config.format {
        Format::Json => pretty(&document(
            "sigma-star",
            json!({
                "level": level,
                "polytope": polytope_json(&p),
                "membership": membership.as_ref().map(|(x, m)| json!({"point": x, "times": times, "member": m})),
            }),
        )),
        _ => {
            let mut out = format!("Σ*_{level}: {} vertices\n", p.vertices().len());
            for v in p.vertices() {
                let _ = writeln!(out, "  {}", fmt_qvec(v));
            }
            if let Some((x, m)) = &membership {
                let _ = writeln!(out, "{x} {} {times}·Σ*", if *m { "∈" } else { "∉" });
            }
            out
        }
    };
    Ok((EXIT_OK, text))
}

fn verify(config: &RunConfig, cases: usize) -> Result<(i32, String)> {
    let report = crate::verify::run_suites(config.seed, cases);
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    };
    let text = match config.format {
        Format::Svg => return Err(no_svg("verify")),
        Format::Json => pretty(&serde_json::to_value(&report).expect("reports serialize")),
        Format::Text => report.to_text(),
    };
    Ok((code, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_words(words: &str) -> Outcome {
        run_args(std::iter::once("ntoric").chain(words.split_whitespace()))
    }

    #[test]
    fn component_group_of_the_hexagon() {
        let o = run_words("component-group --fixture hexagon");
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        assert_eq!(o.stdout, "Z/3\n");
    }

    #[test]
    fn integrality_of_the_hexagon() {
        let o = run_words("integrality --fixture hexagon");
        assert_eq!(o.stdout, "ℓ₀=1\n");
    }

    #[test]
    fn missing_input_is_bad_input() {
        assert_eq!(run_words("voronoi").code, EXIT_BAD_INPUT);
        assert_eq!(run_words("voronoi --nonsense").code, EXIT_BAD_INPUT);
    }

    #[test]
    fn half_level_needs_an_even_form() {
        let o = run_words("voronoi --fixture hexagon --level 1 --half-level");
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let o = run_words("voronoi --fixture tate --level 1 --half-level");
        assert_eq!(o.code, EXIT_BAD_INPUT);
        let dir = std::env::temp_dir().join("ntoric-cli-odd.json");
        std::fs::write(&dir, r#"{"b": [[1]]}"#).unwrap();
        let o = run_args([
            "ntoric",
            "voronoi",
            "--half-level",
            "--input",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(o.code, EXIT_BAD_INPUT);
    }

    #[test]
    fn svg_needs_rank_two() {
        assert_eq!(
            run_words("voronoi --fixture tate --format svg").code,
            EXIT_BAD_INPUT
        );
        let o = run_words("voronoi --fixture hexagon --format svg");
        assert!(o.stdout.starts_with("<svg"));
    }

    #[test]
    fn level_that_is_too_small_is_not_integral() {
        let dir = std::env::temp_dir().join("ntoric-cli-pqr.json");
        std::fs::write(&dir, r#"{"b": [[3, -1], [-1, 2]]}"#).unwrap();
        let o = run_args([
            "ntoric",
            "integrality",
            "--at",
            "1",
            "--input",
            dir.to_str().unwrap(),
        ]);
        assert!(o.code == EXIT_OK || o.code == EXIT_NOT_INTEGRAL);
        let o = run_words("integrality --fixture hexagon --at 1");
        assert_eq!(o.code, EXIT_OK);
    }

    #[test]
    fn exit_codes_are_distinct_per_category() {
        assert_eq!(
            exit_code(&Error::NotIntegral {
                level: "1".into(),
                witness: String::new()
            }),
            EXIT_NOT_INTEGRAL
        );
        assert_eq!(
            exit_code(&Error::DimensionCap {
                dim: 9,
                cap: 8,
                what: String::new()
            }),
            EXIT_CAP_EXCEEDED
        );
        assert_eq!(exit_code(&Error::parse("b", "x")), EXIT_BAD_INPUT);
    }
}
