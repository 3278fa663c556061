//! JSON input and output: datum files, rational encodings, JSON views of the
//! geometric objects and SVG drawings of rank-two complexes.
//!
//! A datum file is a single JSON object
//! `{"schema": "neron-toric/datum/1", "rank": g, "y_basis": [[..]], "b": [[..]], "a": [..]}`
//! where `y_basis` holds one generator of `Y` per column, `b` is the pairing
//! on `X` with entries given as integers or `"p/q"` strings, and the optional
//! `a` is the linear correction `λ` of `A(y) = B(y, y)/2 + λ(y)`.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::arith::rational::{fmt_q, parse_q, to_f, to_q, IVec, QVec, Q};
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::fan::{FanCone, SFan};
use crate::polyhedra::{Cone, Polytope};
use crate::voronoi::{box_points, ComplexKind, FaceComplex};

/// Schema tag of datum files.
pub const DATUM_SCHEMA: &str = "neron-toric/datum/1";

/// Prefix of the schema tags of output documents.
pub const OUTPUT_SCHEMA_PREFIX: &str = "neron-toric";

/// Serializes a rational as the string `"p"` or `"p/q"`.
pub fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

/// Serializes a rational vector as a list of `"p/q"` strings.
pub fn ser_qvec<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn rational_at(v: &Value, field: &str) -> Result<Q> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| Q::from_integer(x.into()))
            .ok_or_else(|| {
                parse_err(
                    field,
                    "numbers must be integers; write fractions as \"p/q\"",
                )
            }),
        Value::String(s) => parse_q(s).map_err(|e| parse_err(field, e.to_string())),
        _ => Err(parse_err(field, "expected an integer or a \"p/q\" string")),
    }
}

fn integer_at(v: &Value, field: &str) -> Result<i64> {
    let x = rational_at(v, field)?;
    crate::arith::rational::q_to_i64(&x)
        .ok_or_else(|| parse_err(field, format!("{} is not an integer", fmt_q(&x))))
}

fn array_at<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(field, "expected an array"))
}

fn matrix_at<T>(
    v: &Value,
    field: &str,
    g: usize,
    cell: impl Fn(&Value, &str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let rows = array_at(v, field)?;
    if rows.len() != g {
        return Err(parse_err(
            field,
            format!("expected {g} rows, found {}", rows.len()),
        ));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let f = format!("{field}[{i}]");
            let cols = array_at(r, &f)?;
            if cols.len() != g {
                return Err(parse_err(
                    &f,
                    format!("expected {g} entries, found {}", cols.len()),
                ));
            }
            cols.iter()
                .enumerate()
                .map(|(j, c)| cell(c, &format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

/// Parses a datum document.
pub fn parse_datum(text: &str) -> Result<FcDatum> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(
            &format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| parse_err("document", "expected a JSON object"))?;
    if let Some(s) = obj.get("schema") {
        if s.as_str() != Some(DATUM_SCHEMA) {
            return Err(parse_err("schema", format!("expected \"{DATUM_SCHEMA}\"")));
        }
    }
    let b_val = obj.get("b").ok_or_else(|| parse_err("b", "missing"))?;
    let g = match obj.get("rank") {
        Some(r) => usize::try_from(integer_at(r, "rank")?)
            .map_err(|_| parse_err("rank", "must be positive"))?,
        None => array_at(b_val, "b")?.len(),
    };
    if g == 0 {
        return Err(parse_err("rank", "must be positive"));
    }
    let b = matrix_at(b_val, "b", g, rational_at)?;
    let y_basis = match obj.get("y_basis") {
        Some(v) => matrix_at(v, "y_basis", g, integer_at)?,
        None => crate::arith::matrix::identity_i(g),
    };
    let a = match obj.get("a") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let xs = array_at(v, "a")?;
            if xs.len() != g {
                return Err(parse_err(
                    "a",
                    format!("expected {g} entries, found {}", xs.len()),
                ));
            }
            Some(
                xs.iter()
                    .enumerate()
                    .map(|(i, x)| rational_at(x, &format!("a[{i}]")))
                    .collect::<Result<QVec>>()?,
            )
        }
    };
    for key in obj.keys() {
        if !["schema", "rank", "y_basis", "b", "a", "name"].contains(&key.as_str()) {
            return Err(parse_err(key, "unknown field"));
        }
    }
    FcDatum::new(y_basis, b, a)
}

/// Reads and parses a datum file.
pub fn load_datum(path: &Path) -> Result<FcDatum> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(&path.display().to_string(), e.to_string()))?;
    parse_datum(&text)
}

/// The datum document of `datum`.
pub fn datum_to_json(datum: &FcDatum) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(DATUM_SCHEMA));
    obj.insert("rank".into(), json!(datum.rank()));
    obj.insert("y_basis".into(), json!(datum.y_basis()));
    obj.insert("b".into(), qmat_json(datum.b()));
    if let Some(a) = datum.a_linear() {
        obj.insert("a".into(), qvec_json(a));
    }
    Value::Object(obj)
}

/// A rational as a JSON string.
pub fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

/// A rational vector as a JSON array of strings.
pub fn qvec_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_json).collect())
}

/// A rational matrix as nested JSON arrays of strings.
pub fn qmat_json(m: &[QVec]) -> Value {
    Value::Array(m.iter().map(|r| qvec_json(r)).collect())
}

/// An output document: `{"schema": "neron-toric/<kind>/1", ...body}`.
pub fn document(kind: &str, body: Value) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "schema".into(),
        json!(format!("{OUTPUT_SCHEMA_PREFIX}/{kind}/1")),
    );
    if let Value::Object(m) = body {
        obj.extend(m);
    } else {
        obj.insert("data".into(), body);
    }
    Value::Object(obj)
}

/// A polytope as vertices, facet inequalities `normal·x + offset ≥ 0` and f-vector.
pub fn polytope_json(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": qmat_json(p.vertices()),
        "facets": p.facets().iter().map(|h| json!({"normal": qvec_json(&h.normal), "offset": q_json(&h.offset)})).collect::<Vec<_>>(),
        "equations": p.equations().iter().map(|h| json!({"normal": qvec_json(&h.normal), "offset": q_json(&h.offset)})).collect::<Vec<_>>(),
        "f_vector": p.f_vector(),
    })
}

/// A cone as rays, lineality, facet normals and equations.
pub fn cone_json(c: &Cone) -> Value {
    json!({
        "dim": c.dim(),
        "rays": qmat_json(c.rays()),
        "lineality": qmat_json(c.lineality()),
        "facets": qmat_json(c.facets()),
        "equations": qmat_json(c.equations()),
    })
}

fn fan_cone_json(fc: &FanCone) -> Value {
    json!({"label": fc.label(), "face": fc.face, "cone": cone_json(&fc.cone)})
}

/// A fan over `S`: translation generators, maximal cones and all cone classes.
pub fn fan_json(fan: &SFan) -> Value {
    json!({
        "rank": fan.rank(),
        "translations": fan.translations(),
        "maximal": fan.maximal().iter().map(fan_cone_json).collect::<Vec<_>>(),
        "cones": fan.cones().iter().map(fan_cone_json).collect::<Vec<_>>(),
    })
}

/// A periodic complex: cells, face classes, incidences and lattices.
pub fn complex_json(c: &FaceComplex) -> Value {
    json!({
        "kind": c.kind(),
        "rank": c.rank(),
        "translation_generators": c.translation_generators(),
        "quotient_generators": c.quotient_generators(),
        "quotient_factor": c.quotient_factor(),
        "cells": c.cells().iter().map(|cell| json!({"label": qvec_json(&cell.label), "polytope": polytope_json(&cell.polytope)})).collect::<Vec<_>>(),
        "faces": c.faces(),
        "incidences": c.incidences(),
        "counts_mod_translation": c.counts_mod_translation(),
        "counts_mod_quotient": c.counts_mod_quotient(),
        "euler_characteristic": c.euler_characteristic(),
    })
}

const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

/// Screen coordinates from the square completion
/// `B(x, x) = b₁₁(x₁ + (b₁₂/b₁₁)x₂)² + (det B/b₁₁)x₂²`.
fn embed(b: &[QVec], x: &[Q]) -> (f64, f64) {
    let f = |t: &Q| to_f(std::slice::from_ref(t))[0];
    let b11 = f(&b[0][0]);
    let b12 = f(&b[0][1]);
    let det = f(&(&b[0][0] * &b[1][1] - &b[0][1] * &b[1][0]));
    let (x1, x2) = (f(&x[0]), f(&x[1]));
    (b11.sqrt() * (x1 + b12 / b11 * x2), -(det / b11).sqrt() * x2)
}

/// An SVG drawing of a rank-two complex near the origin. Voronoi cells are
/// colored by the class of their center in `X^∨/β(Y)`, Delaunay cells by
/// their translation class.
pub fn complex_svg(datum: &FcDatum, complex: &FaceComplex, radius: i64) -> Result<String> {
    if datum.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: datum.rank(),
        });
    }
    let mut tiles: Vec<(usize, Vec<(f64, f64)>)> = Vec::new();
    let window = box_points(&[-radius, -radius], &[radius, radius]);
    match complex.kind() {
        ComplexKind::Voronoi { level } => {
            let reps = datum.beta_lattice().coset_representatives();
            let beta = datum.beta_lattice();
            let cell = &complex.cells()[0].polytope;
            for c in &window {
                let class = reps.iter().position(|r| *r == beta.reduce(c)).unwrap_or(0);
                tiles.push((class, polygon_points(datum, cell, &datum.shift(level, c))));
            }
        }
        ComplexKind::Delaunay => {
            for (i, cell) in complex.cells().iter().enumerate() {
                for t in &window {
                    tiles.push((i, polygon_points(datum, &cell.polytope, t)));
                }
            }
        }
    }
    let extent = tiles
        .iter()
        .flat_map(|(_, p)| p.iter())
        .fold(1.0f64, |m, (x, y)| m.max(x.abs()).max(y.abs()));
    let view = extent.min(4.0 * radius as f64 + 4.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.3} {:.3} {:.3} {:.3}\" width=\"600\" height=\"600\">",
        -view,
        -view,
        2.0 * view,
        2.0 * view
    );
    for (class, pts) in &tiles {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"{:.3}\"/>",
            coords.join(" "),
            PALETTE[class % PALETTE.len()],
            view / 300.0
        );
    }
    let _ = writeln!(
        out,
        "  <circle cx=\"0\" cy=\"0\" r=\"{:.3}\" fill=\"#000000\"/>",
        view / 150.0
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// The vertices of `cell + t` in cyclic order, embedded in the plane.
fn polygon_points(datum: &FcDatum, cell: &Polytope, t: &[i64]) -> Vec<(f64, f64)> {
    let tq = to_q(t);
    let verts: Vec<QVec> = cell
        .vertices()
        .iter()
        .map(|v| v.iter().zip(&tq).map(|(a, b)| a + b).collect())
        .collect();
    let mut pts: Vec<(f64, f64)> = verts.iter().map(|v| embed(datum.b(), v)).collect();
    let n = pts.len() as f64;
    let (cx, cy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    pts.sort_by(|p, q| {
        let a = (p.1 - cy).atan2(p.0 - cx);
        let b = (q.1 - cy).atan2(q.0 - cx);
        a.total_cmp(&b)
    });
    pts
}

/// Parses a comma-separated integer vector such as `"1,-2"`.
pub fn parse_ivec(s: &str, field: &str) -> Result<IVec> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| parse_err(field, format!("'{}' is not an integer", t.trim())))
        })
        .collect()
}

/// Parses a comma-separated rational vector such as `"1/2,-3"`.
pub fn parse_qvec(s: &str, field: &str) -> Result<QVec> {
    s.split(',')
        .map(|t| parse_q(t.trim()).map_err(|e| parse_err(field, e.to_string())))
        .collect()
}

/// Parses a face given as integer vertices separated by semicolons, such as `"1,0;1,1"`.
pub fn parse_face(s: &str, field: &str) -> Result<Vec<IVec>> {
    s.split(';').map(|v| parse_ivec(v, field)).collect()
}

/// The level from `--level` and the half-level flag.
pub fn level_from(l: u64, half: bool) -> Result<Level> {
    if half {
        Level::from_twice(l)
    } else {
        Level::new(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::hexagon;
    use crate::voronoi::vor_complex;

    #[test]
    fn datum_round_trip() {
        let text = r#"{"schema": "neron-toric/datum/1", "rank": 2, "y_basis": [[1,0],[0,1]], "b": [[2,"-1"],["-1","2"]]}"#;
        let d = parse_datum(text).unwrap();
        assert_eq!(d, hexagon());
        let back = parse_datum(&datum_to_json(&d).to_string()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn rational_entries_and_defaults() {
        let d = parse_datum(r#"{"y_basis": [[2]], "b": [["1/2"]]}"#).unwrap();
        assert_eq!(d.n_index(), 1);
        let d = parse_datum(r#"{"b": [[2]], "a": ["1/2"]}"#).unwrap();
        assert!(d.a_linear().is_some());
    }

    #[test]
    fn errors_name_the_field() {
        let e = parse_datum(r#"{"b": [[2, 1], [1, "x"]]}"#).unwrap_err();
        assert!(
            matches!(e, Error::Parse { ref field, .. } if field == "b[1][1]"),
            "{e:?}"
        );
        let e = parse_datum("{\n \"b\": [[2]\n").unwrap_err();
        assert!(
            matches!(e, Error::Parse { ref field, .. } if field.starts_with("line")),
            "{e:?}"
        );
        let e = parse_datum(r#"{"b": [[2]], "bogus": 1}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { ref field, .. } if field == "bogus"));
        assert!(parse_datum(r#"{"schema": "other", "b": [[2]]}"#).is_err());
        assert!(parse_datum(r#"{"b": [[1.5]]}"#).is_err());
    }

    #[test]
    fn svg_has_three_colors_for_the_hexagon() {
        let d = hexagon();
        let c = vor_complex(&d, Level::new(1).unwrap()).unwrap();
        let svg = complex_svg(&d, &c, 2).unwrap();
        let colors: std::collections::BTreeSet<&str> = PALETTE
            .iter()
            .copied()
            .filter(|p| svg.contains(p))
            .collect();
        assert_eq!(colors.len(), 3);
        assert_eq!(svg.matches("<polygon").count(), 25);
        assert_eq!(svg, complex_svg(&d, &c, 2).unwrap());
    }

    #[test]
    fn vector_arguments() {
        assert_eq!(parse_ivec("1, -2", "x").unwrap(), vec![1, -2]);
        assert_eq!(
            parse_face("1,0;1,1", "f").unwrap(),
            vec![vec![1, 0], vec![1, 1]]
        );
        assert!(parse_ivec("1,a", "x").is_err());
        assert_eq!(
            parse_qvec("1/2,3", "p").unwrap()[0],
            crate::arith::rational::qr(1, 2)
        );
    }
}
