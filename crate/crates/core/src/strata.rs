//! Orbit stratification of the closed fiber read off from `Vor_ℓ` modulo
//! `2ℓNY`, the component group `X^∨/β(Y)` and per-component polygon data.

use serde::Serialize;

use crate::arith::rational::{fmt_ivec, to_i, to_q, IVec};
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::polyhedra::Polytope;
use crate::report::Check;
use crate::voronoi::{delaunay_complex, vor_complex, voronoi_polytope, ComplexKind, FaceComplex};

/// The group `X^∨/β(Y)` of connected components of the closed fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentGroup {
    /// Smith invariant factors of `β`, including the trivial ones.
    pub invariant_factors: Vec<i64>,
    /// The order `|det β|`.
    pub order: i64,
}

impl std::fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .filter(|&&d| d != 1)
            .map(|d| format!("Z/{d}"))
            .collect();
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// The Smith invariant factors of `β` and their product.
pub fn component_group(datum: &FcDatum) -> ComponentGroup {
    let sd = datum.beta_smith();
    ComponentGroup {
        order: sd.product(),
        invariant_factors: sd.invariant_factors,
    }
}

/// One irreducible component of the closed fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// The label of the component: `v ∈ X^∨` for `Σ_ℓ(v)`, or the dual
    /// Voronoi vertex for a Delaunay cell.
    pub label: Vec<String>,
    /// Vertices of the cell.
    pub vertices: Vec<IVec>,
    /// Numbers of faces of each dimension of the cell.
    pub f_vector: Vec<usize>,
}

/// The orbits of dimension below `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementSummary {
    /// Orbit counts of dimensions `0..g`.
    pub orbits_by_dim: Vec<u64>,
    /// Largest orbit dimension occurring in the complement.
    pub max_dim: usize,
    /// The combinatorial codimension statement.
    pub statement: String,
}

/// The stratification of the closed fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrataReport {
    /// Which decomposition was used.
    pub kind: ComplexKind,
    /// The rank `g`.
    pub rank: usize,
    /// Orbit counts per dimension modulo the quotient lattice.
    pub orbit_counts: Vec<u64>,
    /// Face classes per dimension modulo the translation lattice.
    pub classes_mod_translation: Vec<usize>,
    /// `X^∨/β(Y)`.
    pub component_group: ComponentGroup,
    /// The irreducible components.
    pub components: Vec<Component>,
    /// The orbits of dimension below `g`.
    pub complement: ComplementSummary,
    /// Alternating sum of the orbit counts.
    pub euler_characteristic: i64,
}

impl StrataReport {
    /// Consistency checks: components against the orbit count (and, for
    /// `Vor_ℓ`, against the component group), vanishing Euler characteristic
    /// and orbit counts against face counts.
    pub fn checks(&self, complex: &FaceComplex) -> Vec<Check> {
        let top = self.orbit_counts.last().copied().unwrap_or(0);
        let mut out = vec![Check::new(
            "components match top-dimensional orbits",
            self.components.len() as u64 == top,
            format!("{} components, {} orbits", self.components.len(), top),
        )];
        if matches!(self.kind, ComplexKind::Voronoi { .. }) {
            out.push(Check::new(
                "components match the component group",
                self.components.len() as i64 == self.component_group.order,
                format!("{} against {}", self.components.len(), self.component_group),
            ));
        }
        out.push(Check::new(
            "Euler characteristic vanishes",
            self.euler_characteristic == 0,
            self.euler_characteristic.to_string(),
        ));
        out.push(Check::new(
            "orbit counts equal face counts",
            self.orbit_counts == complex.counts_mod_quotient(),
            format!("{:?}", self.orbit_counts),
        ));
        out
    }
}

fn complement_summary(counts: &[u64], g: usize) -> ComplementSummary {
    let orbits_by_dim = counts[..g].to_vec();
    let max_dim = (0..g).rev().find(|&d| counts[d] > 0).unwrap_or(0);
    ComplementSummary {
        orbits_by_dim,
        max_dim,
        statement: format!(
            "combinatorial: every complement orbit has fiber dimension at most {}, so the complement has codimension at least 2 in the total space",
            g.saturating_sub(1)
        ),
    }
}

fn component_of(label: Vec<String>, cell: &Polytope) -> Result<Component> {
    let vertices: Vec<IVec> = cell
        .vertices()
        .iter()
        .map(|v| {
            to_i(v)
                .ok_or_else(|| Error::Internal("component cell is not a lattice polytope".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Component {
        label,
        vertices,
        f_vector: cell.f_vector(),
    })
}

/// The components `Σ_ℓ(v)` for `v` running over representatives of `X^∨/β(Y)`.
fn voronoi_components(datum: &FcDatum, level: Level) -> Result<Vec<Component>> {
    let cell = voronoi_polytope(datum, level)?;
    let mut out = Vec::new();
    for v in datum.beta_lattice().coset_representatives() {
        let moved = cell.translate(&to_q(&datum.shift(level, &v)))?;
        out.push(component_of(vec![fmt_ivec(&v)], &moved)?);
    }
    Ok(out)
}

fn report_from(datum: &FcDatum, complex: &FaceComplex, components: Vec<Component>) -> StrataReport {
    let g = datum.rank();
    let counts = complex.counts_mod_quotient();
    StrataReport {
        kind: complex.kind(),
        rank: g,
        complement: complement_summary(&counts, g),
        classes_mod_translation: complex.counts_mod_translation(),
        euler_characteristic: complex.euler_characteristic(),
        orbit_counts: counts,
        component_group: component_group(datum),
        components,
    }
}

/// The stratification from `Vor_ℓ` modulo `2ℓNY`.
pub fn stratification(datum: &FcDatum, level: Level) -> Result<StrataReport> {
    datum.check_level(level)?;
    let complex = vor_complex(datum, level)?;
    let comps = voronoi_components(datum, level)?;
    Ok(report_from(datum, &complex, comps))
}

/// The stratification of the Mumford degeneration from `Del_B` modulo `X`.
pub fn delaunay_stratification(datum: &FcDatum) -> Result<StrataReport> {
    let complex = delaunay_complex(datum)?;
    let comps = complex
        .cells()
        .iter()
        .map(|c| {
            component_of(
                c.label.iter().map(crate::arith::rational::fmt_q).collect(),
                &c.polytope,
            )
        })
        .collect::<Result<_>>()?;
    Ok(report_from(datum, &complex, comps))
}

/// The stratification together with its consistency checks.
pub fn checked_stratification(datum: &FcDatum, level: Level) -> Result<(StrataReport, Vec<Check>)> {
    datum.check_level(level)?;
    let complex = vor_complex(datum, level)?;
    let report = report_from(datum, &complex, voronoi_components(datum, level)?);
    let checks = report.checks(&complex);
    Ok((report, checks))
}

/// A component of a rank-two fiber: a toric surface whose boundary has
/// `boundary_curves` components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPolygon {
    /// The component label.
    pub label: Vec<String>,
    /// Number of vertices of the polygon.
    pub vertices: usize,
    /// Number of edges of the polygon.
    pub edges: usize,
    /// Number of boundary curves of the toric surface.
    pub boundary_curves: usize,
    /// Description of the component.
    pub annotation: String,
}

fn polygons(report: &StrataReport) -> Result<Vec<ComponentPolygon>> {
    if report.rank != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: report.rank,
        });
    }
    Ok(report
        .components
        .iter()
        .map(|c| {
            let n = c.f_vector[0];
            ComponentPolygon {
                label: c.label.clone(),
                vertices: n,
                edges: c.f_vector[1],
                boundary_curves: c.f_vector[1],
                annotation: format!("toric surface with {} boundary curves", c.f_vector[1]),
            }
        })
        .collect())
}

/// The polygons `Σ_ℓ(v)` of the components of a rank-two fiber.
pub fn component_polygon_report(datum: &FcDatum, level: Level) -> Result<Vec<ComponentPolygon>> {
    if datum.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: datum.rank(),
        });
    }
    polygons(&stratification(datum, level)?)
}

/// The polygons of the maximal Delaunay cells of a rank-two form.
pub fn delaunay_polygon_report(datum: &FcDatum) -> Result<Vec<ComponentPolygon>> {
    if datum.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            got: datum.rank(),
        });
    }
    polygons(&delaunay_stratification(datum)?)
}

/// Compares the stratifications at `ℓ` and `ℓℓ′`: equal orbit counts, and
/// components of the second that are the `ℓ′`-dilates of those of the first.
pub fn strata_scaling_check(datum: &FcDatum, level: Level, l2: u64) -> Result<Check> {
    let a = stratification(datum, level)?;
    let b = stratification(datum, level.times(l2))?;
    let dilate = |c: &Component| -> Vec<IVec> {
        let mut v: Vec<IVec> = c
            .vertices
            .iter()
            .map(|x| x.iter().map(|t| t * l2 as i64).collect())
            .collect();
        v.sort();
        v
    };
    let sorted = |c: &Component| -> Vec<IVec> {
        let mut v = c.vertices.clone();
        v.sort();
        v
    };
    let same_counts = a.orbit_counts == b.orbit_counts;
    let same_cells = a.components.len() == b.components.len()
        && a.components
            .iter()
            .zip(&b.components)
            .all(|(x, y)| dilate(x) == sorted(y));
    Ok(Check::new(
        "stratifications agree under dilation",
        same_counts && same_cells,
        format!("{:?} against {:?}", a.orbit_counts, b.orbit_counts),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e8, hexagon, rank_two, tate};

    fn l1() -> Level {
        Level::new(1).unwrap()
    }

    #[test]
    fn component_groups() {
        assert_eq!(component_group(&hexagon()).invariant_factors, vec![1, 3]);
        assert_eq!(component_group(&tate()).to_string(), "Z/2");
        let e = component_group(&e8());
        assert_eq!((e.order, e.to_string()), (1, "trivial".to_string()));
    }

    #[test]
    fn tate_strata() {
        let (r, checks) = checked_stratification(&tate(), l1()).unwrap();
        assert!(crate::report::all_passed(&checks), "{checks:?}");
        assert_eq!(r.orbit_counts, vec![2, 2]);
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.euler_characteristic, 0);
        assert_eq!(r.complement.max_dim, 0);
    }

    #[test]
    fn half_level_hexagon_has_three_hexagons() {
        let (r, checks) = checked_stratification(&hexagon(), Level::half()).unwrap();
        assert!(crate::report::all_passed(&checks), "{checks:?}");
        assert_eq!(r.components.len(), 3);
        for p in polygons(&r).unwrap() {
            assert_eq!((p.vertices, p.edges), (6, 6));
        }
    }

    #[test]
    fn delaunay_side_has_two_triangles() {
        let r = delaunay_stratification(&hexagon()).unwrap();
        assert_eq!(r.components.len(), 2);
        for p in delaunay_polygon_report(&hexagon()).unwrap() {
            assert_eq!((p.vertices, p.edges), (3, 3));
        }
        assert_eq!(r.euler_characteristic, 0);
    }

    #[test]
    fn polygons_need_rank_two() {
        assert_eq!(
            component_polygon_report(&tate(), l1()).unwrap_err(),
            Error::WrongRank {
                expected: 2,
                got: 1
            }
        );
        for p in component_polygon_report(&rank_two(2, 1, 1), l1()).unwrap() {
            assert_eq!(p.vertices % 2, 0);
        }
    }

    #[test]
    fn scaling_preserves_strata() {
        assert!(strata_scaling_check(&hexagon(), l1(), 2).unwrap().passed);
        assert!(strata_scaling_check(&tate(), l1(), 3).unwrap().passed);
    }
}
