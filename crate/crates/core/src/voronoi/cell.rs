//! The Voronoi polytope `Σ_ℓ(0)`, its lattice points and its integrality.
//!
//! `Σ_ℓ(0) = {x : E_ℓ(u) + u(x) >= 0 for all u ∈ X^∨}` is the Voronoi cell of
//! the translation lattice `2ℓφ(X^∨)` under `B`, and `Σ_ℓ(0) = 2ℓ·V` where `V`
//! is the cell at `2ℓ = 1`. Everything level-dependent is derived from `V`.

use num::traits::{Signed, Zero};
use serde::Serialize;

use super::alcove;
use crate::arith::lattice::{closest_all, ellipsoid_points};
use crate::arith::matrix::{rank_of, IMat};
use crate::arith::rational::{dot_i, dot_iq, q, to_q, IVec, QVec, Q};
use crate::arith::smith::smith;
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::polyhedra::{HalfSpace, Polytope};

/// Largest number of lattice points `sigma_points` will enumerate.
pub const SIGMA_POINT_BUDGET: u64 = 2_000_000;

/// Largest number of search nodes spent looking for a lattice basis inside `Σ_ℓ`.
const BASIS_SEARCH_BUDGET: usize = 200_000;

/// The facet-defining `u ∈ X^∨ ∖ {0}` of `Σ_ℓ(0)`, sorted.
///
/// A class `c ∈ X^∨ / 2X^∨` contributes its minimal vectors for the norm
/// `u(φ(u))` exactly when there are two of them, `±u`. The result does not
/// depend on `ℓ`, which is only checked for admissibility.
pub fn relevant_vectors(datum: &FcDatum, level: Level) -> Result<Vec<IVec>> {
    datum.check_level(level)?;
    unit_relevant(datum)
}

pub(crate) fn unit_relevant(datum: &FcDatum) -> Result<Vec<IVec>> {
    let g = datum.rank();
    let cap = datum.limits().dim_cap;
    if g > cap {
        return Err(Error::DimensionCap {
            dim: g,
            cap,
            what: "relevant vectors".into(),
        });
    }
    Ok(datum
        .cache
        .relevant
        .get_or_init(|| coset_relevant_vectors(datum.gram_q()))
        .clone())
}

/// Voronoi-relevant vectors of `Z^g` for the Gram matrix `gram` by the coset criterion.
pub fn coset_relevant_vectors(gram: &[QVec]) -> Vec<IVec> {
    let g = gram.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << g) {
        let c: IVec = (0..g).map(|i| ((mask >> i) & 1) as i64).collect();
        let center: QVec = c.iter().map(|&x| q(-x) / q(2)).collect();
        let (_, mins) = closest_all(&gram.to_vec(), &center);
        if mins.len() == 2 {
            for z in mins {
                out.push(c.iter().zip(&z).map(|(a, b)| a + 2 * b).collect());
            }
        }
    }
    out.sort();
    out
}

/// The facet inequalities `u·x + ℓ u(φ(u)) >= 0` of `Σ_ℓ(0)`.
pub fn voronoi_inequalities(datum: &FcDatum, level: Level) -> Result<Vec<HalfSpace>> {
    let rel = relevant_vectors(datum, level)?;
    Ok(rel
        .iter()
        .map(|u| HalfSpace::new(to_q(u), datum.e_level_q(level, u)))
        .collect())
}

/// True when `x ∈ Σ_ℓ(0)`.
pub fn in_sigma(datum: &FcDatum, level: Level, x: &[i64]) -> Result<bool> {
    let rel = unit_relevant(datum)?;
    let k = level.k();
    Ok(rel
        .iter()
        .all(|u| 2 * dot_i(u, x) + k * datum.pair_phi(u, u) >= 0))
}

/// True when the rational point `x` lies in `Σ_ℓ(0)`.
pub fn in_sigma_q(datum: &FcDatum, level: Level, x: &[Q]) -> Result<bool> {
    let rel = unit_relevant(datum)?;
    Ok(rel
        .iter()
        .all(|u| !(dot_iq(u, x) + datum.e_level_q(level, u)).is_negative()))
}

/// Representatives of the vertices of the unit cell `V`, up to the symmetries
/// that act on `X` by integer matrices.
///
/// When vertex enumeration is allowed in dimension `g` this is the full vertex
/// list; otherwise, for a unimodular simply-laced root lattice, it is the set of
/// alcove vertices that are vertices of `V`.
pub fn unit_vertex_representatives(datum: &FcDatum) -> Result<Vec<QVec>> {
    datum
        .cache
        .unit_vertices
        .get_or_init(|| compute_unit_vertices(datum))
        .clone()
}

/// True when [`unit_vertex_representatives`] lists every vertex of `V`.
pub fn unit_vertices_complete(datum: &FcDatum) -> bool {
    let l = datum.limits();
    datum.rank() <= l.vertex_dim_cap || (l.allow_high_dim_vertices && datum.rank() <= l.dim_cap)
}

fn compute_unit_vertices(datum: &FcDatum) -> Result<Vec<QVec>> {
    let g = datum.rank();
    if unit_vertices_complete(datum) {
        let half = Level::from_twice(1)?;
        let rel = unit_relevant(datum)?;
        let ineqs: Vec<HalfSpace> = rel
            .iter()
            .map(|u| HalfSpace::new(to_q(u), datum.e_level_q(half, u)))
            .collect();
        let p = Polytope::from_inequalities_with(g, &ineqs, &[], datum.limits())?;
        return Ok(p.vertices().to_vec());
    }
    if let Some(reps) = alcove::vertex_representatives(datum)? {
        return Ok(reps);
    }
    datum
        .limits()
        .check_vertex_dim(g, "Voronoi vertex enumeration")?;
    Err(Error::Internal("vertex enumeration unavailable".into()))
}

/// `Σ_ℓ(0)` with both representations.
pub fn voronoi_polytope(datum: &FcDatum, level: Level) -> Result<Polytope> {
    datum.check_level(level)?;
    if !unit_vertices_complete(datum) {
        datum
            .limits()
            .check_vertex_dim(datum.rank(), "Voronoi polytope")?;
    }
    let verts = unit_vertex_representatives(datum)?;
    let k = q(level.k());
    let scaled: Vec<QVec> = verts
        .iter()
        .map(|v| v.iter().map(|x| x * &k).collect())
        .collect();
    Polytope::hull_with(&scaled, datum.limits())
}

/// `max B(x, x)` over `Σ_ℓ(0)`, attained at a vertex.
pub fn squared_circumradius(datum: &FcDatum, level: Level) -> Result<Q> {
    let verts = unit_vertex_representatives(datum)?;
    let k = q(level.k());
    Ok(verts
        .iter()
        .map(|v| datum.b_pair_q(v, v) * &k * &k)
        .max()
        .unwrap_or_else(Q::zero))
}

/// `Σ_ℓ = Σ_ℓ(0) ∩ X`, sorted.
pub fn sigma_points(datum: &FcDatum, level: Level) -> Result<Vec<IVec>> {
    datum.check_level(level)?;
    let g = datum.rank();
    let estimate = (level.k() as f64).powi(g as i32) * det_gram_abs(datum) as f64;
    if estimate > SIGMA_POINT_BUDGET as f64 {
        return Err(Error::TooLarge(format!(
            "about {estimate:.0} lattice points in Sigma at level {level}"
        )));
    }
    let r = squared_circumradius(datum, level)?;
    let origin = vec![Q::zero(); g];
    let mut out = Vec::new();
    for x in ellipsoid_points(datum.b(), &origin, &r) {
        if in_sigma(datum, level, &x)? {
            out.push(x);
        }
    }
    Ok(out)
}

fn det_gram_abs(datum: &FcDatum) -> i64 {
    crate::arith::matrix::idet(datum.gram()).abs()
}

/// The clause of integrality that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum IntegralityWitness {
    /// A vertex of `Σ_ℓ(0)` outside `X`.
    NonIntegralVertex {
        /// The vertex, as `p/q` strings.
        vertex: Vec<String>,
    },
    /// `Σ_ℓ(0) ≠ -Σ_ℓ(0)`.
    NotSymmetric,
    /// `0` is not an interior point.
    OriginNotInterior,
    /// `Σ_ℓ` contains no basis of `X`.
    NoBasis,
}

impl std::fmt::Display for IntegralityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntegralityWitness::NonIntegralVertex { vertex } => {
                write!(f, "non-integral vertex ({})", vertex.join(", "))
            }
            IntegralityWitness::NotSymmetric => write!(f, "not centrally symmetric"),
            IntegralityWitness::OriginNotInterior => write!(f, "origin is not interior"),
            IntegralityWitness::NoBasis => write!(f, "no basis of X among the lattice points"),
        }
    }
}

/// Outcome of the integrality test at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Integrality {
    /// The level tested.
    pub level: Level,
    /// True when `Σ_ℓ(0)` is integral.
    pub integral: bool,
    /// The violated clause, when not integral.
    pub witness: Option<IntegralityWitness>,
    /// A basis of `X` inside `Σ_ℓ`, when one was found.
    pub basis: Option<Vec<IVec>>,
}

/// Tests whether `Σ_ℓ(0)` is integral: lattice vertices, central symmetry
/// about an interior origin, and a basis of `X` among its lattice points.
pub fn is_integral(datum: &FcDatum, level: Level) -> Result<Integrality> {
    datum.check_level(level)?;
    let fail = |w: IntegralityWitness| Integrality {
        level,
        integral: false,
        witness: Some(w),
        basis: None,
    };
    let rel = unit_relevant(datum)?;
    let mut neg: Vec<IVec> = rel.iter().map(|u| u.iter().map(|x| -x).collect()).collect();
    neg.sort();
    if neg != rel {
        return Ok(fail(IntegralityWitness::NotSymmetric));
    }
    if rel.iter().any(|u| datum.pair_phi(u, u) <= 0) {
        return Ok(fail(IntegralityWitness::OriginNotInterior));
    }
    let k = q(level.k());
    for v in unit_vertex_representatives(datum)? {
        let scaled: QVec = v.iter().map(|x| x * &k).collect();
        if scaled.iter().any(|x| !x.is_integer()) {
            return Ok(fail(IntegralityWitness::NonIntegralVertex {
                vertex: scaled.iter().map(crate::arith::rational::fmt_q).collect(),
            }));
        }
    }
    match find_basis(datum, level)? {
        Some(b) => Ok(Integrality {
            level,
            integral: true,
            witness: None,
            basis: Some(b),
        }),
        None => Ok(fail(IntegralityWitness::NoBasis)),
    }
}

/// Searches `Σ_ℓ` for a basis of `X`, preferring short vectors.
pub fn find_basis(datum: &FcDatum, level: Level) -> Result<Option<Vec<IVec>>> {
    let g = datum.rank();
    let rmax = squared_circumradius(datum, level)?;
    let mut r = (0..g)
        .map(|i| datum.b()[i][i].clone())
        .max()
        .expect("rank >= 1");
    let origin = vec![Q::zero(); g];
    loop {
        let radius = if r > rmax { rmax.clone() } else { r.clone() };
        let mut pts: Vec<IVec> = Vec::new();
        for x in ellipsoid_points(datum.b(), &origin, &radius) {
            if x.iter().all(|&c| c == 0) || !in_sigma(datum, level, &x)? {
                continue;
            }
            let lead_pos = x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
            if lead_pos {
                pts.push(x);
            }
        }
        pts.sort_by(|a, b| {
            datum
                .b_pair(a, a)
                .cmp(&datum.b_pair(b, b))
                .then_with(|| a.cmp(b))
        });
        if rank_of(&pts.iter().map(|p| to_q(p)).collect::<Vec<_>>()) == g && smith_is_unit(&pts, g)
        {
            let mut chosen = Vec::new();
            let mut budget = BASIS_SEARCH_BUDGET;
            if basis_search(&pts, 0, g, &mut chosen, &mut budget) {
                return Ok(Some(chosen));
            }
        }
        if radius == rmax {
            return Ok(None);
        }
        r *= q(2);
    }
}

fn smith_is_unit(rows: &[IVec], g: usize) -> bool {
    let m: IMat = rows.to_vec();
    let sd = smith(&m);
    sd.invariant_factors.len() == g && sd.invariant_factors.iter().all(|&d| d == 1)
}

fn basis_search(
    pts: &[IVec],
    start: usize,
    g: usize,
    chosen: &mut Vec<IVec>,
    budget: &mut usize,
) -> bool {
    if chosen.len() == g {
        return true;
    }
    for i in start..pts.len() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        chosen.push(pts[i].clone());
        if smith_is_unit(chosen, chosen.len()) && basis_search(pts, i + 1, g, chosen, budget) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The least common denominator `D` of the vertex coordinates of the unit cell,
/// so `Σ_ℓ(0)` has lattice vertices exactly when `D` divides `2ℓ`.
pub fn vertex_denominator(datum: &FcDatum) -> Result<u64> {
    let mut d = 1u64;
    for v in unit_vertex_representatives(datum)? {
        for x in &v {
            let den: u64 = x
                .denom()
                .try_into()
                .map_err(|_| Error::Internal("vertex denominator overflow".into()))?;
            d = crate::arith::rational::lcm_u64(d, den);
        }
    }
    Ok(d)
}

/// The smallest integral level `ℓ₀ <= cap` at which `Σ_ℓ(0)` is integral.
///
/// Only multiples of the level clearing the vertex denominators are tested;
/// each candidate is then checked with [`is_integral`].
pub fn minimal_level(datum: &FcDatum, cap: u64) -> Result<Level> {
    if cap == 0 {
        return Err(Error::InvalidLevel("cap must be positive".into()));
    }
    let d = vertex_denominator(datum)?;
    let step = d / num::integer::gcd(d, 2);
    let mut l = step;
    while l <= cap {
        let level = Level::new(l)?;
        if is_integral(datum, level)?.integral {
            return Ok(level);
        }
        l += step;
    }
    Err(Error::NotFoundBelowCap { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;
    use crate::fixtures::{hexagon, rank_two, tate};

    fn qv(x: &[i64]) -> QVec {
        to_q(x)
    }

    #[test]
    fn hexagon_relevant_vectors() {
        let d = hexagon();
        let rel = relevant_vectors(&d, Level::new(1).unwrap()).unwrap();
        assert_eq!(
            rel,
            vec![
                vec![-1, 0],
                vec![-1, 1],
                vec![0, -1],
                vec![0, 1],
                vec![1, -1],
                vec![1, 0]
            ]
        );
    }

    #[test]
    fn hexagon_vertices_at_level_one() {
        let p = voronoi_polytope(&hexagon(), Level::new(1).unwrap()).unwrap();
        let mut want = [
            qv(&[2, 2]),
            qv(&[-2, -2]),
            qv(&[2, 0]),
            qv(&[-2, 0]),
            qv(&[0, 2]),
            qv(&[0, -2]),
        ];
        want.sort();
        assert_eq!(p.vertices(), &want[..]);
    }

    #[test]
    fn tate_cell_and_points() {
        let d = tate();
        let l2 = Level::new(2).unwrap();
        let p = voronoi_polytope(&d, l2).unwrap();
        assert_eq!(p.vertices(), &[qv(&[-2]), qv(&[2])]);
        let pts = sigma_points(&d, Level::new(1).unwrap()).unwrap();
        assert_eq!(pts, vec![vec![-1], vec![0], vec![1]]);
    }

    #[test]
    fn hexagon_has_nineteen_points() {
        assert_eq!(
            sigma_points(&hexagon(), Level::new(1).unwrap())
                .unwrap()
                .len(),
            19
        );
    }

    #[test]
    fn hexagon_is_integral_from_level_one() {
        let d = hexagon();
        assert!(is_integral(&d, Level::new(1).unwrap()).unwrap().integral);
        assert!(is_integral(&d, Level::half()).unwrap().integral);
        assert_eq!(minimal_level(&d, 10).unwrap(), Level::new(1).unwrap());
        assert_eq!(minimal_level(&tate(), 10).unwrap(), Level::new(1).unwrap());
    }

    #[test]
    fn skew_datum_has_a_non_integral_unit_cell() {
        let d = rank_two(1, 2, 1);
        let v = unit_vertex_representatives(&d).unwrap();
        assert!(v.contains(&vec![qr(3, 2), q(1)]));
    }
}
