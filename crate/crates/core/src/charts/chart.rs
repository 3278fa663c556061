//! Chart algebras `A_{ℓ,α,u}` and their normalizations, seen through weight
//! semigroups in `X̃ = Zm₀ ⊕ X`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::hilbert::{semigroup_generators, SemigroupGenerators};
use crate::arith::matrix::{idet, inverse};
use num::traits::Zero;

use crate::arith::rational::{add_i, dot_i, fmt_ivec, q, sub_i, to_q, IVec, QVec, Q};
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::fan::{delta_translate, tau_cone, tau_cone_from_charts, tilde};
use crate::polyhedra::{Cone, HalfSpace, Polytope};
use crate::report::{Check, Tally};
use crate::voronoi::{box_points, canonical_key, d_value, in_sigma, sigma_points, vor_complex};

/// Largest box scanned when listing the finite set `Δ` of the generation bound.
pub const DELTA_BOX_BUDGET: u64 = 2_000_000;

/// The finite generating set of `A_{ℓ,α,u}` from the generation bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartGenerators {
    /// The base point `α ∈ Σ_ℓ`.
    pub alpha: IVec,
    /// The shift `u ∈ X^∨`.
    pub u: IVec,
    /// `M = max{C_ℓ(γ) : γ ∈ Σ_{3ℓ}}`.
    #[serde(serialize_with = "crate::io::ser_q")]
    pub m: Q,
    /// The set `Δ = {x : C_ℓ(x) ≤ C_ℓ(x - λ) + 2M for all λ ∈ Σ_{2ℓ} - α}`.
    pub delta: Vec<IVec>,
    /// `m₀` and the weights `(D_ℓ(x) + u(x - α))m₀ + (x - α)` for `x ∈ Δ ∪ Σ_{2ℓ}`.
    pub weights: Vec<IVec>,
}

/// `M = max{C_ℓ(γ) : γ ∈ Σ_{3ℓ}}`.
pub fn generation_constant(datum: &FcDatum, level: Level) -> Result<Q> {
    let pts = sigma_points(datum, level.times(3))?;
    Ok(pts
        .iter()
        .map(|g| datum.c_value(level, g))
        .max()
        .unwrap_or_else(|| q(0)))
}

/// The set `Δ` for base point `alpha`. Its defining condition
/// `C_ℓ(x) ≤ C_ℓ(x - λ) + 2M` is the linear inequality
/// `2B(x, λ) ≤ B(λ, λ) + 8ℓNM`, so `Δ` is the set of lattice points of a polytope.
pub fn generation_delta(datum: &FcDatum, level: Level, alpha: &[i64], m: &Q) -> Result<Vec<IVec>> {
    let g = datum.rank();
    let sig2 = sigma_points(datum, level.times(2))?;
    let slack = m * q(4 * level.k() * datum.n_index());
    let mut ineqs = Vec::new();
    for s in &sig2 {
        let lam = to_q(&sub_i(s, alpha));
        if lam.iter().all(|c| c.is_zero()) {
            continue;
        }
        let row = crate::arith::matrix::mat_vec(datum.b(), &lam);
        let off = crate::arith::rational::dot(&row, &lam) + &slack;
        ineqs.push(HalfSpace::new(row.iter().map(|x| -x * q(2)).collect(), off));
    }
    ineqs.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
    ineqs.dedup();
    let poly = Polytope::from_inequalities_with(g, &ineqs, &[], datum.limits())?;
    let (lo, hi) = integer_box(&poly);
    let total = lo
        .iter()
        .zip(&hi)
        .try_fold(1u64, |acc, (a, b)| {
            acc.checked_mul((b - a + 1).max(0) as u64)
        })
        .unwrap_or(u64::MAX);
    if total > DELTA_BOX_BUDGET {
        return Err(Error::TooLarge(format!(
            "the generation bound spans {total} lattice points"
        )));
    }
    let rows: Vec<(Vec<i128>, i128)> = poly
        .facets()
        .iter()
        .map(integer_row)
        .collect::<Result<_>>()?;
    Ok(box_points(&lo, &hi)
        .into_iter()
        .filter(|x| {
            rows.iter()
                .all(|(a, c)| a.iter().zip(x).map(|(p, &t)| p * t as i128).sum::<i128>() + c >= 0)
        })
        .collect())
}

/// `h` scaled by the common denominator of its entries.
fn integer_row(h: &HalfSpace) -> Result<(Vec<i128>, i128)> {
    let mut den = num::BigInt::from(1);
    for x in h.normal.iter().chain(std::iter::once(&h.offset)) {
        den = num::integer::Integer::lcm(&den, x.denom());
    }
    let scale = Q::from_integer(den);
    let conv = |x: &Q| -> Result<i128> {
        num::traits::ToPrimitive::to_i128(&(x * &scale).to_integer())
            .ok_or_else(|| Error::TooLarge("inequality coefficients overflow".into()))
    };
    Ok((
        h.normal.iter().map(conv).collect::<Result<_>>()?,
        conv(&h.offset)?,
    ))
}

fn integer_box(p: &Polytope) -> (IVec, IVec) {
    let g = p.ambient_dim();
    let mut lo = vec![i64::MAX; g];
    let mut hi = vec![i64::MIN; g];
    for v in p.vertices() {
        for j in 0..g {
            lo[j] = lo[j].min(v[j].floor().to_integer().try_into().unwrap_or(i64::MIN / 4));
            hi[j] = hi[j].max(v[j].ceil().to_integer().try_into().unwrap_or(i64::MAX / 4));
        }
    }
    (lo, hi)
}

/// The finite generating set of `A_{ℓ,α,u}` over `R`: weights of `σ_{ℓ,v}`
/// for `v ∈ Δ ∪ Σ_{2ℓ}`, shifted by `u`, together with `m₀`.
pub fn chart_generators(
    datum: &FcDatum,
    level: Level,
    alpha: &[i64],
    u: &[i64],
) -> Result<ChartGenerators> {
    if !in_sigma(datum, level, alpha)? {
        return Err(Error::NotInSigma(fmt_ivec(alpha)));
    }
    let m = generation_constant(datum, level)?;
    let delta = generation_delta(datum, level, alpha, &m)?;
    let mut pts: BTreeSet<IVec> = delta.iter().cloned().collect();
    pts.extend(sigma_points(datum, level.times(2))?);
    let g = datum.rank();
    let mut weights: BTreeSet<IVec> = BTreeSet::new();
    let mut m0 = vec![0i64; g + 1];
    m0[0] = 1;
    weights.insert(m0);
    for x in pts {
        let rel = sub_i(&x, alpha);
        if rel.iter().all(|&c| c == 0) {
            continue;
        }
        let mut w = vec![d_value(datum, level, &x)? + dot_i(u, &rel)];
        w.extend(rel);
        weights.insert(w);
    }
    Ok(ChartGenerators {
        alpha: alpha.to_vec(),
        u: u.to_vec(),
        m,
        delta,
        weights: weights.into_iter().collect(),
    })
}

/// A chart `B_{ℓ,ρ,u}` at a face `ρ` of `Vor_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialChart {
    /// Vertices of the face `ρ`.
    pub face: Vec<IVec>,
    /// Dimension of `ρ`.
    pub face_dim: usize,
    /// The shift `u`.
    pub u: IVec,
    /// The fan cone `τ_{ℓ,ρ,u} = δ_u(τ_{ℓ,ρ})`.
    pub cone: Cone,
    /// Its dual, the cone of the chart weights.
    pub weight_cone: Cone,
    /// Generators of `τ^∨ ∩ X̃`.
    pub semigroup: SemigroupGenerators,
    /// Set when `ρ` is a maximal cell, so the chart is a torus.
    pub torus: bool,
    /// The generators form a basis of `X̃` (a regular chart).
    pub unimodular: bool,
    /// The same cone is obtained from `(ρ + 2ℓφ(v), u - v)` for `v = e_1`.
    pub well_defined: bool,
}

impl MonomialChart {
    /// The saturated semigroup contains `x`.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.weight_cone.contains(&to_q(x))
    }
}

/// The chart at the face `ρ` (given by its vertices) with shift `u`.
pub fn chart_ring(
    datum: &FcDatum,
    level: Level,
    face: &[IVec],
    u: &[i64],
) -> Result<MonomialChart> {
    let g = datum.rank();
    let tau = tau_cone(datum, level, face)?;
    let face_dim =
        Polytope::affine_rank(&face.iter().map(|v| to_q(v)).collect::<Vec<_>>()).max(0) as usize;
    let cone = delta_translate(&tau, u)?;
    let weight_cone = cone.dual();
    let semigroup = semigroup_generators(&weight_cone, datum.limits().hilbert_dim_cap)?;
    let mut rows: Vec<IVec> = semigroup.lineality.clone();
    rows.extend(semigroup.hilbert.iter().cloned());
    let unimodular = rows.len() == g + 1 && idet(&rows).abs() == 1;
    let mut e1 = vec![0i64; g];
    e1[0] = 1;
    let s = datum.shift(level, &e1);
    let moved: Vec<IVec> = face.iter().map(|v| add_i(v, &s)).collect();
    let other = delta_translate(&tau_cone(datum, level, &moved)?, &sub_i(u, &e1))?;
    Ok(MonomialChart {
        face: face.to_vec(),
        face_dim,
        u: u.to_vec(),
        well_defined: other == cone,
        cone,
        weight_cone,
        semigroup,
        torus: face_dim == g,
        unimodular,
    })
}

/// Whether a product of two chart monomials survives in the closed fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberProduct {
    /// First factor.
    pub left: IVec,
    /// Second factor.
    pub right: IVec,
    /// Weight of the product.
    pub product: IVec,
    /// The product is divisible by `s`, hence zero in the closed fiber.
    pub zero: bool,
}

/// The monomial presentation of `B_{ℓ,ρ,u} ⊗ k(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberTable {
    /// The generators other than `m₀`; lineality basis vectors appear with both signs.
    pub generators: Vec<IVec>,
    /// All products of two distinct generators.
    pub products: Vec<FiberProduct>,
    /// Index sets of generators whose product vanishes while every proper
    /// subproduct survives; these monomials generate the fiber relations.
    pub minimal_zero_monomials: Vec<Vec<usize>>,
}

impl FiberTable {
    /// The products that vanish.
    pub fn zero_products(&self) -> Vec<&FiberProduct> {
        self.products.iter().filter(|p| p.zero).collect()
    }
}

/// Classifies each product of two distinct generators: it vanishes in the
/// closed fiber exactly when it is `s` times an element of the chart.
pub fn fiber_presentation(chart: &MonomialChart) -> FiberTable {
    let d = chart.cone.ambient_dim();
    let m0 = tilde(1, &vec![0; d - 1]);
    let mut gens: Vec<IVec> = chart
        .semigroup
        .all()
        .into_iter()
        .filter(|h| to_q(h) != m0)
        .collect();
    gens.sort();
    gens.dedup();
    let mut products = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let p = add_i(&gens[i], &gens[j]);
            let mut lowered = p.clone();
            lowered[0] -= 1;
            products.push(FiberProduct {
                left: gens[i].clone(),
                right: gens[j].clone(),
                zero: chart.contains(&lowered),
                product: p,
            });
        }
    }
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for size in 2..=d.min(gens.len()) {
        for subset in subsets(gens.len(), size) {
            if minimal.iter().any(|m| m.iter().all(|i| subset.contains(i))) {
                continue;
            }
            let mut lowered = vec![0i64; d];
            for &i in &subset {
                lowered = add_i(&lowered, &gens[i]);
            }
            lowered[0] -= 1;
            if chart.contains(&lowered) {
                minimal.push(subset);
            }
        }
    }
    FiberTable {
        generators: gens,
        products,
        minimal_zero_monomials: minimal,
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in size - 1..n {
        for mut s in subsets(last, size - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

/// The constants of the `I`-adic bound and the exponent it gives at `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IadicBound {
    /// `M = max{C_ℓ(γ) : γ ∈ Σ_{3ℓ}}`.
    #[serde(serialize_with = "crate::io::ser_q")]
    pub m: Q,
    /// `M* = 16M·2^j` for the least `j` with `Δ ∪ Σ_{3ℓ} ⊆ {C_ℓ ≤ M*}`.
    #[serde(serialize_with = "crate::io::ser_q")]
    pub m_star: Q,
    /// `C_ℓ(x)`.
    #[serde(serialize_with = "crate::io::ser_q")]
    pub c_x: Q,
    /// The largest `t ≥ 0` with `C_ℓ(x) ≥ 2^t M*`, and `0` if there is none.
    pub t: u32,
}

/// The `I`-adic exponent of `σ_{ℓ,x}` in `A_{ℓ,α,u}`.
pub fn iadic_bound(
    datum: &FcDatum,
    level: Level,
    alpha: &[i64],
    _u: &[i64],
    x: &[i64],
) -> Result<IadicBound> {
    if !in_sigma(datum, level, alpha)? {
        return Err(Error::NotInSigma(fmt_ivec(alpha)));
    }
    let m = generation_constant(datum, level)?;
    let delta = generation_delta(datum, level, alpha, &m)?;
    let mut far = delta
        .iter()
        .map(|p| datum.c_value(level, p))
        .max()
        .unwrap_or_else(|| q(0));
    for p in sigma_points(datum, level.times(3))? {
        far = far.max(datum.c_value(level, &p));
    }
    let mut m_star = &m * q(16);
    while m_star < far {
        m_star *= q(2);
    }
    let c_x = datum.c_value(level, x);
    let mut t = 0u32;
    if m_star > q(0) {
        while c_x >= &m_star * q(1i64 << (t + 1).min(62)) {
            t += 1;
        }
    }
    Ok(IadicBound { m, m_star, c_x, t })
}

/// The result of comparing levels `ℓ` and `ℓℓ′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingReport {
    /// Every clause.
    pub checks: Vec<Check>,
}

impl ScalingReport {
    /// True when every clause holds.
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// Compares chart cones at `(ℓ, α, u)` and `(ℓℓ′, ℓ′α, u)` for the first
/// `samples` points of `Σ_ℓ` and a few shifts, and checks that the faces of
/// `Vor_{ℓℓ′}` are the `ℓ′`-dilates of those of `Vor_ℓ`.
pub fn scaling_check(
    datum: &FcDatum,
    level: Level,
    l2: u64,
    samples: usize,
) -> Result<ScalingReport> {
    let g = datum.rank();
    let big = level.times(l2);
    let mut t_cone = Tally::new("chart cones agree at the scaled base point");
    let mut shifts = vec![vec![0i64; g]];
    for i in 0..g {
        let mut e = vec![0i64; g];
        e[i] = 1;
        shifts.push(e);
    }
    for a in sigma_points(datum, level)?.into_iter().take(samples) {
        let scaled: IVec = a.iter().map(|c| c * l2 as i64).collect();
        for u in &shifts {
            let c1 = tau_cone_from_charts(datum, level, &a, u)?;
            let c2 = tau_cone_from_charts(datum, big, &scaled, u)?;
            t_cone.record(c1 == c2, || {
                format!("{} with u = {}", fmt_ivec(&a), fmt_ivec(u))
            });
        }
    }
    let small = vor_complex(datum, level)?;
    let large = vor_complex(datum, big)?;
    let mut t_vor = Tally::new("faces of the scaled complex are dilates");
    let mut keys: BTreeSet<Vec<IVec>> = BTreeSet::new();
    for f in small.faces() {
        let dil: Vec<IVec> = f
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| c * l2 as i64).collect())
            .collect();
        keys.insert(canonical_key(&dil, large.translation_lattice()).0);
    }
    let large_keys: BTreeSet<Vec<IVec>> =
        large.faces().iter().map(|f| f.vertices.clone()).collect();
    t_vor.record(keys == large_keys, || {
        format!("{} against {} classes", keys.len(), large_keys.len())
    });
    Ok(ScalingReport {
        checks: vec![t_cone.finish(), t_vor.finish()],
    })
}

/// Lattice points of `Σ_ℓ` in the relative interior of the face with the given vertices.
pub fn interior_points(datum: &FcDatum, level: Level, face: &[IVec]) -> Result<Vec<IVec>> {
    let p = Polytope::hull(&face.iter().map(|v| to_q(v)).collect::<Vec<QVec>>())?;
    Ok(sigma_points(datum, level)?
        .into_iter()
        .filter(|x| p.interior_contains(&to_q(x)))
        .collect())
}

/// The lattice `Z m₀ + Semi` generated by the chart weights, as its index in `X̃`
/// (`1` when the weights and `m₀` generate `X̃`).
pub fn weight_lattice_index(weights: &[IVec]) -> i64 {
    if weights.is_empty() {
        return 0;
    }
    let d = weights[0].len();
    let sd = crate::arith::smith::smith(&weights.to_vec());
    if sd.invariant_factors.len() < d {
        0
    } else {
        sd.product()
    }
}

/// Solves for the coordinates of `x` in the basis given by `rows`.
pub fn coordinates(rows: &[IVec], x: &[i64]) -> Option<QVec> {
    let m: Vec<QVec> =
        crate::arith::matrix::transpose(&rows.iter().map(|r| to_q(r)).collect::<Vec<QVec>>());
    inverse(&m).map(|inv| crate::arith::matrix::mat_vec(&inv, &to_q(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::qr;
    use crate::fixtures::{hexagon, tate};

    fn l1() -> Level {
        Level::new(1).unwrap()
    }

    #[test]
    fn tate_boundary_chart() {
        let d = tate();
        let c = chart_ring(&d, l1(), &[vec![1]], &[0]).unwrap();
        assert!(c.semigroup.lineality.is_empty());
        assert_eq!(c.semigroup.hilbert, vec![vec![0, -1], vec![1, 1]]);
        assert!(c.unimodular && c.well_defined && !c.torus);
        let f = fiber_presentation(&c);
        assert_eq!(f.products.len(), 1);
        assert!(f.products[0].zero);
        assert_eq!(f.products[0].product, vec![1, 0]);
        assert_eq!(f.minimal_zero_monomials, vec![vec![0, 1]]);
    }

    #[test]
    fn torus_chart_at_the_central_cell() {
        let d = hexagon();
        let cell: Vec<IVec> = [[-2, -2], [-2, 0], [0, -2], [0, 2], [2, 0], [2, 2]]
            .iter()
            .map(|v| v.to_vec())
            .collect();
        let c = chart_ring(&d, l1(), &cell, &[0, 0]).unwrap();
        assert!(c.torus && c.unimodular);
        assert_eq!(c.semigroup.lineality, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(c.semigroup.hilbert, vec![vec![1, 0, 0]]);
        let f = fiber_presentation(&c);
        assert!(f.zero_products().is_empty() && f.minimal_zero_monomials.is_empty());
    }

    #[test]
    fn tate_generators_saturate_to_the_chart() {
        let d = tate();
        let gens = chart_generators(&d, l1(), &[1], &[0]).unwrap();
        assert_eq!(gens.m, qr(9, 4));
        assert_eq!(gens.delta.first(), Some(&vec![-4]));
        assert_eq!(gens.delta.last(), Some(&vec![9]));
        let wq: Vec<QVec> = gens.weights.iter().map(|w| to_q(w)).collect();
        let cone = Cone::from_generators(2, &wq, &[]).unwrap();
        assert_eq!(cone, tau_cone(&d, l1(), &[vec![1]]).unwrap().dual());
        let interior = chart_generators(&d, l1(), &[0], &[0]).unwrap();
        let wq: Vec<QVec> = interior.weights.iter().map(|w| to_q(w)).collect();
        let cone = Cone::from_generators(2, &wq, &[]).unwrap();
        assert_eq!(cone.lineality().len(), 1);
        assert!(chart_generators(&d, l1(), &[2], &[0]).is_err());
    }

    #[test]
    fn iadic_constants_for_tate() {
        let d = tate();
        let b = iadic_bound(&d, l1(), &[0], &[0], &[0]).unwrap();
        assert_eq!((b.m.clone(), b.m_star.clone(), b.t), (qr(9, 4), q(36), 0));
        assert_eq!(iadic_bound(&d, l1(), &[0], &[0], &[17]).unwrap().t, 1);
        assert_eq!(iadic_bound(&d, l1(), &[0], &[0], &[16]).unwrap().t, 0);
        assert_eq!(iadic_bound(&d, l1(), &[0], &[0], &[24]).unwrap().t, 2);
    }

    #[test]
    fn scaling_examples() {
        assert!(scaling_check(&tate(), l1(), 3, 3).unwrap().passed());
        assert!(scaling_check(&hexagon(), l1(), 2, 7).unwrap().passed());
        assert!(scaling_check(&tate(), l1(), 1, 3).unwrap().passed());
    }

    #[test]
    fn half_level_hexagon_vertex_charts_are_regular() {
        let d = hexagon();
        let cell = crate::voronoi::voronoi_polytope(&d, Level::half()).unwrap();
        assert_eq!(cell.vertices().len(), 6);
        for v in cell.vertices() {
            let c = chart_ring(
                &d,
                Level::half(),
                &[crate::arith::rational::to_i(v).unwrap()],
                &[0, 0],
            )
            .unwrap();
            assert!(c.semigroup.lineality.is_empty());
            assert_eq!(c.semigroup.hilbert.len(), 3);
            assert!(c.unimodular && c.well_defined);
            let f = fiber_presentation(&c);
            assert!(f.zero_products().is_empty());
            assert_eq!(f.minimal_zero_monomials, vec![vec![0, 1, 2]]);
        }
    }

    #[test]
    fn interior_points_of_an_edge() {
        let d = hexagon();
        assert_eq!(
            interior_points(&d, l1(), &[vec![2, 0], vec![2, 2]]).unwrap(),
            vec![vec![2, 1]]
        );
        assert_eq!(
            weight_lattice_index(&[vec![1, 0], vec![0, -1], vec![1, 1]]),
            1
        );
        assert_eq!(
            coordinates(&[vec![1, 0], vec![1, 1]], &[2, 1]).unwrap(),
            vec![q(1), q(1)]
        );
    }
}
