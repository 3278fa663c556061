//! The cones `τ_{ℓ,Δ}` attached to faces of `Vor_ℓ`, built once from the cells
//! containing a face and once from the weights of the chart algebras, and the
//! slice `Cut` at height one.

use std::collections::BTreeSet;

use num::traits::{Signed, Zero};

use super::tilde::{delta_shift_dual, tilde};
use crate::arith::rational::{fmt_ivec, q, sub_i, to_q, IVec, QVec, Q};
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::polyhedra::{Cone, HalfSpace, Polytope};
use crate::voronoi::{cvp_all, cvp_decompose, sigma_points};

/// The inequalities of `Σ_ℓ(z) = Σ_ℓ(0) + 2ℓφ(z)`.
pub fn cell_inequalities(datum: &FcDatum, level: Level, z: &[i64]) -> Result<Vec<HalfSpace>> {
    let shift = datum.shift(level, z);
    let rel = crate::voronoi::relevant_vectors(datum, level)?;
    Ok(rel
        .iter()
        .map(|u| {
            let off = datum.e_level_q(level, u) - q(crate::arith::rational::dot_i(u, &shift));
            HalfSpace::new(to_q(u), off)
        })
        .collect())
}

/// `∩_{z ∈ centers} Σ_ℓ(z)`.
pub fn cell_intersection(datum: &FcDatum, level: Level, centers: &[IVec]) -> Result<Polytope> {
    let mut ineqs = Vec::new();
    for z in centers {
        ineqs.extend(cell_inequalities(datum, level, z)?);
    }
    Polytope::from_inequalities_with(datum.rank(), &ineqs, &[], datum.limits())
}

/// The centers `z` with `Δ ⊆ Σ_ℓ(z)`, for `Δ` given by its vertices.
pub fn containing_centers(datum: &FcDatum, level: Level, vertices: &[IVec]) -> Vec<IVec> {
    let mut it = vertices.iter();
    let Some(first) = it.next() else {
        return Vec::new();
    };
    let mut s: BTreeSet<IVec> = cvp_all(datum, level, first).into_iter().collect();
    for v in it {
        let t: BTreeSet<IVec> = cvp_all(datum, level, v).into_iter().collect();
        s = s.intersection(&t).cloned().collect();
    }
    s.into_iter().collect()
}

/// `τ_{ℓ,Δ} = Cone(f₀ + Conv{v : Δ ⊆ Σ_ℓ(-v)})` for a face `Δ` of `Vor_ℓ`
/// given by its vertices.
pub fn tau_cone(datum: &FcDatum, level: Level, vertices: &[IVec]) -> Result<Cone> {
    if vertices.is_empty() {
        return Err(Error::NotAFace("no vertices".into()));
    }
    let centers = containing_centers(datum, level, vertices);
    if centers.is_empty() {
        return Err(Error::NotAFace("the points lie in no common cell".into()));
    }
    let meet = cell_intersection(datum, level, &centers)?;
    let mut want: Vec<QVec> = vertices.iter().map(|v| to_q(v)).collect();
    want.sort();
    want.dedup();
    if meet.vertices() != &want[..] {
        let shown: Vec<String> = vertices.iter().map(|v| fmt_ivec(v)).collect();
        return Err(Error::NotAFace(shown.join(" ")));
    }
    cone_over_centers(datum.rank(), &centers)
}

/// `Cone{(1, -z) : z ∈ centers}`.
pub fn cone_over_centers(g: usize, centers: &[IVec]) -> Result<Cone> {
    let gens: Vec<QVec> = centers
        .iter()
        .map(|z| tilde(1, &z.iter().map(|c| -c).collect::<IVec>()))
        .collect();
    Cone::from_generators(g + 1, &gens, &[])
}

/// The data `Σ_ℓ^α = (α + 2ℓφ(X^∨)) ∩ Σ_ℓ` with the vectors `v_β` solving
/// `β = α - 2ℓφ(v_β)`.
pub fn sigma_alpha(datum: &FcDatum, level: Level, alpha: &[i64]) -> Result<Vec<(IVec, IVec)>> {
    let lat = datum.translation_lattice(level);
    let gram_inv = crate::arith::matrix::inverse(datum.gram_q())
        .ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
    let k = q(level.k());
    let mut out = Vec::new();
    for beta in sigma_points(datum, level)? {
        let diff = sub_i(alpha, &beta);
        if !lat.contains(&diff) {
            continue;
        }
        let v = crate::arith::matrix::mat_vec(&gram_inv, &to_q(&diff));
        let v: IVec = v
            .iter()
            .map(|x| crate::arith::rational::q_to_i64(&(x / &k)))
            .collect::<Option<IVec>>()
            .ok_or_else(|| Error::Internal("v_beta is not integral".into()))?;
        out.push((beta, v));
    }
    Ok(out)
}

/// The weights generating the chart cone at `a` with shift `u`: `m₀` together
/// with `((v_β + w)(γ - β), γ - β)` for `β ∈ Σ_ℓ^α` and `γ ∈ Σ_ℓ`, where
/// `a = α + 2ℓφ(w - u)` is the decomposition of `a`.
pub fn chart_cone_weights(
    datum: &FcDatum,
    level: Level,
    a: &[i64],
    u: &[i64],
) -> Result<Vec<QVec>> {
    let dec = cvp_decompose(datum, level, a);
    let alpha = dec.gamma;
    let w: IVec = dec.z.iter().zip(u).map(|(x, y)| x + y).collect();
    let sig = sigma_points(datum, level)?;
    let g = datum.rank();
    let mut gens: BTreeSet<QVec> = BTreeSet::new();
    gens.insert(tilde(1, &vec![0; g]));
    for (beta, v) in sigma_alpha(datum, level, &alpha)? {
        let vw: IVec = v.iter().zip(&w).map(|(x, y)| x + y).collect();
        for gamma in &sig {
            let x = sub_i(gamma, &beta);
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            gens.insert(crate::arith::rational::primitive(&tilde(
                crate::arith::rational::dot_i(&vw, &x),
                &x,
            )));
        }
    }
    Ok(gens.into_iter().collect())
}

/// `τ_{ℓ,a,u}` as the dual of the cone over the chart weights.
pub fn tau_cone_from_charts(datum: &FcDatum, level: Level, a: &[i64], u: &[i64]) -> Result<Cone> {
    let gens = chart_cone_weights(datum, level, a, u)?;
    Ok(Cone::from_generators(datum.rank() + 1, &gens, &[])?.dual())
}

/// The image of a cone under the dual translation `δ_w`, which moves `Cut` by `-w`.
pub fn delta_translate(cone: &Cone, w: &[i64]) -> Result<Cone> {
    let rays: Vec<QVec> = cone.rays().iter().map(|r| delta_shift_dual(r, w)).collect();
    let lin: Vec<QVec> = cone
        .lineality()
        .iter()
        .map(|r| delta_shift_dual(r, w))
        .collect();
    Cone::from_generators(cone.ambient_dim(), &rays, &lin)
}

/// `Cut(σ) = -f₀ + σ ∩ (f₀ + X^∨_ℝ)`; empty for the zero cone.
pub fn cut(cone: &Cone) -> Result<Polytope> {
    let g = cone.ambient_dim() - 1;
    if cone.is_zero() {
        return Ok(Polytope::empty(g));
    }
    if !cone.is_pointed() {
        return Err(Error::Unbounded("Cut of a cone with lineality".into()));
    }
    let mut pts = Vec::new();
    for r in cone.rays() {
        if !r[0].is_positive() {
            return Err(Error::Unbounded("Cut of a cone with a ray in X^∨".into()));
        }
        pts.push(r[1..].iter().map(|x| x / &r[0]).collect::<QVec>());
    }
    Polytope::hull(&pts)
}

/// `Cone(f₀ + P)` for a nonempty polytope `P ⊆ X^∨_ℝ`.
pub fn cone_over(p: &Polytope) -> Result<Cone> {
    let gens: Vec<QVec> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut t = vec![Q::from_integer(1.into())];
            t.extend(v.iter().cloned());
            t
        })
        .collect();
    Cone::from_generators(p.ambient_dim() + 1, &gens, &[])
}

/// True when the cone meets `X^∨_ℝ = {u₀ = 0}` only in the origin.
pub fn meets_xdual_trivially(cone: &Cone) -> Result<bool> {
    let d = cone.ambient_dim();
    let mut e0 = vec![Q::zero(); d];
    e0[0] = q(1);
    let slice = Cone::from_inequalities(
        d,
        cone.facets(),
        &[cone.equations().to_vec(), vec![e0]].concat(),
    )?;
    Ok(slice.is_zero())
}
