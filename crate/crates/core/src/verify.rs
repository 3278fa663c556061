//! Seeded property suites over random small degeneration data.
//!
//! Each case draws a datum of rank at most three from a `ChaCha8` stream,
//! finds its minimal integral level and runs every suite that applies. The
//! report depends only on the seed and the number of cases.

use std::fmt::Write as _;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::matrix::{imat_mul, transpose};
use crate::arith::rational::{fmt_ivec, q, to_q, IVec, QVec};
use crate::charts::{chart_generators, hilbert_basis, scaling_check, weight_lattice_index};
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::fan::{
    build_fan, check_fan_over_s, cone_over_centers, containing_centers, cut_bijection_report,
    delta_translate, tau_cone, tau_cone_from_charts,
};
use crate::monomial::{fourier_rank, monomial_identities, power_law_check, valuation_identities};
use crate::polyhedra::{Cone, HalfSpace, Polytope};
use crate::report::{Check, Tally};
use crate::strata::{checked_stratification, component_group, strata_scaling_check};
use crate::voronoi::{
    box_points, cvp_all_q, d_value, in_sigma, in_sigma_q, minimal_level, relevant_vectors,
    voronoi_polytope,
};

/// Default number of random cases.
pub const DEFAULT_CASES: usize = 200;

/// Largest level searched for integrality of a random datum.
pub const LEVEL_CAP: u64 = 4;

/// Rank-three data enter the fan, bijection and stratification suites once per this many cases.
pub const RANK_THREE_STRIDE: usize = 10;

/// Data of rank above one enter the generation-bound and scaling suites once per this many cases.
pub const CHART_STRIDE: usize = 4;

/// Largest `N = |det β|` of data entering the generation-bound and scaling suites.
pub const HEAVY_INDEX_CAP: i64 = 9;

/// Largest `N = |det β|` of rank-three data entering the fan, bijection and stratification suites.
pub const RANK_THREE_INDEX_CAP: i64 = 4;

/// The outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Schema tag.
    pub schema: String,
    /// The seed.
    pub seed: u64,
    /// Number of random data drawn.
    pub cases: usize,
    /// Data whose integral level exceeded the cap; they only enter the level-free suites.
    pub without_level: usize,
    /// One summary per property.
    pub suites: Vec<Check>,
}

impl VerifyReport {
    /// True when every property held on every case.
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.suites)
    }

    /// One line per property.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "seed {} cases {} without-level {}\n",
            self.seed, self.cases, self.without_level
        );
        for c in &self.suites {
            let _ = writeln!(out, "{c}");
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed() {
                "all properties hold"
            } else {
                "FAILURES"
            }
        );
        out
    }
}

fn random_unimodular<R: Rng>(rng: &mut R, g: usize) -> Vec<IVec> {
    let mut u = crate::arith::matrix::identity_i(g);
    for _ in 0..rng.random_range(0..=2) {
        if g < 2 {
            break;
        }
        let i = rng.random_range(0..g);
        let j = (i + rng.random_range(1..g)) % g;
        let s = if rng.random_bool(0.5) { 1 } else { -1 };
        for r in u.iter_mut() {
            r[j] += s * r[i];
        }
    }
    u
}

/// A random datum of rank one to three: a positive definite integer form,
/// transformed by a small unimodular change of basis, with `Y = X` or `Y`
/// of index two.
pub fn random_datum<R: Rng>(rng: &mut R) -> FcDatum {
    loop {
        let g = [1usize, 2, 2, 3][rng.random_range(0..4)];
        let mut b = vec![vec![0i64; g]; g];
        for i in 0..g {
            b[i][i] = if g == 3 {
                rng.random_range(2..=3)
            } else {
                rng.random_range(1..=3)
            };
            for j in 0..i {
                let v = rng.random_range(-1..=1);
                b[i][j] = v;
                b[j][i] = v;
            }
        }
        let u = if g < 3 {
            random_unimodular(rng, g)
        } else {
            crate::arith::matrix::identity_i(g)
        };
        let b = imat_mul(&imat_mul(&transpose(&u), &b), &u);
        let mut y = crate::arith::matrix::identity_i(g);
        if rng.random_range(0..4) == 0 {
            let i = rng.random_range(0..g);
            y[i][i] = 2;
        }
        if let Ok(d) = FcDatum::new(y, crate::arith::matrix::imat_to_q(&b), None) {
            return d;
        }
    }
}

/// The face of `Σ_ℓ(0)` whose relative interior contains `a`.
fn carrier_face(cell: &Polytope, a: &[i64]) -> Option<Vec<IVec>> {
    let x = to_q(a);
    for f in cell.faces() {
        let pts = cell.face_points(&f);
        let p = Polytope::hull(&pts).ok()?;
        if p.interior_contains(&x) {
            return pts
                .iter()
                .map(|v| crate::arith::rational::to_i(v))
                .collect();
        }
    }
    None
}

/// Irreducible nonzero lattice points of a full-dimensional pointed cone,
/// found by listing every lattice point up to the largest degree of the
/// zonotope `Σ[0,1]r` and discarding sums of two nonzero lattice points.
pub fn brute_force_hilbert(cone: &Cone) -> Option<Vec<IVec>> {
    let d = cone.ambient_dim();
    let facets: Vec<IVec> = cone
        .facets()
        .iter()
        .map(|f| crate::arith::rational::to_i(f))
        .collect::<Option<_>>()?;
    let deg: IVec = (0..d).map(|j| facets.iter().map(|f| f[j]).sum()).collect();
    let rays: Vec<IVec> = cone
        .rays()
        .iter()
        .map(|r| crate::arith::rational::to_i(r))
        .collect::<Option<_>>()?;
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let top: i64 = rays.iter().map(|r| dot(&deg, r)).sum();
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for r in &rays {
        let rd = dot(&deg, r);
        for j in 0..d {
            let scaled = r[j] * top;
            lo[j] = lo[j].min(scaled.div_euclid(rd));
            hi[j] = hi[j].max(-(-scaled).div_euclid(rd));
        }
    }
    let inside = |x: &[i64]| facets.iter().all(|f| dot(f, x) >= 0);
    let pool: Vec<IVec> = box_points(&lo, &hi)
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0) && dot(&deg, x) <= top && inside(x))
        .collect();
    let set: std::collections::BTreeSet<&IVec> = pool.iter().collect();
    let mut out: Vec<IVec> = pool
        .iter()
        .filter(|p| {
            !pool.iter().any(|a| {
                let b: IVec = p.iter().zip(a).map(|(x, y)| x - y).collect();
                b.iter().any(|&c| c != 0) && set.contains(&b)
            })
        })
        .cloned()
        .collect();
    out.sort();
    Some(out)
}

fn random_cone<R: Rng>(rng: &mut R) -> Option<Cone> {
    let d = rng.random_range(2..=3);
    let n = rng.random_range(d..=d + 1);
    let rays: Vec<QVec> = (0..n)
        .map(|_| {
            let mut r = vec![rng.random_range(1..=3)];
            r.extend((1..d).map(|_| rng.random_range(-3..=3)));
            to_q(&r)
        })
        .collect();
    let c = Cone::from_generators(d, &rays, &[]).ok()?;
    (c.dim() == d).then_some(c)
}

struct Suites {
    identities: Tally,
    monomials: Tally,
    power: Tally,
    fourier: Tally,
    components: Tally,
    d_zero: Tally,
    covering: Tally,
    fan: Tally,
    bijection: Tally,
    tau_charts: Tally,
    generators: Tally,
    scaling: Tally,
    strata: Tally,
    saturation: Tally,
    hilbert: Tally,
    round_trip: Tally,
    duality: Tally,
    minkowski: Tally,
    brute_sigma: Tally,
    relevant: Tally,
    sigma_scaling: Tally,
    skeleton: Tally,
}

impl Suites {
    fn new() -> Suites {
        Suites {
            identities: Tally::new("valuation identities of E, φ and B"),
            monomials: Tally::new("monomial actions and unit equivalence"),
            power: Tally::new("Fourier exponents compose"),
            fourier: Tally::new("Fourier rank |X/mY| = m^g [X:Y]"),
            components: Tally::new("component group order = |det β|"),
            d_zero: Tally::new("D_ℓ ≥ 0 with zero set Σ_ℓ"),
            covering: Tally::new("cells Σ_ℓ(z) cover X_R"),
            fan: Tally::new("fan over S clauses and their equivalence"),
            bijection: Tally::new("Cut bijection, dimensions and σ = Cone(f₀ + Cut σ)"),
            tau_charts: Tally::new("τ from cells = τ from chart weights"),
            generators: Tally::new("chart generators saturate to τ^∨ and generate X̃ with m₀"),
            scaling: Tally::new("cones and complexes invariant under ℓ ↦ ℓℓ′"),
            strata: Tally::new("orbit counts, components and Euler characteristic"),
            saturation: Tally::new("saturation is idempotent"),
            hilbert: Tally::new("Hilbert basis agrees with brute force"),
            round_trip: Tally::new("hull and inequality descriptions round-trip"),
            duality: Tally::new("the dual of the dual cone is the cone"),
            minkowski: Tally::new("nP is the n-fold Minkowski sum of P"),
            brute_sigma: Tally::new("Σ_ℓ(0) equals the brute-force half-space intersection"),
            relevant: Tally::new("coset-relevant vectors are exactly the facet normals"),
            sigma_scaling: Tally::new("Σ_ℓℓ′(0) = ℓ′Σ_ℓ(0)"),
            skeleton: Tally::new("τ from the vertices of ρ = τ from all of ρ ∩ Σ_ℓ"),
        }
    }

    fn finish(self) -> Vec<Check> {
        vec![
            self.identities.finish(),
            self.monomials.finish(),
            self.power.finish(),
            self.fourier.finish(),
            self.components.finish(),
            self.d_zero.finish(),
            self.covering.finish(),
            self.fan.finish(),
            self.bijection.finish(),
            self.tau_charts.finish(),
            self.generators.finish(),
            self.scaling.finish(),
            self.strata.finish(),
            self.saturation.finish(),
            self.hilbert.finish(),
            self.round_trip.finish(),
            self.duality.finish(),
            self.minkowski.finish(),
            self.brute_sigma.finish(),
            self.relevant.finish(),
            self.sigma_scaling.finish(),
            self.skeleton.finish(),
        ]
    }
}

fn label(datum: &FcDatum) -> String {
    let rows: Vec<String> = datum
        .b()
        .iter()
        .map(|r| crate::arith::rational::fmt_qvec(r))
        .collect();
    let y: Vec<String> = datum.y_basis().iter().map(|r| fmt_ivec(r)).collect();
    format!("B = {} Y = {}", rows.join(""), y.join(""))
}

fn err_text(e: &Error) -> String {
    format!("error: {e}")
}

fn level_suites<R: Rng>(
    rng: &mut R,
    datum: &FcDatum,
    level: Level,
    s: &mut Suites,
    case: usize,
) -> Result<()> {
    let g = datum.rank();
    let name = || format!("{} at level {level}", label(datum));
    let seed = rng.random::<u64>();
    let r = monomial_identities(datum, level, 8, seed)?;
    s.monomials
        .record(r.passed(), || format!("{}: {:?}", name(), r.checks));

    let mut ok = true;
    for x in box_points(&vec![-3; g], &vec![3; g]) {
        let d = d_value(datum, level, &x)?;
        ok &= d >= 0 && (d == 0) == in_sigma(datum, level, &x)?;
    }
    s.d_zero.record(ok, name);

    let mut ok = true;
    for _ in 0..6 {
        let x: QVec = (0..g)
            .map(|_| q(rng.random_range(-12..=12)) / q(rng.random_range(1..=4)))
            .collect();
        let centers = cvp_all_q(datum, level, &x);
        ok &= !centers.is_empty();
        for z in &centers {
            let back: QVec = x
                .iter()
                .zip(datum.shift(level, z))
                .map(|(a, b)| a - q(b))
                .collect();
            ok &= in_sigma_q(datum, level, &back)?;
        }
    }
    s.covering.record(ok, name);

    let cell = voronoi_polytope(datum, level)?;
    let sig = crate::voronoi::sigma_points(datum, level)?;
    let mut ok = true;
    for _ in 0..if g == 3 { 1 } else { 2 } {
        let a = &sig[rng.random_range(0..sig.len())];
        let u: IVec = (0..g).map(|_| rng.random_range(-1..=1)).collect();
        let Some(face) = carrier_face(&cell, a) else {
            ok = false;
            continue;
        };
        ok &= tau_cone_from_charts(datum, level, a, &u)?
            == delta_translate(&tau_cone(datum, level, &face)?, &u)?;
    }
    s.tau_charts.record(ok, name);

    let a = &sig[rng.random_range(0..sig.len())];
    let face = carrier_face(&cell, a).ok_or_else(|| Error::Internal("no carrier face".into()))?;
    let dual = tau_cone(datum, level, &face)?.dual();
    let mut extra = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<IVec> = {
        let hull = Polytope::hull(&face.iter().map(|v| to_q(v)).collect::<Vec<_>>())?;
        sig.iter()
            .filter(|x| hull.contains(&to_q(x)))
            .cloned()
            .collect()
    };
    s.skeleton.record(
        cone_over_centers(g, &containing_centers(datum, level, &all))?
            == tau_cone(datum, level, &face)?,
        || format!("{} at {}", name(), fmt_ivec(a)),
    );
    sigma_suites(&mut extra, datum, level, &cell, s)?;
    let small = datum.n_index() <= HEAVY_INDEX_CAP;
    let sparse = small && (g == 1 || case.is_multiple_of(CHART_STRIDE));
    if g <= 2 && sparse {
        let gens = chart_generators(datum, level, a, &vec![0; g])?;
        let wq: Vec<QVec> = gens.weights.iter().map(|w| to_q(w)).collect();
        let cone = Cone::from_generators(g + 1, &wq, &[])?;
        s.generators.record(
            cone == dual && weight_lattice_index(&gens.weights) == 1,
            || format!("{} at {}", name(), fmt_ivec(a)),
        );
    }
    if dual.is_pointed() {
        let hb = hilbert_basis(&dual)?;
        let again =
            Cone::from_generators(g + 1, &hb.iter().map(|h| to_q(h)).collect::<Vec<_>>(), &[])?;
        s.saturation
            .record(again == dual && hilbert_basis(&again)? == hb, || {
                format!("{} at {}", name(), fmt_ivec(a))
            });
    }

    let heavy = g <= 2
        || (datum.n_index() <= RANK_THREE_INDEX_CAP && case.is_multiple_of(RANK_THREE_STRIDE));
    if heavy {
        let fan = build_fan(datum, level)?;
        let fc = check_fan_over_s(&fan)?;
        s.fan
            .record(fc.passed(), || format!("{}: {:?}", name(), fc.checks));
        let br = cut_bijection_report(datum, level)?;
        let dims_ok = br.dim_pairs.iter().all(|(a, b)| a + b == g);
        s.bijection.record(br.passed() && dims_ok, || {
            format!("{}: {:?}", name(), br.checks)
        });
        let (_, checks) = checked_stratification(datum, level)?;
        s.strata.record(crate::report::all_passed(&checks), || {
            format!("{}: {:?}", name(), checks)
        });
    }
    if g <= 2 && level.twice() <= 2 && sparse {
        let l2 = rng.random_range(2..=3);
        let sc = scaling_check(datum, level, l2, 3)?;
        let st = strata_scaling_check(datum, level, l2)?;
        s.scaling.record(sc.passed() && st.passed, || {
            format!("{} with ℓ′ = {l2}", name())
        });
    }
    Ok(())
}

fn sigma_suites<R: Rng>(
    rng: &mut R,
    datum: &FcDatum,
    level: Level,
    cell: &Polytope,
    s: &mut Suites,
) -> Result<()> {
    let g = datum.rank();
    let name = || format!("{} at level {level}", label(datum));
    let rel = relevant_vectors(datum, level)?;
    let r = rel.iter().flatten().map(|c| c.abs()).max().unwrap_or(0) + 1;
    let halves: Vec<(IVec, HalfSpace)> = box_points(&vec![-r; g], &vec![r; g])
        .into_iter()
        .filter(|u| u.iter().any(|&c| c != 0))
        .map(|u| {
            let h = HalfSpace::new(to_q(&u), datum.e_level_q(level, &u));
            (u, h)
        })
        .collect();
    let ineqs: Vec<HalfSpace> = halves.iter().map(|(_, h)| h.clone()).collect();
    let brute = Polytope::from_inequalities(g, &ineqs, &[])?;
    s.brute_sigma.record(&brute == cell, name);
    let facet_normals: Vec<IVec> = halves
        .iter()
        .filter(|(_, h)| {
            let tight: Vec<QVec> = brute
                .vertices()
                .iter()
                .filter(|v| h.eval(v).is_zero())
                .cloned()
                .collect();
            Polytope::affine_rank(&tight) == g as isize - 1
        })
        .map(|(u, _)| u.clone())
        .collect();
    s.relevant.record(facet_normals == rel, name);
    let l2 = rng.random_range(2..=3u64);
    let scaled = voronoi_polytope(datum, level.times(l2))?;
    s.sigma_scaling
        .record(scaled == cell.scale(&q(l2 as i64))?, || {
            format!("{} with ℓ′ = {l2}", name())
        });
    Ok(())
}

fn random_points<R: Rng>(rng: &mut R) -> Vec<QVec> {
    let d = rng.random_range(1..=4);
    let n = rng.random_range(1..=d + 4);
    (0..n)
        .map(|_| (0..d).map(|_| q(rng.random_range(-3..=3))).collect())
        .collect()
}

fn polyhedra_suites<R: Rng>(rng: &mut R, s: &mut Suites) -> Result<()> {
    let pts = random_points(rng);
    let p = Polytope::hull(&pts)?;
    let back = Polytope::from_inequalities(p.ambient_dim(), p.facets(), p.equations())?;
    s.round_trip.record(back == p, || format!("{pts:?}"));
    if let Some(c) = random_cone(rng) {
        s.duality
            .record(c.dual().dual() == c, || format!("{:?}", c.rays()));
    }
    let mut pts = random_points(rng);
    pts.push(vec![q(0); pts[0].len()]);
    let p = Polytope::hull(&pts)?;
    let n = rng.random_range(2..=3);
    let mut sum = p.clone();
    for _ in 1..n {
        sum = sum.minkowski(&p)?;
    }
    s.minkowski
        .record(sum == p.scale(&q(n))?, || format!("{pts:?} with n = {n}"));
    Ok(())
}

/// Runs every property suite on `cases` random data drawn from `seed`.
pub fn run_suites(seed: u64, cases: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Suites::new();
    let mut without_level = 0;
    for case in 0..cases {
        let datum = random_datum(&mut rng);
        let g = datum.rank();
        let sub_seed = rng.random::<u64>();
        let r = valuation_identities(&datum, 10, sub_seed);
        s.identities
            .record(r.passed(), || format!("{}: {:?}", label(&datum), r.checks));
        let r = power_law_check(&datum, 10, sub_seed);
        s.power
            .record(r.passed(), || format!("{}: {:?}", label(&datum), r.checks));
        let m = rng.random_range(1..=4u64);
        let want = m.pow(g as u32) * datum.y_index() as u64;
        s.fourier
            .record(fourier_rank(&datum, m).ok() == Some(want), || {
                format!("{} with m = {m}", label(&datum))
            });
        let det = crate::arith::matrix::idet(datum.beta_matrix()).abs();
        s.components
            .record(component_group(&datum).order == det, || label(&datum));
        if let Some(cone) = random_cone(&mut rng) {
            let ours = hilbert_basis(&cone);
            let theirs = brute_force_hilbert(&cone);
            s.hilbert.record(ours.as_ref().ok() == theirs.as_ref(), || {
                format!(
                    "{:?}",
                    cone.rays()
                        .iter()
                        .map(|r| crate::arith::rational::fmt_qvec(r))
                        .collect::<Vec<_>>()
                )
            });
        }
        let mut poly_rng = ChaCha8Rng::seed_from_u64(sub_seed);
        if let Err(e) = polyhedra_suites(&mut poly_rng, &mut s) {
            s.round_trip.record(false, || err_text(&e));
        }
        match minimal_level(&datum, LEVEL_CAP) {
            Ok(level) => {
                if let Err(e) = level_suites(&mut rng, &datum, level, &mut s, case) {
                    s.monomials
                        .record(false, || format!("{}: {}", label(&datum), err_text(&e)));
                }
            }
            Err(Error::NotFoundBelowCap { .. }) => without_level += 1,
            Err(e) => s
                .identities
                .record(false, || format!("{}: {}", label(&datum), err_text(&e))),
        }
    }
    VerifyReport {
        schema: format!("{}/verify/1", crate::io::OUTPUT_SCHEMA_PREFIX),
        seed,
        cases,
        without_level,
        suites: s.finish(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_matches_a_known_basis() {
        let c = Cone::from_generators(2, &[to_q(&[1, 0]), to_q(&[1, 2])], &[]).unwrap();
        assert_eq!(
            brute_force_hilbert(&c).unwrap(),
            vec![vec![1, 0], vec![1, 1], vec![1, 2]]
        );
    }

    #[test]
    fn small_run_passes_and_repeats() {
        let a = run_suites(11, 12);
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_text(), run_suites(11, 12).to_text());
    }
}
