//! Valuation calculus of degeneration data: monomials `s^c w^x θ_ℓ^m` with the
//! actions `δ_u` and `S_y`, the quadratic valuation identities and the rank of
//! Fourier modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::rational::{add_i, dot_i, fmt_ivec, q, scale_i, IVec, Q};
use crate::arith::smith::smith;
use crate::datum::{FcDatum, Level};
use crate::error::{Error, Result};
use crate::report::{Check, Tally};
use crate::voronoi::{cvp_decompose, d_value, in_sigma};

/// Largest absolute value of a sampled coordinate.
pub const SAMPLE_RADIUS: i64 = 3;

/// The monomial `s^val w^exp θ_ℓ^theta_deg`, recorded by valuations only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ValuedMonomial {
    /// Exponent of the uniformizer.
    pub val: i64,
    /// Exponent of `w`.
    pub exp: IVec,
    /// Power of `θ_ℓ`.
    pub theta_deg: u32,
    /// The level `ℓ` of `θ_ℓ`.
    pub level: Level,
}

impl ValuedMonomial {
    /// The identity `(0, 0, 0)` in rank `g`.
    pub fn one(g: usize, level: Level) -> ValuedMonomial {
        ValuedMonomial {
            val: 0,
            exp: vec![0; g],
            theta_deg: 0,
            level,
        }
    }

    /// `w^x θ_ℓ` with trivial coefficient.
    pub fn theta(x: &[i64], level: Level) -> ValuedMonomial {
        ValuedMonomial {
            val: 0,
            exp: x.to_vec(),
            theta_deg: 1,
            level,
        }
    }

    /// The product; all three fields add.
    pub fn mul(&self, other: &ValuedMonomial) -> Result<ValuedMonomial> {
        if self.level != other.level || self.exp.len() != other.exp.len() {
            return Err(Error::DimensionMismatch(
                "monomials of different levels or ranks".into(),
            ));
        }
        Ok(ValuedMonomial {
            val: self.val + other.val,
            exp: add_i(&self.exp, &other.exp),
            theta_deg: self.theta_deg + other.theta_deg,
            level: self.level,
        })
    }

    /// The weight `val·m₀ + exp` in `X̃`.
    pub fn weight(&self) -> IVec {
        let mut w = vec![self.val];
        w.extend(self.exp.iter().copied());
        w
    }
}

impl std::fmt::Display for ValuedMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "s^{} w^{} θ_{}^{}",
            self.val,
            fmt_ivec(&self.exp),
            self.level,
            self.theta_deg
        )
    }
}

/// `ξ_{ℓ,α,v}θ_ℓ`: valuation `E_ℓ(v) + v(α)`, exponent `α + 2ℓφ(v)`.
pub fn xi_monomial(
    datum: &FcDatum,
    level: Level,
    alpha: &[i64],
    v: &[i64],
) -> Result<ValuedMonomial> {
    datum.check_level(level)?;
    if !in_sigma(datum, level, alpha)? {
        return Err(Error::NotInSigma(fmt_ivec(alpha)));
    }
    Ok(xi_unchecked(datum, level, alpha, v))
}

fn xi_unchecked(datum: &FcDatum, level: Level, alpha: &[i64], v: &[i64]) -> ValuedMonomial {
    ValuedMonomial {
        val: datum.e_level(level, v) + dot_i(v, alpha),
        exp: add_i(alpha, &datum.shift(level, v)),
        theta_deg: 1,
        level,
    }
}

/// `δ_u`: adds `deg·E_ℓ(u) + u(exp)` to the valuation and `deg·2ℓφ(u)` to the exponent.
pub fn delta_action(datum: &FcDatum, u: &[i64], m: &ValuedMonomial) -> ValuedMonomial {
    let d = m.theta_deg as i64;
    ValuedMonomial {
        val: m.val + d * datum.e_level(m.level, u) + dot_i(u, &m.exp),
        exp: add_i(&m.exp, &scale_i(d, &datum.shift(m.level, u))),
        theta_deg: m.theta_deg,
        level: m.level,
    }
}

/// `S_y = δ_{β(y)}` for `y ∈ Y`.
pub fn s_action(datum: &FcDatum, y: &[i64], m: &ValuedMonomial) -> Result<ValuedMonomial> {
    let u = datum.beta(y)?;
    Ok(delta_action(datum, &u, m))
}

/// The valuation increment `2NℓA(y) + B(y, x)` of `S_y` on `w^x θ_ℓ`.
pub fn s_increment(datum: &FcDatum, level: Level, y: &[i64], x: &[i64]) -> Q {
    q(2 * datum.n_index()) * level.as_q() * datum.a_value(y) + datum.b_pair(y, x)
}

/// `|X / mY|`, the rank of the weight-`m` Fourier module, from the Smith form of `m·Y`.
pub fn fourier_rank(datum: &FcDatum, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidLevel("the weight must be positive".into()));
    }
    let scaled: Vec<IVec> = datum
        .y_basis()
        .iter()
        .map(|r| r.iter().map(|x| x * m as i64).collect())
        .collect();
    Ok(smith(&scaled).product().unsigned_abs())
}

/// The `s`-exponent `mA(y) + B(y, x)` of the Fourier relation between `σ^{(m)}_{x+my}` and `σ^{(m)}_x`.
pub fn fourier_exponent(datum: &FcDatum, m: u64, y: &[i64], x: &[i64]) -> Q {
    q(m as i64) * datum.a_value(y) + datum.b_pair(y, x)
}

/// The quadratic part `B(y, y)/2` of `A`.
fn a_quadratic(datum: &FcDatum, y: &[i64]) -> Q {
    datum.b_pair(y, y) / q(2)
}

/// Result of a sampled identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// Number of sampled tuples.
    pub samples: usize,
    /// Every identity.
    pub checks: Vec<Check>,
}

impl IdentityReport {
    /// True when every identity holds.
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

fn sample_vec<R: Rng>(rng: &mut R, g: usize) -> IVec {
    (0..g)
        .map(|_| rng.random_range(-SAMPLE_RADIUS..=SAMPLE_RADIUS))
        .collect()
}

fn sample_y<R: Rng>(rng: &mut R, datum: &FcDatum) -> IVec {
    let c = sample_vec(rng, datum.rank());
    crate::arith::matrix::imat_vec(datum.y_basis(), &c)
}

/// Checks on random samples: `E(u) = u(φ(u))`, `E(β(y)) = N·B(y, y)` (that is,
/// `2N` times the quadratic part of `A`), `E(u+v) = E(u) + E(v) + 2u(φ(v))`,
/// `N u(x) = B(φ(u), x)` and, for even forms, `E_ℓ = 2ℓE₊` with `E₊(u) = u(φ(u))/2`.
pub fn valuation_identities(datum: &FcDatum, samples: usize, seed: u64) -> IdentityReport {
    let g = datum.rank();
    let n = datum.n_index();
    let one = Level::new(1).expect("level one");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t_e = Tally::new("E(u) = u(φ(u))");
    let mut t_beta = Tally::new("E(β(y)) = 2N·B(y,y)/2");
    let mut t_add = Tally::new("E(u+v) = E(u) + E(v) + 2u(φ(v))");
    let mut t_pair = Tally::new("N u(x) = B(φ(u), x)");
    let mut t_half = Tally::new("E_ℓ = 2ℓE₊ for even forms");
    for _ in 0..samples {
        let u = sample_vec(&mut rng, g);
        let v = sample_vec(&mut rng, g);
        let x = sample_vec(&mut rng, g);
        let y = sample_y(&mut rng, datum);
        let e = |w: &[i64]| datum.e_level(one, w);
        t_e.record(e(&u) == datum.pair_phi(&u, &u), || fmt_ivec(&u));
        let by = datum.beta(&y).expect("sampled in Y");
        t_beta.record(q(e(&by)) == q(2 * n) * a_quadratic(datum, &y), || {
            fmt_ivec(&y)
        });
        t_add.record(
            e(&add_i(&u, &v)) == e(&u) + e(&v) + 2 * datum.pair_phi(&u, &v),
            || format!("{} {}", fmt_ivec(&u), fmt_ivec(&v)),
        );
        t_pair.record(
            q(n * dot_i(&u, &x)) == datum.b_pair(&datum.phi(&u), &x),
            || format!("{} {}", fmt_ivec(&u), fmt_ivec(&x)),
        );
        if datum.is_even() {
            let twice: u64 = rng.random_range(1..=6);
            let lv = Level::from_twice(twice).expect("positive");
            let e_plus = datum.pair_phi(&u, &u) / 2;
            t_half.record(
                q(datum.e_level(lv, &u)) == lv.as_q() * q(2 * e_plus),
                || format!("{} at level {lv}", fmt_ivec(&u)),
            );
        }
    }
    let mut checks = vec![
        t_e.finish(),
        t_beta.finish(),
        t_add.finish(),
        t_pair.finish(),
    ];
    if datum.is_even() {
        checks.push(t_half.finish());
    }
    IdentityReport { samples, checks }
}

/// Checks of the monomial calculus at level `ℓ` on random samples: the
/// valuation of `ξ_{ℓ,α,v}` is `D_ℓ` of its exponent, `ξ` depends only on its
/// exponent, `δ` is an action with `δ_u ξ_{ℓ,α,v} = ξ_{ℓ,α,v+u}`, `S_y = δ_{β(y)}`
/// with increment `2NℓA(y) + B(y, x)` when `A` is quadratic, and the same
/// exponent reached from a base point outside `Σ_ℓ` has strictly smaller valuation.
pub fn monomial_identities(
    datum: &FcDatum,
    level: Level,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport> {
    datum.check_level(level)?;
    let g = datum.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = crate::voronoi::sigma_points(datum, level)?;
    let mut t_d = Tally::new("val ξ = D_ℓ(exp ξ)");
    let mut t_unit = Tally::new("ξ depends only on its exponent");
    let mut t_act = Tally::new("δ_u δ_v = δ_{u+v} and δ_0 = id");
    let mut t_xi = Tally::new("δ_u ξ_{α,v} = ξ_{α,v+u}");
    let mut t_s = Tally::new("S_y = δ_{β(y)}");
    let mut t_strict = Tally::new("base points outside Σ_ℓ lower the valuation");
    for _ in 0..samples {
        let alpha = sigma[rng.random_range(0..sigma.len())].clone();
        let u = sample_vec(&mut rng, g);
        let v = sample_vec(&mut rng, g);
        let y = sample_y(&mut rng, datum);
        let xi = xi_unchecked(datum, level, &alpha, &v);
        t_d.record(d_value(datum, level, &xi.exp)? == xi.val, || {
            format!("α = {}, v = {}", fmt_ivec(&alpha), fmt_ivec(&v))
        });
        let dec = cvp_decompose(datum, level, &xi.exp);
        let other = xi_unchecked(datum, level, &dec.gamma, &dec.z);
        t_unit.record(other == xi, || format!("{xi} against {other}"));
        let m = ValuedMonomial {
            val: rng.random_range(-5..=5),
            exp: sample_vec(&mut rng, g),
            theta_deg: rng.random_range(0..=3),
            level,
        };
        let lhs = delta_action(datum, &u, &delta_action(datum, &v, &m));
        let rhs = delta_action(datum, &add_i(&u, &v), &m);
        t_act.record(
            lhs == rhs && delta_action(datum, &vec![0; g], &m) == m,
            || m.to_string(),
        );
        t_xi.record(
            delta_action(datum, &u, &xi) == xi_unchecked(datum, level, &alpha, &add_i(&v, &u)),
            || {
                format!(
                    "α = {}, u = {}, v = {}",
                    fmt_ivec(&alpha),
                    fmt_ivec(&u),
                    fmt_ivec(&v)
                )
            },
        );
        let by = datum.beta(&y)?;
        let s = s_action(datum, &y, &m)?;
        let mut ok = s == delta_action(datum, &by, &m);
        if datum.a_linear().is_none() && m.theta_deg == 1 {
            ok &= q(s.val - m.val) == s_increment(datum, level, &y, &m.exp);
        }
        t_s.record(ok, || fmt_ivec(&y));
        let outside = add_i(&alpha, &sample_vec(&mut rng, g));
        if !in_sigma(datum, level, &outside)? {
            let raw = xi_unchecked(datum, level, &outside, &v);
            t_strict.record(raw.val < d_value(datum, level, &raw.exp)?, || {
                fmt_ivec(&outside)
            });
        }
    }
    Ok(IdentityReport {
        samples,
        checks: vec![
            t_d.finish(),
            t_unit.finish(),
            t_act.finish(),
            t_xi.finish(),
            t_s.finish(),
            t_strict.finish(),
        ],
    })
}

/// Checks on random `(m, y, x)` that the Fourier exponents `mA(y) + B(y, x)`
/// compose: shifting by `my` and then by `my′` costs the same as shifting by `m(y + y′)`.
pub fn power_law_check(datum: &FcDatum, samples: usize, seed: u64) -> IdentityReport {
    let g = datum.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t_one = Tally::new("weight one gives A(y) + B(y, x)");
    let mut t_comp = Tally::new("Fourier exponents compose");
    for _ in 0..samples {
        let m: u64 = rng.random_range(1..=5);
        let y = sample_y(&mut rng, datum);
        let y2 = sample_y(&mut rng, datum);
        let x = sample_vec(&mut rng, g);
        t_one.record(
            fourier_exponent(datum, 1, &y, &x) == datum.a_value(&y) + datum.b_pair(&y, &x),
            || fmt_ivec(&y),
        );
        let moved = add_i(&x, &scale_i(m as i64, &y));
        let two_steps =
            fourier_exponent(datum, m, &y, &x) + fourier_exponent(datum, m, &y2, &moved);
        let one_step = fourier_exponent(datum, m, &add_i(&y, &y2), &x);
        t_comp.record(two_steps == one_step, || {
            format!(
                "m = {m}, y = {}, y' = {}, x = {}",
                fmt_ivec(&y),
                fmt_ivec(&y2),
                fmt_ivec(&x)
            )
        });
    }
    IdentityReport {
        samples,
        checks: vec![t_one.finish(), t_comp.finish()],
    }
}

/// `E₊(u) = u(φ(u))/2` for an even form, as used by the half level.
pub fn e_plus(datum: &FcDatum, u: &[i64]) -> Result<i64> {
    if !datum.is_even() {
        return Err(Error::HalfLevelRequiresEvenForm(fmt_ivec(u)));
    }
    Ok(datum.pair_phi(u, u) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::matrix::imat_to_q;
    use crate::fixtures::{hexagon, rank_two, tate};

    fn l1() -> Level {
        Level::new(1).unwrap()
    }

    #[test]
    fn tate_xi_and_actions() {
        let d = tate();
        assert_eq!(
            xi_monomial(&d, l1(), &[0], &[0]).unwrap(),
            ValuedMonomial::theta(&[0], l1())
        );
        let xi = xi_monomial(&d, l1(), &[0], &[1]).unwrap();
        assert_eq!((xi.val, xi.exp.clone(), xi.theta_deg), (1, vec![2], 1));
        assert_eq!(
            delta_action(&d, &[1], &ValuedMonomial::theta(&[0], l1())),
            xi
        );
        let s = s_action(&d, &[1], &ValuedMonomial::theta(&[0], l1())).unwrap();
        assert_eq!((s.val, s.exp), (4, vec![4]));
        assert_eq!(s_increment(&d, l1(), &[1], &[0]), q(4));
        assert!(xi_monomial(&d, l1(), &[2], &[0]).is_err());
    }

    #[test]
    fn products_add_fields() {
        let a = ValuedMonomial::theta(&[1, 2], l1());
        let b = ValuedMonomial {
            val: 3,
            exp: vec![-1, 0],
            theta_deg: 2,
            level: l1(),
        };
        let p = a.mul(&b).unwrap();
        assert_eq!((p.val, p.exp.clone(), p.theta_deg), (3, vec![0, 2], 3));
        assert_eq!(p.mul(&ValuedMonomial::one(2, l1())).unwrap(), p);
        assert_eq!(p.weight(), vec![3, 0, 2]);
    }

    #[test]
    fn fourier_ranks() {
        assert_eq!(fourier_rank(&hexagon(), 3).unwrap(), 9);
        assert_eq!(fourier_rank(&hexagon(), 1).unwrap(), 1);
        let d = FcDatum::new(
            vec![vec![1, 0], vec![0, 3]],
            imat_to_q(&[vec![1, 0], vec![0, 1]].to_vec()),
            None,
        )
        .unwrap();
        assert_eq!(fourier_rank(&d, 2).unwrap(), 12);
        assert!(fourier_rank(&d, 0).is_err());
    }

    #[test]
    fn fourier_exponents() {
        assert_eq!(fourier_exponent(&tate(), 4, &[1], &[3]), q(10));
        assert_eq!(fourier_exponent(&hexagon(), 2, &[1, 0], &[0, 1]), q(1));
        assert!(power_law_check(&rank_two(2, 3, 1), 50, 1).passed());
    }

    #[test]
    fn hexagon_e_plus() {
        let d = hexagon();
        for u in [[1, 0], [1, 1], [2, -1], [-3, 2]] {
            assert_eq!(
                e_plus(&d, &u).unwrap(),
                u[0] * u[0] + u[0] * u[1] + u[1] * u[1]
            );
        }
        assert_eq!(e_plus(&d, &[0, 0]).unwrap(), 0);
        assert!(valuation_identities(&d, 100, 7).passed());
        assert!(monomial_identities(&d, Level::half(), 100, 7)
            .unwrap()
            .passed());
    }

    #[test]
    fn identities_hold_on_fixtures() {
        for d in [tate(), hexagon(), rank_two(1, 2, 0), rank_two(3, 1, 2)] {
            assert!(valuation_identities(&d, 60, 3).passed());
            let r = monomial_identities(&d, l1(), 60, 3).unwrap();
            assert!(r.passed(), "{:?}", r.checks);
        }
    }
}
