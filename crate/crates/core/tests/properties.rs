//! Randomized invariants of degeneration data, their valuations and the
//! monomial actions, over integral forms with a triangular sublattice `Y`.

use neron_toric::arith::rational::{add_i, dot_i, q, scale_i, to_q, IVec};
use neron_toric::datum::{FcDatum, Level};
use neron_toric::monomial::{delta_action, s_action, xi_monomial, ValuedMonomial};
use neron_toric::strata::component_group;
use neron_toric::voronoi::{cvp_all, in_sigma, sigma_points};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Case {
    datum: FcDatum,
    b: Vec<Vec<i64>>,
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| (0..m.len()).filter(|&c| c != j).map(|c| r[c]).collect())
                    .collect();
                (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn case() -> impl Strategy<Value = Case> {
    (1usize..=3)
        .prop_flat_map(|g| {
            (
                prop::collection::vec(-1i64..=1, g * g),
                prop::collection::vec(1i64..=2, g),
                prop::collection::vec(-1i64..=1, g * g),
            )
        })
        .prop_filter_map("positive definite", |(a, diag, upper)| {
            let g = diag.len();
            let b: Vec<Vec<i64>> = (0..g)
                .map(|i| {
                    (0..g)
                        .map(|j| {
                            (0..g).map(|k| a[k * g + i] * a[k * g + j]).sum::<i64>()
                                + i64::from(i == j)
                        })
                        .collect()
                })
                .collect();
            let y: Vec<Vec<i64>> = (0..g)
                .map(|i| {
                    (0..g)
                        .map(|j| match j.cmp(&i) {
                            std::cmp::Ordering::Less => 0,
                            std::cmp::Ordering::Equal => diag[i],
                            std::cmp::Ordering::Greater => upper[i * g + j],
                        })
                        .collect()
                })
                .collect();
            let bq = b.iter().map(|r| to_q(r)).collect();
            let datum = FcDatum::new(y, bq, None).ok()?;
            Some(Case { datum, b })
        })
}

/// The generators of `Y`, the columns of the stored basis.
fn y_gens(d: &FcDatum) -> Vec<IVec> {
    let y = d.y_basis();
    (0..y.len())
        .map(|j| y.iter().map(|r| r[j]).collect())
        .collect()
}

fn vector(g: usize) -> impl Strategy<Value = IVec> {
    prop::collection::vec(-3i64..=3, g)
}

fn bilinear(b: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    (0..x.len())
        .map(|i| (0..y.len()).map(|j| x[i] * b[i][j] * y[j]).sum::<i64>())
        .sum()
}

fn with_vectors() -> impl Strategy<Value = (Case, IVec, IVec, IVec)> {
    case().prop_flat_map(|c| {
        let g = c.b.len();
        (Just(c), vector(g), vector(g), vector(g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_inverts_beta_up_to_n((c, u, v, x) in with_vectors()) {
        let d = &c.datum;
        let n = d.n_index();
        prop_assert_eq!(d.beta(&d.phi(&u)).unwrap(), scale_i(n, &u));
        prop_assert_eq!(d.pair_phi(&u, &v), d.pair_phi(&v, &u));
        if u.iter().any(|&t| t != 0) {
            prop_assert!(d.pair_phi(&u, &u) > 0);
        }
        prop_assert_eq!(n * dot_i(&u, &x), bilinear(&c.b, &d.phi(&u), &x));
    }

    #[test]
    fn n_is_the_index_of_beta_y((c, _u, _v, _x) in with_vectors()) {
        let d = &c.datum;
        let beta: Vec<IVec> = y_gens(d).iter().map(|y| d.beta(y).unwrap()).collect();
        let n = det(&beta).abs();
        prop_assert_eq!(d.n_index(), n);
        prop_assert_eq!(component_group(d).order, n);
        prop_assert_eq!(d.y_index(), det(d.y_basis()).abs());
    }

    #[test]
    fn quadratic_valuation_identities((c, u, v, y) in with_vectors(), l in 1u64..=3) {
        let d = &c.datum;
        let level = Level::new(l).unwrap();
        let lhs = d.e_level(level, &add_i(&u, &v));
        let rhs = d.e_level(level, &u) + d.e_level(level, &v) + 2 * l as i64 * d.pair_phi(&u, &v);
        prop_assert_eq!(lhs, rhs);
        let gens = y_gens(d);
        let y_in = gens
            .iter()
            .zip(&y)
            .fold(vec![0; y.len()], |acc, (b, &t)| add_i(&acc, &scale_i(t, b)));
        let e = q(d.e_level(level, &d.beta(&y_in).unwrap()));
        let a = q(bilinear(&c.b, &y_in, &y_in)) / q(2);
        prop_assert_eq!(e, q(2 * d.n_index() * l as i64) * a);
    }

    #[test]
    fn delta_is_a_group_action((c, u, v, x) in with_vectors(), l in 1u64..=2) {
        let d = &c.datum;
        let level = Level::new(l).unwrap();
        let m = ValuedMonomial::theta(&x, level);
        let both = delta_action(d, &u, &delta_action(d, &v, &m));
        prop_assert_eq!(both, delta_action(d, &add_i(&u, &v), &m));
        prop_assert_eq!(delta_action(d, &vec![0; x.len()], &m), m.clone());
        let y = y_gens(d)[0].clone();
        prop_assert_eq!(s_action(d, &y, &m).unwrap(), delta_action(d, &d.beta(&y).unwrap(), &m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn xi_depends_only_on_the_exponent((c, u, _v, _x) in with_vectors()) {
        let d = &c.datum;
        prop_assume!(d.rank() <= 2 && d.n_index() <= 12);
        let level = Level::new(1).unwrap();
        for x in sigma_points(d, level).unwrap() {
            let pieces: Vec<(IVec, IVec)> = cvp_all(d, level, &x)
                .into_iter()
                .map(|z| {
                    let alpha: IVec = x.iter().zip(d.shift(level, &z)).map(|(a, b)| a - b).collect();
                    (alpha, add_i(&z, &u))
                })
                .collect();
            let first = xi_monomial(d, level, &pieces[0].0, &pieces[0].1).unwrap();
            for (alpha, v) in &pieces {
                prop_assert!(in_sigma(d, level, alpha).unwrap());
                prop_assert_eq!(&xi_monomial(d, level, alpha, v).unwrap(), &first);
            }
        }
    }
}
