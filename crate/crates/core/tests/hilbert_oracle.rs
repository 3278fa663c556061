//! Hilbert bases of random pointed cones in dimensions two and three against
//! an oracle that lists every lattice point of bounded degree and keeps the
//! irreducible ones. Facets are found without the polyhedra module: every
//! `d - 1` rays give a candidate normal, kept when all rays lie on one side.

use neron_toric::arith::rational::{to_q, IVec, QVec};
use neron_toric::charts::hilbert_basis;
use neron_toric::polyhedra::Cone;
use proptest::prelude::*;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normal(rays: &[&IVec]) -> IVec {
    match rays.len() {
        1 => vec![-rays[0][1], rays[0][0]],
        _ => {
            let (a, b) = (rays[0], rays[1]);
            vec![
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        }
    }
}

fn oracle_facets(rays: &[IVec]) -> Vec<IVec> {
    let d = rays[0].len();
    let mut out = Vec::new();
    let n = rays.len();
    let subsets: Vec<Vec<usize>> = if d == 2 {
        (0..n).map(|i| vec![i]).collect()
    } else {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
            .collect()
    };
    for s in subsets {
        let picked: Vec<&IVec> = s.iter().map(|&i| &rays[i]).collect();
        let f = normal(&picked);
        if f.iter().all(|&c| c == 0) {
            continue;
        }
        for f in [f.clone(), f.iter().map(|c| -c).collect()] {
            let vals: Vec<i64> = rays.iter().map(|r| dot(&f, r)).collect();
            let tight = vals.iter().filter(|&&v| v == 0).count();
            if vals.iter().all(|&v| v >= 0) && tight >= d - 1 {
                out.push(f);
            }
        }
    }
    out
}

fn oracle_hilbert(rays: &[IVec]) -> Vec<IVec> {
    let d = rays[0].len();
    let facets = oracle_facets(rays);
    let deg: IVec = (0..d).map(|j| facets.iter().map(|f| f[j]).sum()).collect();
    let top: i64 = rays.iter().map(|r| dot(&deg, r)).sum();
    let reach: i64 = rays
        .iter()
        .map(|r| {
            let rd = dot(&deg, r);
            r.iter()
                .map(|c| (c.abs() * top + rd - 1) / rd)
                .max()
                .unwrap()
        })
        .max()
        .unwrap();
    let side = (2 * reach + 1) as usize;
    let inside = |x: &[i64]| facets.iter().all(|f| dot(f, x) >= 0);
    let pool: Vec<IVec> = (0..side.pow(d as u32))
        .map(|mut t| {
            (0..d)
                .map(|_| {
                    let c = (t % side) as i64 - reach;
                    t /= side;
                    c
                })
                .collect::<IVec>()
        })
        .filter(|x| x.iter().any(|&c| c != 0) && inside(x) && dot(&deg, x) <= top)
        .collect();
    let mut out: Vec<IVec> = pool
        .iter()
        .filter(|p| {
            !pool.iter().any(|a| {
                let b: IVec = p.iter().zip(a).map(|(x, y)| x - y).collect();
                b.iter().any(|&c| c != 0) && inside(&b)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out
}

fn ray(d: usize) -> impl Strategy<Value = IVec> {
    (1i64..=3, prop::collection::vec(-3i64..=3, d - 1)).prop_map(|(h, rest)| {
        let mut r = vec![h];
        r.extend(rest);
        r
    })
}

fn cone_rays() -> impl Strategy<Value = Vec<IVec>> {
    prop_oneof![
        prop::collection::vec(ray(2), 2..=3),
        prop::collection::vec(ray(3), 3..=4),
    ]
}

#[test]
fn known_bases() {
    let c = Cone::from_generators(2, &[to_q(&[1, 0]), to_q(&[1, 3])], &[]).unwrap();
    assert_eq!(
        hilbert_basis(&c).unwrap(),
        vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]
    );
    let rays = vec![vec![2, -3, 1], vec![2, -1, 3], vec![2, 0, -3]];
    let q: Vec<QVec> = rays.iter().map(|r| to_q(r)).collect();
    let c = Cone::from_generators(3, &q, &[]).unwrap();
    assert_eq!(hilbert_basis(&c).unwrap(), oracle_hilbert(&rays));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_basis_matches_the_oracle(rays in cone_rays()) {
        let d = rays[0].len();
        let q: Vec<QVec> = rays.iter().map(|r| to_q(r)).collect();
        let cone = Cone::from_generators(d, &q, &[]).unwrap();
        prop_assume!(cone.dim() == d);
        prop_assert_eq!(hilbert_basis(&cone).unwrap(), oracle_hilbert(&rays));
    }
}
