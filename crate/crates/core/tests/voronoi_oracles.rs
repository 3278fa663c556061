//! Voronoi polytopes against independent oracles: the closed form for the
//! rank-two family, a direct nearest-center test for the lattice points of
//! `Σ_ℓ(0)` and the chart valuation `D_ℓ` read off the same distances.

use neron_toric::arith::rational::{to_i, IVec};
use neron_toric::datum::{FcDatum, Level};
use neron_toric::fixtures::{hexagon, rank_two};
use neron_toric::voronoi::{d_value, sigma_points, voronoi_polytope};
use proptest::prelude::*;

fn det(b: &[Vec<i64>]) -> i64 {
    match b.len() {
        1 => b[0][0],
        2 => b[0][0] * b[1][1] - b[0][1] * b[1][0],
        _ => (0..3)
            .map(|j| {
                let minor: Vec<Vec<i64>> = b[1..]
                    .iter()
                    .map(|r| (0..3).filter(|&c| c != j).map(|c| r[c]).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * b[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn adjugate(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let g = b.len();
    if g == 1 {
        return vec![vec![1]];
    }
    (0..g)
        .map(|i| {
            (0..g)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = (0..g)
                        .filter(|&r| r != j)
                        .map(|r| (0..g).filter(|&c| c != i).map(|c| b[r][c]).collect())
                        .collect();
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    s * det(&minor)
                })
                .collect()
        })
        .collect()
}

fn norm(b: &[Vec<i64>], x: &[i64]) -> i64 {
    (0..x.len())
        .map(|i| (0..x.len()).map(|j| x[i] * b[i][j] * x[j]).sum::<i64>())
        .sum()
}

fn cube(g: usize, r: i64) -> Vec<IVec> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(g as u32))
        .map(|mut t| {
            (0..g)
                .map(|_| {
                    let c = (t % side) as i64 - r;
                    t /= side;
                    c
                })
                .collect()
        })
        .collect()
}

/// The translation lattice `2ℓφ(X^∨)` of a principal datum, in `X`, with
/// `2ℓ = k`: `φ(u) = N B^{-1} u = ±adj(B) u`.
fn centers(b: &[Vec<i64>], k: i64, radius: i64) -> Vec<IVec> {
    let g = b.len();
    let adj = adjugate(b);
    let sign = det(b).signum();
    cube(g, radius)
        .into_iter()
        .map(|u| {
            (0..g)
                .map(|i| k * sign * (0..g).map(|j| adj[i][j] * u[j]).sum::<i64>())
                .collect()
        })
        .collect()
}

/// `4ℓN·D_ℓ(x)`: the drop in `B`-norm from `x` to its nearest center.
fn scaled_d(b: &[Vec<i64>], cs: &[IVec], x: &[i64]) -> i64 {
    let best = cs
        .iter()
        .map(|c| {
            let d: IVec = x.iter().zip(c).map(|(a, b)| a - b).collect();
            norm(b, &d)
        })
        .min()
        .expect("centers");
    norm(b, x) - best
}

fn check_lattice_points(b: Vec<Vec<i64>>, level: Level) {
    let datum = FcDatum::principal_int(&b).unwrap();
    let g = b.len();
    let n = det(&b).abs();
    let k = level.twice() as i64;
    let ours = sigma_points(&datum, level).unwrap();
    let reach = ours.iter().flatten().map(|c| c.abs()).max().unwrap_or(0) + 2;
    let row_sum = b
        .iter()
        .map(|r| r.iter().map(|c| c.abs()).sum::<i64>())
        .max()
        .unwrap();
    let cs = centers(&b, k, reach * row_sum / (k * n) + 2);
    let mut theirs: Vec<IVec> = cube(g, reach)
        .into_iter()
        .filter(|x| scaled_d(&b, &cs, x) == 0)
        .collect();
    theirs.sort();
    assert!(theirs.iter().flatten().all(|c| c.abs() < reach));
    assert_eq!(ours, theirs, "B = {b:?} at level {level}");
    for x in cube(g, reach) {
        let d = scaled_d(&b, &cs, &x);
        assert_eq!(d % (2 * k * n), 0);
        assert_eq!(
            d_value(&datum, level, &x).unwrap(),
            d / (2 * k * n),
            "x = {x:?}"
        );
    }
}

fn closed_form(p: i64, q: i64, r: i64) -> Vec<IVec> {
    let mut v = Vec::new();
    for (a, b) in [(q + r, p + r), (q + r, -p + r), (-q + r, p + r)] {
        v.push(vec![a, b]);
        v.push(vec![-a, -b]);
    }
    v.sort();
    v.dedup();
    v
}

#[test]
fn rank_two_vertices_follow_the_closed_form() {
    for p in 1..=4 {
        for q in 1..=4 {
            for r in 0..=3 {
                let cell = voronoi_polytope(&rank_two(p, q, r), Level::new(1).unwrap()).unwrap();
                let got: Vec<IVec> = cell.vertices().iter().map(|v| to_i(v).unwrap()).collect();
                assert_eq!(got, closed_form(p, q, r), "(p, q, r) = ({p}, {q}, {r})");
            }
        }
    }
}

#[test]
fn hexagon_cell_at_level_one() {
    let cell = voronoi_polytope(&hexagon(), Level::new(1).unwrap()).unwrap();
    let got: Vec<IVec> = cell.vertices().iter().map(|v| to_i(v).unwrap()).collect();
    let mut want: Vec<IVec> = vec![
        vec![2, 2],
        vec![-2, -2],
        vec![2, 0],
        vec![-2, 0],
        vec![0, 2],
        vec![0, -2],
    ];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn lattice_points_of_known_forms() {
    check_lattice_points(vec![vec![2]], Level::new(1).unwrap());
    check_lattice_points(vec![vec![3]], Level::new(2).unwrap());
    check_lattice_points(vec![vec![2, -1], vec![-1, 2]], Level::half());
    check_lattice_points(vec![vec![2, -1], vec![-1, 2]], Level::new(1).unwrap());
    check_lattice_points(
        vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        Level::new(1).unwrap(),
    );
    check_lattice_points(
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        Level::new(1).unwrap(),
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_points_of_random_binary_forms(a in 1i64..=3, c in 1i64..=3, b in -2i64..=2, l in 1u64..=2) {
        prop_assume!(a * c - b * b > 0);
        check_lattice_points(vec![vec![a, b], vec![b, c]], Level::new(l).unwrap());
    }
}
