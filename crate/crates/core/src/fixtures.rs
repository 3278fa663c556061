//! Standard data used throughout the examples, tests and the CLI.

use crate::datum::FcDatum;

/// The rank-two principal datum with `B = ((p+r, -r), (-r, q+r))`.
pub fn rank_two(p: i64, q: i64, r: i64) -> FcDatum {
    FcDatum::principal_int(&[vec![p + r, -r], vec![-r, q + r]])
        .expect("p, q > 0 and r >= 0 give a valid datum")
}

/// The hexagonal datum `B = ((2, -1), (-1, 2))`, the case `p = q = r = 1`.
pub fn hexagon() -> FcDatum {
    rank_two(1, 1, 1)
}

/// The Tate curve: `g = 1`, `Y = X`, `B = (2)`.
pub fn tate() -> FcDatum {
    FcDatum::principal_int(&[vec![2]]).expect("valid")
}

/// The Cartan matrix of `E_8` in Bourbaki numbering: the chain
/// `1 - 3 - 4 - 5 - 6 - 7 - 8` with node 2 attached to node 4.
pub fn e8_cartan() -> Vec<Vec<i64>> {
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let mut m = vec![vec![0i64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        m[a - 1][b - 1] = -1;
        m[b - 1][a - 1] = -1;
    }
    m
}

/// The principal datum on the `E_8` root lattice.
pub fn e8() -> FcDatum {
    FcDatum::principal_int(&e8_cartan()).expect("valid")
}
