//! Double-description conversion from inequalities to generators.
//!
//! The cone `{x : a·x >= 0 for a in ineqs, e·x = 0 for e in eqs}` is first
//! restricted to the solution space of the equations, then split into its
//! lineality space and a pointed part, on which the incremental
//! double-description method runs with rows inserted in input order.

use num::traits::{Signed, Zero};

use crate::arith::matrix::{nullspace, rank_of};
use crate::arith::rational::{dot, primitive, QVec, Q};

/// Rays (of the pointed part) and a lineality basis of a polyhedral cone.
#[derive(Debug, Clone)]
pub(crate) struct Generators {
    pub rays: Vec<QVec>,
    pub lineality: Vec<QVec>,
}

fn combine(basis: &[QVec], coeffs: &[Q], d: usize) -> QVec {
    let mut out = vec![Q::zero(); d];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += x * c;
        }
    }
    out
}

/// Generators of `{x ∈ Q^d : a·x >= 0 (a ∈ ineqs), e·x = 0 (e ∈ eqs)}`.
pub(crate) fn cone_generators(ineqs: &[QVec], eqs: &[QVec], d: usize) -> Generators {
    if eqs.is_empty() && !ineqs.is_empty() && rank_of(ineqs) == d {
        let rays = pointed_rays(
            &distinct_rows(ineqs.iter().map(|a| primitive(a)).collect()),
            d,
        );
        return Generators {
            rays,
            lineality: Vec::new(),
        };
    }
    let sub: Vec<QVec> = if eqs.is_empty() {
        nullspace(&Vec::new(), d)
    } else {
        nullspace(&eqs.to_vec(), d)
    };
    let k = sub.len();
    if k == 0 {
        return Generators {
            rays: Vec::new(),
            lineality: Vec::new(),
        };
    }
    let a1: Vec<QVec> = ineqs
        .iter()
        .map(|a| sub.iter().map(|p| dot(a, p)).collect())
        .collect();
    let lin1: Vec<QVec> = if a1.is_empty() {
        nullspace(&Vec::new(), k)
    } else {
        nullspace(&a1, k)
    };
    let w: Vec<QVec> = if lin1.is_empty() {
        nullspace(&Vec::new(), k)
    } else {
        nullspace(&lin1, k)
    };
    let lineality: Vec<QVec> = lin1.iter().map(|c| combine(&sub, c, d)).collect();
    let m = w.len();
    if m == 0 {
        return Generators {
            rays: Vec::new(),
            lineality,
        };
    }
    let rows = distinct_rows(
        a1.iter()
            .map(|a| primitive(&w.iter().map(|wj| dot(a, wj)).collect::<QVec>()))
            .collect(),
    );
    let pointed = pointed_rays(&rows, m);
    let rays = pointed
        .iter()
        .map(|t| {
            let in_k = combine(&w, t, k);
            primitive(&combine(&sub, &in_k, d))
        })
        .collect();
    Generators { rays, lineality }
}

/// Nonzero rows in input order with repeats removed.
fn distinct_rows(mut rows: Vec<QVec>) -> Vec<QVec> {
    let mut seen = std::collections::BTreeSet::new();
    rows.retain(|r| r.iter().any(|x| !x.is_zero()) && seen.insert(r.clone()));
    rows
}

struct Ray {
    v: QVec,
    tight: Vec<usize>,
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Extreme rays of `{t ∈ Q^m : r·t >= 0}` where the rows have full column rank.
fn pointed_rays(rows: &[QVec], m: usize) -> Vec<QVec> {
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut chosen: Vec<QVec> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(r.clone());
        if rank_of(&trial) == trial.len() {
            chosen = trial;
            basis_rows.push(i);
            if chosen.len() == m {
                break;
            }
        }
    }
    debug_assert_eq!(chosen.len(), m, "rows must have full column rank");
    let inv = crate::arith::matrix::inverse(&chosen).expect("independent rows");
    let mut rays: Vec<Ray> = (0..m)
        .map(|j| {
            let col: QVec = (0..m).map(|i| inv[i][j].clone()).collect();
            let mut tight: Vec<usize> = basis_rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, &r)| r)
                .collect();
            tight.sort();
            Ray {
                v: primitive(&col),
                tight,
            }
        })
        .collect();
    for (h, row) in rows.iter().enumerate() {
        if basis_rows.contains(&h) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_positive() {
                next.push(Ray {
                    v: r.v.clone(),
                    tight: r.tight.clone(),
                });
            } else if vals[i].is_zero() {
                let mut t = r.tight.clone();
                t.push(h);
                t.sort();
                next.push(Ray {
                    v: r.v.clone(),
                    tight: t,
                });
            }
        }
        let need = m as isize - 2;
        for &p in &pos {
            for &n in &neg {
                let common = intersect_sorted(&rays[p].tight, &rays[n].tight);
                if need < 0 || (common.len() as isize) < need {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(o, r)| {
                    o != p && o != n && common.iter().all(|c| r.tight.binary_search(c).is_ok())
                });
                if blocked {
                    continue;
                }
                let sp = &vals[p];
                let sn = &vals[n];
                let v: QVec = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| sp * xn - sn * xp)
                    .collect();
                let mut t = common;
                t.push(h);
                t.sort();
                next.push(Ray {
                    v: primitive(&v),
                    tight: t,
                });
            }
        }
        rays = next;
        if rays.is_empty() {
            break;
        }
    }
    let mut out: Vec<QVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}
