//! Exact arithmetic: rationals, matrices, Smith and Hermite forms, lattice
//! reduction and enumeration.

pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod smith;

pub use matrix::{IMat, QMat};
pub use rational::{fmt_ivec, fmt_q, fmt_qvec, parse_q, q, qr, IVec, QVec, Q};
pub use smith::{smith, SmithDecomposition, SubLattice};
