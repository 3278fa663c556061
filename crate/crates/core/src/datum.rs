//! The validated degeneration datum `(X, Y, B, A)` and the maps derived from it.
//!
//! `X = Z^g` in standard coordinates, `X^∨` is identified with `Z^g` through the
//! standard pairing, `Y ⊆ X` is spanned by the columns of `y_basis`, and `B` is
//! a rational symmetric positive-definite form on `X` that is integral on
//! `Y × X`. From these come
//!
//! * `β(y) = B(y, ·) ∈ X^∨`,
//! * `N = |X^∨ / β(Y)|`,
//! * `φ(u) = N B^{-1} u ∈ Y`, so that `β(φ(u)) = N u`,
//! * `E_ℓ(u) = ℓ u(φ(u))` and `C_ℓ(x) = B(x, x) / (4ℓN)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num::traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::matrix::{
    imat_to_q, inverse, is_positive_definite, leading_minors, mat_vec, transpose, IMat, QMat,
};
use crate::arith::rational::{dot_iq, fmt_ivec, fmt_q, q, q_to_i64, to_q, IVec, QVec, Q};
use crate::arith::smith::{smith, SmithDecomposition, SubLattice};
use crate::error::{Error, Result};

/// A level `ℓ`, either a positive integer or a positive half-integer.
///
/// Stored as `2ℓ`. Half-integral levels are the variant in which
/// `E(u) = ℓ u(φ(u))` uses a multiplier with denominator two, available only
/// when `u(φ(u))` is always even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level {
    twice: u64,
}

impl Level {
    /// The integral level `ℓ >= 1`.
    pub fn new(l: u64) -> Result<Level> {
        if l == 0 {
            return Err(Error::InvalidLevel("level must be positive".into()));
        }
        Ok(Level { twice: 2 * l })
    }

    /// The level `twice / 2`, which may be half-integral.
    pub fn from_twice(twice: u64) -> Result<Level> {
        if twice == 0 {
            return Err(Error::InvalidLevel("level must be positive".into()));
        }
        Ok(Level { twice })
    }

    /// The half level `1/2`.
    pub fn half() -> Level {
        Level { twice: 1 }
    }

    /// The integer `2ℓ`.
    pub fn twice(&self) -> u64 {
        self.twice
    }

    /// `2ℓ` as a signed integer.
    pub fn k(&self) -> i64 {
        self.twice as i64
    }

    /// True when `ℓ` is an integer.
    pub fn is_integral(&self) -> bool {
        self.twice.is_multiple_of(2)
    }

    /// `ℓ` as a rational.
    pub fn as_q(&self) -> Q {
        crate::arith::rational::qr(self.twice as i64, 2)
    }

    /// The level `ℓ ℓ'`.
    pub fn times(&self, l2: u64) -> Level {
        Level {
            twice: self.twice * l2,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Size limits for the exponential parts of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest ambient dimension accepted by the polyhedral engine.
    pub dim_cap: usize,
    /// Largest dimension in which vertex enumeration runs without opt-in.
    pub vertex_dim_cap: usize,
    /// Opt-in flag for vertex enumeration above `vertex_dim_cap`.
    pub allow_high_dim_vertices: bool,
    /// Largest cone dimension for Hilbert basis computations.
    pub hilbert_dim_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim_cap: 8,
            vertex_dim_cap: 6,
            allow_high_dim_vertices: false,
            hilbert_dim_cap: 7,
        }
    }
}

impl Limits {
    /// Errors when vertex enumeration in dimension `dim` is not allowed.
    pub fn check_vertex_dim(&self, dim: usize, what: &str) -> Result<()> {
        if dim > self.dim_cap {
            return Err(Error::DimensionCap {
                dim,
                cap: self.dim_cap,
                what: what.into(),
            });
        }
        if dim > self.vertex_dim_cap && !self.allow_high_dim_vertices {
            return Err(Error::DimensionCap {
                dim,
                cap: self.vertex_dim_cap,
                what: format!("{what} (vertex enumeration needs the high-dimension opt-in)"),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
pub(crate) struct DatumCache {
    pub(crate) relevant: OnceLock<Vec<IVec>>,
    pub(crate) unit_vertices: OnceLock<std::result::Result<Vec<QVec>, Error>>,
}

/// A validated degeneration datum.
#[derive(Debug, Clone)]
pub struct FcDatum {
    rank: usize,
    y_basis: IMat,
    b: QMat,
    a_linear: Option<QVec>,
    beta: IMat,
    n: i64,
    gram: IMat,
    gram_q: QMat,
    y_lattice: SubLattice,
    limits: Limits,
    pub(crate) cache: Arc<DatumCache>,
}

impl PartialEq for FcDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.y_basis == other.y_basis
            && self.b == other.b
            && self.a_linear == other.a_linear
    }
}

impl FcDatum {
    /// Validates a datum. `y_basis` is `g x g` with one generator of `Y` per
    /// column; `b` is the symmetric pairing on `X`; `a_linear`, when given, is a
    /// linear form `λ` with `A(y) = B(y, y)/2 + λ(y)`.
    pub fn new(y_basis: IMat, b: QMat, a_linear: Option<QVec>) -> Result<FcDatum> {
        let g = b.len();
        if g == 0 {
            return Err(Error::DimensionMismatch("rank must be at least 1".into()));
        }
        if b.iter().any(|r| r.len() != g) {
            return Err(Error::DimensionMismatch(
                "pairing matrix must be square".into(),
            ));
        }
        if y_basis.len() != g || y_basis.iter().any(|r| r.len() != g) {
            return Err(Error::DimensionMismatch(format!("Y basis must be {g}x{g}")));
        }
        if let Some(a) = &a_linear {
            if a.len() != g {
                return Err(Error::DimensionMismatch(format!(
                    "A correction must have {g} entries"
                )));
            }
        }
        for i in 0..g {
            for j in 0..i {
                if b[i][j] != b[j][i] {
                    return Err(Error::NonSymmetric { row: i, col: j });
                }
            }
        }
        if !is_positive_definite(&b) {
            let minors = leading_minors(&b);
            let (order, value) = minors
                .iter()
                .enumerate()
                .find(|(_, m)| !m.is_positive())
                .map(|(i, m)| (i + 1, fmt_q(m)))
                .expect("some minor is not positive");
            return Err(Error::NotPositiveDefinite { order, value });
        }
        let yq = imat_to_q(&y_basis);
        let ydet = crate::arith::matrix::det(&yq);
        if ydet.is_zero() {
            return Err(Error::SingularYBasis);
        }
        let by = crate::arith::matrix::mat_mul(&b, &yq);
        let mut beta = vec![vec![0i64; g]; g];
        for j in 0..g {
            for i in 0..g {
                let v = &by[i][j];
                match q_to_i64(v) {
                    Some(x) => beta[i][j] = x,
                    None => {
                        return Err(Error::NonIntegralOnYxX {
                            y_index: j,
                            x_index: i,
                            value: fmt_q(v),
                        })
                    }
                }
            }
        }
        let n = crate::arith::matrix::idet(&beta).abs();
        let binv = inverse(&b).expect("positive definite is invertible");
        let mut gram = vec![vec![0i64; g]; g];
        for i in 0..g {
            for j in 0..g {
                let v = &binv[i][j] * q(n);
                gram[i][j] = q_to_i64(&v).ok_or_else(|| {
                    Error::Internal(format!("N B^-1 is not integral at ({i},{j})"))
                })?;
            }
        }
        let y_lattice = SubLattice::from_columns(&y_basis);
        for j in 0..g {
            let col: IVec = (0..g).map(|i| gram[i][j]).collect();
            if !y_lattice.contains(&col) {
                return Err(Error::Internal(format!(
                    "phi(f_{j}) = {} is not in Y",
                    fmt_ivec(&col)
                )));
            }
        }
        let gram_q = imat_to_q(&gram);
        Ok(FcDatum {
            rank: g,
            y_basis,
            b,
            a_linear,
            beta,
            n,
            gram,
            gram_q,
            y_lattice,
            limits: Limits::default(),
            cache: Arc::new(DatumCache::default()),
        })
    }

    /// A principal datum (`Y = X`) with the given pairing.
    pub fn principal(b: QMat) -> Result<FcDatum> {
        let g = b.len();
        FcDatum::new(crate::arith::matrix::identity_i(g), b, None)
    }

    /// A principal datum with an integer pairing matrix.
    pub fn principal_int(b: &[Vec<i64>]) -> Result<FcDatum> {
        FcDatum::principal(imat_to_q(&b.to_vec()))
    }

    /// Replaces the size limits.
    pub fn with_limits(mut self, limits: Limits) -> FcDatum {
        self.limits = limits;
        self.cache = Arc::new(DatumCache::default());
        self
    }

    /// Size limits in force for this datum.
    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// The rank `g`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The `Y` basis, one generator per column.
    pub fn y_basis(&self) -> &IMat {
        &self.y_basis
    }

    /// The pairing matrix `B`.
    pub fn b(&self) -> &QMat {
        &self.b
    }

    /// The optional linear correction of `A`.
    pub fn a_linear(&self) -> Option<&QVec> {
        self.a_linear.as_ref()
    }

    /// True when `Y = X`.
    pub fn is_principal(&self) -> bool {
        self.y_lattice.index() == 1
    }

    /// The `β` matrix: column `j` is `β(y_j)` in the dual basis.
    pub fn beta_matrix(&self) -> &IMat {
        &self.beta
    }

    /// The integer Gram matrix `G = N B^{-1}` of the form `(u, v) ↦ u(φ(v))`.
    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    /// `G` as a rational matrix.
    pub fn gram_q(&self) -> &QMat {
        &self.gram_q
    }

    /// The lattice `Y` with canonical coset representatives.
    pub fn y_lattice(&self) -> &SubLattice {
        &self.y_lattice
    }

    /// `N = |X^∨ / β(Y)| = |det(B(y_i, e_j))|`.
    pub fn n_index(&self) -> i64 {
        self.n
    }

    /// `[X : Y]`.
    pub fn y_index(&self) -> i64 {
        self.y_lattice.index()
    }

    /// `β(y) = B(y, ·)` for `y ∈ Y`.
    pub fn beta(&self, y: &[i64]) -> Result<IVec> {
        self.check_dim(y)?;
        if !self.y_lattice.contains(y) {
            return Err(Error::NotInY(fmt_ivec(y)));
        }
        let v = mat_vec(&self.b, &to_q(y));
        v.iter()
            .map(|x| q_to_i64(x).ok_or_else(|| Error::Internal("β(y) not integral".into())))
            .collect()
    }

    /// `φ(u) = N B^{-1} u`, the unique element of `Y` with `β(φ(u)) = N u`.
    pub fn phi(&self, u: &[i64]) -> IVec {
        crate::arith::matrix::imat_vec(&self.gram, u)
    }

    /// `u(φ(v))`.
    pub fn pair_phi(&self, u: &[i64], v: &[i64]) -> i64 {
        crate::arith::rational::dot_i(u, &self.phi(v))
    }

    /// Checks that `ℓ` is admissible for this datum.
    pub fn check_level(&self, level: Level) -> Result<()> {
        if !level.is_integral() && !self.is_even() {
            return Err(Error::HalfLevelRequiresEvenForm(level.to_string()));
        }
        Ok(())
    }

    /// True when `u(φ(u))` is even for all `u`, i.e. `G` has even diagonal.
    pub fn is_even(&self) -> bool {
        (0..self.rank).all(|i| self.gram[i][i] % 2 == 0)
    }

    /// `E_ℓ(u) = ℓ u(φ(u))`.
    pub fn e_level(&self, level: Level, u: &[i64]) -> i64 {
        let t = level.k() * self.pair_phi(u, u);
        assert!(
            t % 2 == 0,
            "E at level {level} is not integral; check_level was skipped"
        );
        t / 2
    }

    /// `E_ℓ` as an exact rational (no integrality assertion).
    pub fn e_level_q(&self, level: Level, u: &[i64]) -> Q {
        level.as_q() * q(self.pair_phi(u, u))
    }

    /// `B(x, y)` for lattice vectors.
    pub fn b_pair(&self, x: &[i64], y: &[i64]) -> Q {
        dot_iq(x, &mat_vec(&self.b, &to_q(y)))
    }

    /// `B(x, y)` for rational vectors.
    pub fn b_pair_q(&self, x: &[Q], y: &[Q]) -> Q {
        crate::arith::rational::dot(x, &mat_vec(&self.b, y))
    }

    /// `C_ℓ(x) = B(x, x) / (4ℓN)`.
    pub fn c_value(&self, level: Level, x: &[i64]) -> Q {
        self.b_pair(x, x) / q(2 * level.k() * self.n)
    }

    /// `C_ℓ(x) = B(x, x) / (4ℓN)` at a rational point.
    pub fn c_value_q(&self, level: Level, x: &[Q]) -> Q {
        self.b_pair_q(x, x) / q(2 * level.k() * self.n)
    }

    /// `A(y) = B(y, y)/2 + λ(y)`.
    pub fn a_value(&self, y: &[i64]) -> Q {
        let base = self.b_pair(y, y) / q(2);
        match &self.a_linear {
            Some(l) => base + dot_iq(y, l),
            None => base,
        }
    }

    /// Generators (columns) of the translation lattice `2ℓφ(X^∨)`.
    pub fn translation_generators(&self, level: Level) -> IMat {
        let k = level.k();
        self.gram
            .iter()
            .map(|r| r.iter().map(|x| k * x).collect())
            .collect()
    }

    /// The translation lattice `2ℓφ(X^∨)`.
    pub fn translation_lattice(&self, level: Level) -> SubLattice {
        SubLattice::from_columns(&self.translation_generators(level))
    }

    /// Generators (columns) of `2ℓNY`.
    pub fn quotient_generators(&self, level: Level) -> IMat {
        let k = level.k() * self.n;
        self.y_basis
            .iter()
            .map(|r| r.iter().map(|x| k * x).collect())
            .collect()
    }

    /// `2ℓφ(u)`.
    pub fn shift(&self, level: Level, u: &[i64]) -> IVec {
        self.phi(u).iter().map(|x| level.k() * x).collect()
    }

    /// The lattice `β(Y) ⊆ X^∨`.
    pub fn beta_lattice(&self) -> SubLattice {
        SubLattice::from_columns(&self.beta)
    }

    /// Smith decomposition of the `β` matrix.
    pub fn beta_smith(&self) -> SmithDecomposition {
        smith(&self.beta)
    }

    /// Rows of `B` as rational vectors (used as linear functionals).
    pub fn b_rows(&self) -> QMat {
        transpose(&self.b)
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for rank {}",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validation_errors() {
        assert!(matches!(
            FcDatum::principal_int(&[vec![0]]),
            Err(Error::NotPositiveDefinite { order: 1, .. })
        ));
        match FcDatum::principal_int(&[vec![2, -1], vec![-1, -2]]) {
            Err(Error::NotPositiveDefinite { order, value }) => {
                assert_eq!(order, 2);
                assert_eq!(value, "-5");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            FcDatum::principal_int(&[vec![2, 1], vec![-1, 2]]),
            Err(Error::NonSymmetric { .. })
        ));
        let half = crate::arith::rational::qr(1, 2);
        assert!(matches!(
            FcDatum::principal(vec![vec![half.clone(), q(0)], vec![q(0), q(1)]]),
            Err(Error::NonIntegralOnYxX { .. })
        ));
        assert!(matches!(
            FcDatum::new(
                vec![vec![1, 2], vec![2, 4]],
                vec![vec![q(1), q(0)], vec![q(0), q(1)]],
                None
            ),
            Err(Error::SingularYBasis)
        ));
    }

    #[test]
    fn derived_maps_on_the_hexagon_datum() {
        let d = fixtures::hexagon();
        assert_eq!(d.beta(&[1, 0]).unwrap(), vec![2, -1]);
        assert_eq!(d.beta(&[0, 0]).unwrap(), vec![0, 0]);
        assert_eq!(d.n_index(), 3);
        assert_eq!(d.phi(&[1, 0]), vec![2, 1]);
        assert_eq!(d.phi(&[0, 0]), vec![0, 0]);
        let l1 = Level::new(1).unwrap();
        assert_eq!(d.e_level(l1, &[1, 0]), 2);
        assert_eq!(d.e_level(l1, &[0, 0]), 0);
        assert_eq!(d.c_value(l1, &[3, 0]), crate::arith::rational::qr(3, 2));
        assert_eq!(d.c_value(l1, &[0, 0]), q(0));
    }

    #[test]
    fn derived_maps_on_the_tate_datum() {
        let d = fixtures::tate();
        assert_eq!(d.beta(&[1]).unwrap(), vec![2]);
        assert_eq!(d.n_index(), 2);
        assert_eq!(d.phi(&[1]), vec![1]);
        assert_eq!(d.e_level(Level::new(3).unwrap(), &[2]), 12);
        assert_eq!(d.c_value(Level::new(1).unwrap(), &[2]), q(1));
    }

    #[test]
    fn e8_is_unimodular() {
        assert_eq!(fixtures::e8().n_index(), 1);
    }

    #[test]
    fn half_level_needs_an_even_form() {
        let hex = fixtures::hexagon();
        assert!(hex.check_level(Level::half()).is_ok());
        let odd = FcDatum::principal_int(&[vec![1]]).unwrap();
        assert!(matches!(
            odd.check_level(Level::half()),
            Err(Error::HalfLevelRequiresEvenForm(_))
        ));
    }

    #[test]
    fn non_principal_beta_rejects_points_outside_y() {
        let d = FcDatum::new(
            vec![vec![1, 0], vec![0, 3]],
            imat_to_q(&vec![vec![2, -1], vec![-1, 2]]),
            None,
        )
        .unwrap();
        assert!(matches!(d.beta(&[0, 1]), Err(Error::NotInY(_))));
        assert_eq!(d.n_index(), 9);
    }
}
