//! Exact-arithmetic computations around Dynkin indices of representations and the
//! combinatorics of the affine Grassmannian.
//!
//! Modules:
//! - [`rootsys`]: root data of the simple types A–G with the invariant form normalized
//!   so that the highest root has squared length 2.
//! - [`repchar`]: weight multiplicities (Freudenthal) and sl₂(θ)-string decompositions.
//! - [`dynkin`]: the Dynkin index by weight sums, string binomials and trace ratios.
//! - [`charclass`]: truncated cohomology rings and the second-Chern-class recursion.
//! - [`affine`]: the affine Kac-Moody bracket over `sl_N`, integrability and Verma dimensions.
//! - [`affweyl`]: affine Weyl group, minimal coset representatives and Bruhat order.
//! - [`latgrass`]: lattice model of the affine Grassmannian for `SL_N`.

pub mod affine;
pub mod affweyl;
pub mod charclass;
pub mod dynkin;
pub mod field;
pub mod laurent;
pub mod latgrass;
pub mod matrix;
pub mod repchar;
pub mod rootsys;
pub mod serde_util;

use thiserror::Error;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed character: {0}")]
    MalformedCharacter(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("mixed rings: {0}")]
    MixedRings(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("out of window: needs depth n >= {min_n}, window has n = {n}")]
    OutOfWindow { n: usize, min_n: usize },
    #[error("not a loop-group element: {0}")]
    NotLoopElement(String),
    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
