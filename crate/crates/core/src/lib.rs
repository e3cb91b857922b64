//! Permutation geometry on `S_n` and the codimension bounds built from it.
//!
//! Monomials `x_σ(1)···x_σ(n)` of the multilinear part are identified with
//! permutations. The crate provides
//!
//! * [`perm`]: inversion sets, the word metric and d-good/d-bad classification,
//! * [`greedy`]: left greedy form and chunk-preserving decompositions,
//! * [`mahonian`]: exact counts `I_n(k)` and ball sizes,
//! * [`bounds`]: the classic `(d-1)^{2n}` bound against `#B̂((n-d)/2)`,
//! * [`reduction`]: constructive rewriting for both spanning statements,
//! * [`verify`]: exhaustive property suites.
//!
//! Exact counts are generic over [`scalar::Count`]; the aliases below fix the
//! arbitrary-precision choice used throughout the bound calculators.

pub mod bounds;
pub mod error;
pub mod greedy;
pub mod limits;
pub mod mahonian;
pub mod perm;
pub mod reduction;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use greedy::{GreedyForm, PieceDecomposition, Rearrangement, Span};
pub use perm::{InversionSet, Permutation};

/// Exact radius of a ball in the word metric; `K_n = (n-d)/2` is half-integral.
pub type Radius = num_rational::Ratio<i64>;

/// Arbitrary-precision Mahonian row.
pub type BigRow = mahonian::MahonianRow<num_bigint::BigUint>;

/// Machine-word Mahonian row; exact up to `n = 21`.
pub type U64Row = mahonian::MahonianRow<u64>;

/// Asymptotic constants in double precision.
pub type Constants = bounds::AsymptoticConstants<f64>;
