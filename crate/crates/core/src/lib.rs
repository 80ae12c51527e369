//! Exact arithmetic for the discriminant locus of a quasi-symmetric torus
//! representation.
//!
//! Given the integer weight matrix of a representation `T ↺ ℂⁿ`, this crate
//! decides the Calabi–Yau, quasi-symmetric and self-dual predicates,
//! enumerates circuit normals with their exact constants, evaluates the Horn
//! uniformization in factored form, and builds two hyperplane arrangements in
//! `L^∨_ℂ`:
//!
//! * the discriminant arrangement, one `ℤ`-orbit `⟨l, y⟩ ∈ Log_br(c) + ℤ` per
//!   circuit normal `l` with constant `c`;
//! * the zonotope arrangement, one orbit per facet pair of `½ Σ_j [−β_j, 0]`.
//!
//! [`arrangements::compare_arrangements`] checks that the two coincide after
//! an explicit imaginary translation. Imaginary offsets are carried as
//! [`LogReal`] values, ℚ-combinations of `1` and `log p`, so every comparison
//! is decided exactly.
//!
//! The lattice layer ([`matrix`], [`lattice`]) is generic over the integer
//! ring and the Horn evaluator over the coefficient field (see [`scalar`]);
//! the aliases below fix the arbitrary-precision instances used everywhere
//! else.

pub mod arrangements;
pub mod circuits;
pub mod error;
pub mod generate;
pub mod horn;
pub mod lattice;
pub mod logreal;
pub mod matrix;
pub mod scalar;
pub mod weights;
pub mod zonotope;

pub use error::{Error, Result};
pub use logreal::LogReal;
pub use weights::{LineGroup, WeightSystem};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Exact rational over [`Int`].
pub type Rational = num_rational::BigRational;
/// Integer vector, e.g. a weight `β_j ∈ ℤᵏ` or a normal `l ∈ ℤᵏ`.
pub type IntVector = Vec<Int>;
/// Dense matrix of arbitrary-precision integers.
pub type IntMatrix = matrix::Matrix<Int>;
/// Smith decomposition over [`Int`].
pub type IntSmith = lattice::Smith<Int>;
