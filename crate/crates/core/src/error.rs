use thiserror::Error;

use crate::{Int, IntVector};

pub type Result<T> = std::result::Result<T, Error>;

fn show(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight matrix is empty")]
    EmptyMatrix,
    #[error("weight matrix is not rectangular: column {column} has length {found}, expected {expected}")]
    Ragged {
        column: usize,
        expected: usize,
        found: usize,
    },
    /// Column index is 1-based.
    #[error("weight {0} is zero (a torus-invariant coordinate)")]
    ZeroWeight(usize),
    #[error("weight matrix is not surjective onto Z^k (invariant factors {}); rerun with --reduce to pass to the image lattice", show(.invariant_factors))]
    NotSurjective { invariant_factors: IntVector },
    #[error("weight matrix is identically zero")]
    ZeroMatrix,
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector {} is not primitive", show(.0))]
    NotPrimitive(IntVector),
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a positive rational, found {0}")]
    NonPositive(crate::Rational),
    #[error("the weights on the hyperplane <{}, -> = 0 do not span it", show(.0))]
    SpanFailure(IntVector),
    #[error("representation is not quasi-symmetric: the weights on the line through {} sum to {}", show(.direction), show(.line_sum))]
    NotQuasiSymmetric {
        direction: IntVector,
        line_sum: IntVector,
    },
    #[error("representation is not Calabi-Yau: the weights sum to {}", show(.0))]
    NotCalabiYau(IntVector),
    #[error("normal {} pairs to zero with every weight", show(.0))]
    AllZeroExponents(IntVector),
    #[error("evaluation point lies on the hyperplane of the line through {}", show(.0))]
    PoleOrZero(IntVector),
    #[error("normal {} appears in only one of the two arrangements", show(.0))]
    UnmatchedNormal(IntVector),
}
