//! The Horn uniformization `[λ] ↦ (∏_j ⟨λ, β_j⟩^{β_{ji}})_i`, kept in
//! factored form.
//!
//! Grouping the weights by line, each line `ℓ = ℤ·ℓ̄` contributes
//! `const_{ℓ,i} · ⟨λ, ℓ̄⟩^{σ_{ℓ,i}}` to coordinate `i`, where
//! `const_{ℓ,i} = ∏_{β_j ∈ ℓ} n_j^{β_{ji}}` and `σ_ℓ = Σ_{β_j ∈ ℓ} β_j`.
//! The map is constant exactly when every `σ_ℓ` vanishes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::dot;
use crate::scalar::{rational_pow, signed_pow, Field};
use crate::weights::{partition_lines, require_calabi_yau, WeightSystem};
use crate::IntVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornLine {
    pub direction: IntVector,
    /// `const_{ℓ,i}` per output coordinate.
    pub constants: Vec<BigRational>,
    /// `σ_{ℓ,i}` per output coordinate.
    pub exponents: IntVector,
}

impl HornLine {
    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornForm {
    rank: usize,
    lines: Vec<HornLine>,
}

impl HornForm {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lines(&self) -> &[HornLine] {
        &self.lines
    }

    /// The constant value, when every line exponent vanishes.
    pub fn constant_value(&self) -> Option<Vec<BigRational>> {
        if !self.lines.iter().all(HornLine::is_constant) {
            return None;
        }
        Some(
            (0..self.rank)
                .map(|i| {
                    self.lines
                        .iter()
                        .fold(BigRational::one(), |acc, line| acc * &line.constants[i])
                })
                .collect(),
        )
    }

    pub fn evaluate<F: Field>(&self, lambda: &[F]) -> Result<Vec<F>> {
        if lambda.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: lambda.len(),
            });
        }
        let mut values = vec![F::one(); self.rank];
        for line in &self.lines {
            let direction: Vec<F> = line.direction.iter().map(F::from_int).collect();
            let form = dot(lambda, &direction);
            if form.is_zero() {
                return Err(Error::PoleOrZero(line.direction.clone()));
            }
            for (i, value) in values.iter_mut().enumerate() {
                let factor = F::from_rational(&line.constants[i]) * signed_pow(&form, &line.exponents[i]);
                *value = value.clone() * factor;
            }
        }
        Ok(values)
    }
}

pub fn horn_decompose(ws: &WeightSystem) -> Result<HornForm> {
    require_calabi_yau(ws)?;
    let k = ws.rank();
    let lines = partition_lines(ws)
        .into_iter()
        .map(|group| {
            let mut constants = vec![BigRational::one(); k];
            for (&j, n) in group.members.iter().zip(&group.lengths) {
                let beta = ws.weight(j);
                for (c, b) in constants.iter_mut().zip(&beta) {
                    *c *= rational_pow(n, b);
                }
            }
            HornLine {
                direction: group.direction,
                constants,
                exponents: group.line_sum,
            }
        })
        .collect();
    Ok(HornForm { rank: k, lines })
}

pub fn horn_evaluate<F: Field>(ws: &WeightSystem, lambda: &[F]) -> Result<Vec<F>> {
    horn_decompose(ws)?.evaluate(lambda)
}

pub fn horn_is_constant(ws: &WeightSystem) -> Result<Option<Vec<BigRational>>> {
    Ok(horn_decompose(ws)?.constant_value())
}

/// Whether the component with normal `l` is a log-hyperplane
/// `{x^l = c}`: every line not contained in `H_l` is balanced.
pub fn is_component_hyperplane(ws: &WeightSystem, l: &[BigInt]) -> bool {
    partition_lines(ws)
        .iter()
        .filter(|g| !dot(l, &g.direction).is_zero())
        .all(|g| g.is_balanced())
}
