//! Circuit normals and their constants.
//!
//! In the quasi-symmetric case the circuits of the ray configuration are
//! indexed weight-side: a primitive `l ∈ ℤᵏ` is a circuit normal exactly when
//! the weights on `H_l = {⟨l, −⟩ = 0}` span `H_l`. The constant of the circuit
//! is `c = ∏_{m_j ≠ 0} m_j^{m_j}` with `m_j = ⟨l, β_j⟩`, and can equally be
//! computed from the lattice lengths as `∏_j n_j^{m_j}`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, primitive};
use crate::scalar::rational_pow;
use crate::weights::{hyperplane_is_spanned, partition_lines, require_quasi_symmetric, WeightSystem};
use crate::{IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub normal: IntVector,
    pub exponents: IntVector,
    pub constant: BigRational,
}

/// Primitive normal of the span of `k − 1` vectors in `ℤᵏ`, if that span is
/// a hyperplane.
fn span_normal(vectors: &[IntVector], k: usize) -> Option<IntVector> {
    let m = if vectors.is_empty() {
        IntMatrix::zeros(0, k)
    } else {
        IntMatrix::from_rows(vectors.to_vec()).expect("vectors share a length")
    };
    let kernel = kernel_basis(&m);
    if kernel.cols() != 1 {
        return None;
    }
    Some(primitive(&kernel.column(0)).expect("kernel basis vectors are nonzero"))
}

/// All circuit normals, sorted lexicographically.
pub fn enumerate_circuit_normals(ws: &WeightSystem) -> Result<Vec<IntVector>> {
    require_quasi_symmetric(ws)?;
    let k = ws.rank();
    // one representative per line; proportional weights span the same space
    let directions: Vec<IntVector> = partition_lines(ws).into_iter().map(|g| g.direction).collect();
    let mut normals = BTreeSet::new();
    for subset in directions.iter().cloned().combinations(k - 1) {
        let Some(l) = span_normal(&subset, k) else { continue };
        if normals.contains(&l) {
            continue;
        }
        if hyperplane_is_spanned(ws, &l)? {
            normals.insert(l);
        }
    }
    Ok(normals.into_iter().collect())
}

/// `m_j = ⟨l, β_j⟩` for every weight.
pub fn circuit_exponents(ws: &WeightSystem, l: &[BigInt]) -> Result<IntVector> {
    ws.pairings(l)
}

/// `∏_{m_j ≠ 0} m_j^{m_j}`.
pub fn circuit_constant(ws: &WeightSystem, l: &[BigInt]) -> Result<BigRational> {
    let exponents = circuit_exponents(ws, l)?;
    if exponents.iter().all(Zero::is_zero) {
        return Err(Error::AllZeroExponents(l.to_vec()));
    }
    Ok(exponents
        .iter()
        .filter(|m| !m.is_zero())
        .fold(BigRational::one(), |acc, m| acc * rational_pow(m, m)))
}

/// `∏_j n_j^{⟨l, β_j⟩}` with `n_j` the signed lattice length of `β_j` on its
/// line.
pub fn circuit_constant_via_lengths(ws: &WeightSystem, l: &[BigInt]) -> Result<BigRational> {
    require_quasi_symmetric(ws)?;
    let exponents = circuit_exponents(ws, l)?;
    let mut acc = BigRational::one();
    for group in partition_lines(ws) {
        for (&j, n) in group.members.iter().zip(&group.lengths) {
            acc *= rational_pow(n, &exponents[j]);
        }
    }
    Ok(acc)
}

pub fn circuits(ws: &WeightSystem) -> Result<Vec<Circuit>> {
    enumerate_circuit_normals(ws)?
        .into_iter()
        .map(|normal| {
            let exponents = circuit_exponents(ws, &normal)?;
            let constant = circuit_constant(ws, &normal)?;
            Ok(Circuit {
                normal,
                exponents,
                constant,
            })
        })
        .collect()
}
