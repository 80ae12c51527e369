//! The zonotope `Σ̄ = Σ_j [−β_j, 0]` and the facets of `∇̄ = ½ Σ̄`.
//!
//! Facet normals are found from generator subsets by generalized cross
//! product (signed maximal minors) and checked with fraction-free
//! elimination, so this side shares no code path with
//! [`crate::circuits::enumerate_circuit_normals`].

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::lattice::{determinant, primitive};
use crate::matrix::dot;
use crate::weights::{require_quasi_symmetric, WeightSystem};
use crate::{IntMatrix, IntVector};

/// `η_l = max{⟨l, μ⟩ : μ ∈ Σ̄} = Σ_j max(0, −⟨l, β_j⟩)`.
pub fn support_eta(ws: &WeightSystem, l: &[BigInt]) -> Result<BigInt> {
    ws.check_dim(l)?;
    Ok(ws
        .weights()
        .iter()
        .map(|beta| -dot(l, beta))
        .filter(|x| x.is_positive())
        .sum())
}

/// Generalized cross product of `k − 1` vectors in `ℤᵏ`: entry `i` is
/// `(−1)^i` times the minor with column `i` deleted. For `k = 1` this is `(1)`.
fn cross_product(vectors: &[IntVector], k: usize) -> IntVector {
    (0..k)
        .map(|i| {
            let keep: Vec<usize> = (0..k).filter(|&c| c != i).collect();
            let rows: Vec<IntVector> = vectors
                .iter()
                .map(|v| keep.iter().map(|&c| v[c].clone()).collect())
                .collect();
            let minor = if rows.is_empty() {
                BigInt::from(1)
            } else {
                determinant(&IntMatrix::from_rows(rows).expect("square minor"))
            };
            if i % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
        .collect()
}

/// Rank by fraction-free row elimination.
fn elimination_rank(vectors: &[IntVector]) -> usize {
    let mut rows: Vec<IntVector> = vectors.to_vec();
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let a = row[col].clone();
            if a.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot_row[col] - &a * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Normals `l` (sign-normalized, one per `±` pair) of the facets of `∇̄`,
/// sorted lexicographically. The face of `∇̄` in direction `l` is a
/// translate of the zonotope of the generators with `⟨l, β⟩ = 0`, so it is a
/// facet exactly when those generators have rank `k − 1`.
pub fn hls_facet_normals(ws: &WeightSystem) -> Result<Vec<IntVector>> {
    require_quasi_symmetric(ws)?;
    let k = ws.rank();
    let generators: Vec<IntVector> = ws
        .weights()
        .into_iter()
        .unique_by(|b| primitive(b).expect("nonzero weight"))
        .collect();
    let mut normals = BTreeSet::new();
    for subset in generators.iter().cloned().combinations(k - 1) {
        let normal = cross_product(&subset, k);
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let l = primitive(&normal)?;
        if normals.contains(&l) {
            continue;
        }
        let face: Vec<IntVector> = generators
            .iter()
            .filter(|g| dot(&l, g).is_zero())
            .cloned()
            .collect();
        if elimination_rank(&face) + 1 == k {
            normals.insert(l);
        }
    }
    Ok(normals.into_iter().collect())
}

/// `Σ_{⟨l, β_j⟩ > 0} β_j / 2`, the point the facet `F₊` passes through.
pub fn facet_point(ws: &WeightSystem, l: &[BigInt]) -> Result<Vec<BigRational>> {
    ws.check_dim(l)?;
    let mut point = vec![BigRational::zero(); ws.rank()];
    for beta in ws.weights() {
        if dot(l, &beta).is_positive() {
            for (p, b) in point.iter_mut().zip(&beta) {
                *p += BigRational::new(b.clone(), BigInt::from(2));
            }
        }
    }
    Ok(point)
}

/// `c_F = ⟨l, Σ_{⟨l, β_j⟩ > 0} β_j / 2⟩`, a half-integer.
pub fn hls_offset(ws: &WeightSystem, l: &[BigInt]) -> Result<BigRational> {
    let point = facet_point(ws, l)?;
    let l: Vec<BigRational> = l.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    Ok(dot(&l, &point))
}
