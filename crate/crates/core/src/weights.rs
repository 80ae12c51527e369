//! The input representation: a validated weight matrix `Q` whose columns are
//! the weights `β_j ∈ L^∨ ≅ ℤᵏ`, its decomposition into lines through the
//! origin, and the Calabi–Yau / quasi-symmetric / self-dual predicates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, column_hermite, kernel_basis, primitive, smith_normal_form};
use crate::{IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    q: IntMatrix,
}

impl WeightSystem {
    /// Rank `k` of the torus.
    pub fn rank(&self) -> usize {
        self.q.rows()
    }

    /// Number `n` of weights.
    pub fn len(&self) -> usize {
        self.q.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.q.cols() == 0
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.q
    }

    pub fn weight(&self, j: usize) -> IntVector {
        self.q.column(j)
    }

    pub fn weights(&self) -> Vec<IntVector> {
        self.q.columns()
    }

    /// `⟨l, β_j⟩` for every `j`.
    pub fn pairings(&self, l: &[BigInt]) -> Result<IntVector> {
        self.check_dim(l)?;
        Ok(self.q.transpose().mul_vec(l))
    }

    pub fn weight_sum(&self) -> IntVector {
        (0..self.rank())
            .map(|i| self.q.row(i).iter().sum())
            .collect()
    }

    pub(crate) fn check_dim(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Builds a system from weight vectors, validating as [`validate`] does.
    pub fn from_weights(weights: &[IntVector]) -> Result<Self> {
        validate(&weights_to_matrix(weights)?)
    }
}

/// Stacks weight vectors as the columns of a `k × n` matrix.
pub fn weights_to_matrix(weights: &[IntVector]) -> Result<IntMatrix> {
    let k = weights.first().ok_or(Error::EmptyMatrix)?.len();
    if k == 0 {
        return Err(Error::EmptyMatrix);
    }
    IntMatrix::from_columns(k, weights)
}

fn check_shape(raw: &IntMatrix) -> Result<()> {
    if raw.rows() == 0 || raw.cols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok(())
}

pub fn validate(raw: &IntMatrix) -> Result<WeightSystem> {
    check_shape(raw)?;
    if let Some(j) = (0..raw.cols()).find(|&j| raw.column(j).iter().all(Zero::is_zero)) {
        return Err(Error::ZeroWeight(j + 1));
    }
    let smith = smith_normal_form(raw);
    let factors = smith.invariant_factors();
    if factors.len() < raw.rows() || !factors.iter().all(One::is_one) {
        let mut invariant_factors = factors;
        invariant_factors.resize(raw.rows(), BigInt::zero());
        return Err(Error::NotSurjective { invariant_factors });
    }
    Ok(WeightSystem { q: raw.clone() })
}

/// Rewrites the weights in a basis of the image lattice `im Q ⊂ ℤᵏ`.
///
/// Returns the reduced system together with the `k × k'` basis matrix `B`
/// (columns a lower Hermite basis of `im Q`) so that `Q = B · Q'`. A matrix
/// that is already surjective comes back unchanged with `B = I`.
pub fn reduce_to_image(raw: &IntMatrix) -> Result<(WeightSystem, IntMatrix)> {
    check_shape(raw)?;
    if raw.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    match validate(raw) {
        Ok(ws) => return Ok((ws, IntMatrix::identity(raw.rows()))),
        Err(Error::NotSurjective { .. }) => {}
        Err(e) => return Err(e),
    }
    let herm = column_hermite(raw);
    let basis_cols: Vec<usize> = (0..herm.rank).collect();
    let basis = herm.h.select_columns(&basis_cols);
    let reduced = herm.w_inv.select_rows(&basis_cols);
    let ws = validate(&reduced)?;
    Ok((ws, basis))
}

/// A line through the origin of `L^∨_ℝ` together with the weights on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineGroup {
    /// Primitive generator, first nonzero entry positive.
    pub direction: IntVector,
    /// 0-based weight indices, ascending.
    pub members: Vec<usize>,
    /// `n_j` with `β_j = n_j · direction`, aligned with `members`.
    pub lengths: IntVector,
    pub line_sum: IntVector,
}

impl LineGroup {
    /// Sum of the lengths; the line sum is this multiple of the direction.
    pub fn total_length(&self) -> BigInt {
        self.lengths.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.line_sum.iter().all(Zero::is_zero)
    }
}

/// Groups the weights by the line they span, in order of first appearance.
pub fn partition_lines(ws: &WeightSystem) -> Vec<LineGroup> {
    let mut index: BTreeMap<IntVector, usize> = BTreeMap::new();
    let mut groups: Vec<LineGroup> = Vec::new();
    for (j, beta) in ws.weights().into_iter().enumerate() {
        let direction = primitive(&beta).expect("validated weights are nonzero");
        let pivot = direction.iter().position(|x| !x.is_zero()).unwrap();
        let length = &beta[pivot] / &direction[pivot];
        let g = *index.entry(direction.clone()).or_insert_with(|| {
            groups.push(LineGroup {
                line_sum: vec![BigInt::zero(); direction.len()],
                direction,
                members: Vec::new(),
                lengths: Vec::new(),
            });
            groups.len() - 1
        });
        let group = &mut groups[g];
        group.members.push(j);
        group.lengths.push(length);
        for (s, b) in group.line_sum.iter_mut().zip(&beta) {
            *s += b;
        }
    }
    groups
}

pub fn is_calabi_yau(ws: &WeightSystem) -> bool {
    ws.weight_sum().iter().all(Zero::is_zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiSymmetry {
    Holds,
    /// The first line (in [`partition_lines`] order) whose weights do not
    /// sum to zero.
    Fails {
        direction: IntVector,
        line_sum: IntVector,
    },
}

impl QuasiSymmetry {
    pub fn holds(&self) -> bool {
        matches!(self, QuasiSymmetry::Holds)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            QuasiSymmetry::Holds => Ok(()),
            QuasiSymmetry::Fails {
                direction,
                line_sum,
            } => Err(Error::NotQuasiSymmetric {
                direction,
                line_sum,
            }),
        }
    }
}

pub fn is_quasi_symmetric(ws: &WeightSystem) -> QuasiSymmetry {
    match partition_lines(ws).into_iter().find(|g| !g.is_balanced()) {
        None => QuasiSymmetry::Holds,
        Some(g) => QuasiSymmetry::Fails {
            direction: g.direction,
            line_sum: g.line_sum,
        },
    }
}

pub(crate) fn require_quasi_symmetric(ws: &WeightSystem) -> Result<()> {
    is_quasi_symmetric(ws).into_result()
}

pub(crate) fn require_calabi_yau(ws: &WeightSystem) -> Result<()> {
    if is_calabi_yau(ws) {
        Ok(())
    } else {
        Err(Error::NotCalabiYau(ws.weight_sum()))
    }
}

/// Whether the multiset of weights is closed under negation.
pub fn is_self_dual(ws: &WeightSystem) -> bool {
    let mut counts: BTreeMap<IntVector, i64> = BTreeMap::new();
    for beta in ws.weights() {
        *counts.entry(beta).or_default() += 1;
    }
    counts.iter().all(|(beta, &c)| {
        let neg: IntVector = beta.iter().map(|x| -x).collect();
        counts.get(&neg).copied().unwrap_or(0) == c
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayWarning {
    /// Rays `ω_a = ω_b`, 0-based indices.
    DuplicateRays(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayData {
    /// `(n − k) × n` matrix `A`; column `i` is the ray `ω_i ∈ N ≅ ℤ^{n−k}`.
    pub rays: IntMatrix,
    /// `m ∈ M` with `⟨m, ω_i⟩ = 1` for all `i`, present when Calabi–Yau.
    pub cy_witness: Option<IntVector>,
    pub warnings: Vec<RayWarning>,
}

pub fn ray_data(ws: &WeightSystem) -> RayData {
    let kernel = kernel_basis(ws.matrix());
    let rays = kernel.transpose();
    let cy_witness = if is_calabi_yau(ws) {
        let ones = vec![BigInt::one(); ws.len()];
        // the all-ones covector lies in the saturated lattice M = ker Q
        let coords = lattice::solve(&kernel, &ones)
            .expect("dimensions agree")
            .expect("all-ones covector lies in ker Q for a Calabi-Yau system");
        Some(coords)
    } else {
        None
    };
    let columns = rays.columns();
    let mut warnings = Vec::new();
    for a in 0..columns.len() {
        for b in a + 1..columns.len() {
            if columns[a] == columns[b] {
                warnings.push(RayWarning::DuplicateRays(a, b));
            }
        }
    }
    RayData {
        rays,
        cy_witness,
        warnings,
    }
}

/// Indices of the weights lying on `H_l = {⟨l, −⟩ = 0}`.
pub(crate) fn weights_on_hyperplane(ws: &WeightSystem, l: &[BigInt]) -> Result<Vec<usize>> {
    Ok(ws
        .pairings(l)?
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_zero())
        .map(|(j, _)| j)
        .collect())
}

/// Whether the weights on `H_l` span the `(k−1)`-dimensional space `H_l`.
pub(crate) fn hyperplane_is_spanned(ws: &WeightSystem, l: &[BigInt]) -> Result<bool> {
    let on = weights_on_hyperplane(ws, l)?;
    let sub = ws.matrix().select_columns(&on);
    Ok(lattice::rank(&sub) + 1 == ws.rank())
}

/// The rank-1 system `m_j = ⟨l, β_j⟩` over the weights off `H_l`, i.e. the
/// weights of the induced representation of the circuit with normal `l`.
pub fn restrict_to_circuit(ws: &WeightSystem, l: &[BigInt]) -> Result<WeightSystem> {
    ws.check_dim(l)?;
    if !lattice::is_primitive(l) {
        return Err(Error::NotPrimitive(l.to_vec()));
    }
    if !hyperplane_is_spanned(ws, l)? {
        return Err(Error::SpanFailure(l.to_vec()));
    }
    let m: IntVector = ws.pairings(l)?.into_iter().filter(|x| !x.is_zero()).collect();
    validate(&IntMatrix::from_rows(vec![m])?)
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use crate::generate;
    use crate::matrix::dot;
    use rand::{rngs::StdRng, SeedableRng};
    use proptest::prelude::*;

    #[test]
    fn validate_examples() {
        let c = ws1(&[1, 1, -1, -1]);
        assert_eq!((c.rank(), c.len()), (1, 4));
        assert_eq!(
            validate(&raw(&[&[2], &[-2]])),
            Err(Error::NotSurjective {
                invariant_factors: ints(&[2])
            })
        );
        let zero_second = IntMatrix::from_rows(vec![ints(&[1, 0]), ints(&[0, 0])]).unwrap();
        assert_eq!(validate(&zero_second), Err(Error::ZeroWeight(2)));
        // rank-deficient: a zero invariant factor is reported
        assert_eq!(
            validate(&raw(&[&[1, 1], &[2, 2]])),
            Err(Error::NotSurjective {
                invariant_factors: ints(&[1, 0])
            })
        );
    }

    #[test]
    fn reduce_examples() {
        let (r, b) = reduce_to_image(&raw(&[&[2], &[-2]])).unwrap();
        assert_eq!(r, ws1(&[1, -1]));
        assert_eq!(b, IntMatrix::from_rows(vec![ints(&[2])]).unwrap());

        let (r, b) = reduce_to_image(&raw(&[&[1], &[-2], &[1]])).unwrap();
        assert_eq!(r, ws1(&[1, -2, 1]));
        assert_eq!(b, IntMatrix::identity(1));

        let input = raw(&[&[2, 0], &[0, 2], &[-2, -2]]);
        let (r, b) = reduce_to_image(&input).unwrap();
        assert_eq!(r, ws(&[&[1, 0], &[0, 1], &[-1, -1]]));
        assert_eq!(b, IntMatrix::from_rows(vec![ints(&[2, 0]), ints(&[0, 2])]).unwrap());
        assert_eq!(b.mul(r.matrix()), input);

        assert_eq!(reduce_to_image(&raw(&[&[0], &[0]])), Err(Error::ZeroMatrix));
    }

    #[test]
    fn reduce_drops_rank() {
        let input = raw(&[&[1, 2], &[-1, -2], &[3, 6]]);
        let (r, b) = reduce_to_image(&input).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(b.mul(r.matrix()), input);
    }

    #[test]
    fn partition_examples() {
        let g = partition_lines(&ws1(&[1, 1, -1, -1]));
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].direction, ints(&[1]));
        assert_eq!(g[0].lengths, ints(&[1, 1, -1, -1]));

        let g = partition_lines(&ws(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert_eq!(g.len(), 2);

        let g = partition_lines(&ws(&[&[2, 0], &[-1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].direction, ints(&[1, 0]));
        assert_eq!(g[0].members, vec![0, 1, 2]);
        assert_eq!(g[0].lengths, ints(&[2, -1, -1]));
        assert_eq!(g[1].direction, ints(&[0, 1]));
        assert_eq!(g[1].lengths, ints(&[1, -1]));
    }

    #[test]
    fn predicate_examples() {
        assert!(is_calabi_yau(&ws1(&[1, 1, -1, -1])));
        assert!(is_calabi_yau(&ws1(&[1, 1, 1, -3])));
        assert!(!is_calabi_yau(&ws1(&[1, 1])));

        assert!(is_quasi_symmetric(&ws1(&[1, -2, 1])).holds());
        assert_eq!(
            is_quasi_symmetric(&ws(&[&[1, 0], &[0, 1], &[1, 1], &[-2, -2]])),
            QuasiSymmetry::Fails {
                direction: ints(&[1, 0]),
                line_sum: ints(&[1, 0])
            }
        );
        assert!(is_quasi_symmetric(&ws(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).holds());

        assert!(is_self_dual(&ws1(&[1, -1, 2, -2])));
        assert!(!is_self_dual(&ws1(&[1, -2, 1])));
        assert!(is_self_dual(&ws1(&[1, 1, -1, -1])));
    }

    #[test]
    fn ray_data_examples() {
        let c = ws1(&[1, 1, -1, -1]);
        let rd = ray_data(&c);
        assert_eq!(rd.rays.shape(), (3, 4));
        let m = rd.cy_witness.clone().unwrap();
        for ray in rd.rays.columns() {
            assert_eq!(dot(&m, &ray), BigInt::one());
        }
        assert!(c.matrix().mul(&rd.rays.transpose()).is_zero());
        assert!(rd.warnings.is_empty());

        assert_eq!(ray_data(&ws1(&[1, 1])).cy_witness, None);

        let rd = ray_data(&ws1(&[1, -2, 1]));
        assert_eq!(rd.rays.shape(), (2, 3));
        assert!(rd.cy_witness.is_some());
        assert!(rd.warnings.is_empty());
    }

    #[test]
    fn duplicate_rays_warn() {
        // e_a - e_b in the row space of Q forces ω_a = ω_b
        let rd = ray_data(&ws1(&[1, -1]));
        assert_eq!(rd.warnings, vec![RayWarning::DuplicateRays(0, 1)]);
        let rd = ray_data(&ws(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert_eq!(
            rd.warnings,
            vec![RayWarning::DuplicateRays(0, 1), RayWarning::DuplicateRays(2, 3)]
        );
        assert!(ray_data(&ws1(&[1, 1, -1, -1])).warnings.is_empty());
    }

    #[test]
    fn restrict_examples() {
        let s = ws(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(restrict_to_circuit(&s, &ints(&[1, 0])).unwrap(), ws1(&[1, -1]));
        let s = ws(&[&[2, 0], &[-1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(restrict_to_circuit(&s, &ints(&[1, 0])).unwrap(), ws1(&[2, -1, -1]));
        let s = ws1(&[1, -2, 1]);
        assert_eq!(restrict_to_circuit(&s, &ints(&[1])).unwrap(), s);

        let s = ws(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(
            restrict_to_circuit(&s, &ints(&[1, 1])),
            Err(Error::SpanFailure(ints(&[1, 1])))
        );
        assert_eq!(
            restrict_to_circuit(&s, &ints(&[2, 0])),
            Err(Error::NotPrimitive(ints(&[2, 0])))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn line_sums_reassemble(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let ws = generate::random_qs_or_cy(&mut rng);
            let total = partition_lines(&ws).into_iter().fold(vec![BigInt::zero(); ws.rank()], |mut acc, g| {
                for (a, s) in acc.iter_mut().zip(&g.line_sum) { *a += s; }
                acc
            });
            prop_assert_eq!(total, ws.weight_sum());
        }

        #[test]
        fn quasi_symmetric_implies_calabi_yau(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let ws = generate::random_qs_or_cy(&mut rng);
            if is_quasi_symmetric(&ws).holds() {
                prop_assert!(is_calabi_yau(&ws));
            }
            if ws.rank() == 1 {
                prop_assert_eq!(is_calabi_yau(&ws), is_quasi_symmetric(&ws).holds());
            }
        }

        #[test]
        fn self_dual_implies_quasi_symmetric(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let ws = generate::random_self_dual(&mut rng);
            prop_assert!(is_self_dual(&ws));
            prop_assert!(is_quasi_symmetric(&ws).holds());
        }

        #[test]
        fn ray_data_relations(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let ws = generate::random_qs_or_cy(&mut rng);
            let rd = ray_data(&ws);
            prop_assert!(ws.matrix().mul(&rd.rays.transpose()).is_zero());
            let m = rd.cy_witness.expect("generated systems are Calabi-Yau");
            for ray in rd.rays.columns() {
                prop_assert_eq!(dot(&m, &ray), BigInt::one());
            }
        }
    }
}
