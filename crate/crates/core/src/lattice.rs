//! Integer lattice linear algebra: Smith and column-Hermite forms, saturated
//! kernels, primitive vectors and exact integer solves.
//!
//! Everything here is generic over [`LatticeScalar`]; the rest of the crate
//! instantiates it at `BigInt`.


use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::LatticeScalar;

/// `U · M · V = S` with `S` diagonal, `d₁ | d₂ | …`, `U` and `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith<T> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: LatticeScalar> Smith<T> {
    /// The nonzero diagonal entries, all positive.
    pub fn invariant_factors(&self) -> Vec<T> {
        let r = self.s.rows().min(self.s.cols());
        (0..r)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smallest-magnitude nonzero entry of the trailing block starting at
/// `(t, t)`; ties go to the first in row-major order.
fn smallest_entry<T: LatticeScalar>(m: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let a = m[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `row_dst -= q · row_src`
fn row_axpy<T: LatticeScalar>(m: &mut Matrix<T>, dst: usize, src: usize, q: &T) {
    for j in 0..m.cols() {
        let delta = q.clone() * m[(src, j)].clone();
        m[(dst, j)] = m[(dst, j)].clone() - delta;
    }
}

/// `col_dst -= q · col_src`
fn col_axpy<T: LatticeScalar>(m: &mut Matrix<T>, dst: usize, src: usize, q: &T) {
    for i in 0..m.rows() {
        let delta = q.clone() * m[(i, src)].clone();
        m[(i, dst)] = m[(i, dst)].clone() - delta;
    }
}

fn negate_row<T: LatticeScalar>(m: &mut Matrix<T>, i: usize) {
    for j in 0..m.cols() {
        m[(i, j)] = -m[(i, j)].clone();
    }
}

fn negate_col<T: LatticeScalar>(m: &mut Matrix<T>, j: usize) {
    for i in 0..m.rows() {
        m[(i, j)] = -m[(i, j)].clone();
    }
}

pub fn smith_normal_form<T: LatticeScalar>(m: &Matrix<T>) -> Smith<T> {
    let (rows, cols) = m.shape();
    let mut s = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&s, t) else {
                return Smith { s, u, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s[(t, t)].clone();
            let mut leftover = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&pivot);
                row_axpy(&mut s, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                leftover |= !s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&pivot);
                col_axpy(&mut s, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                leftover |= !s[(t, j)].is_zero();
            }
            if leftover {
                // a remainder smaller than the pivot survived; re-pivot on it
                continue;
            }

            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into row t
                    let minus_one = -T::one();
                    row_axpy(&mut s, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    Smith { s, u, v }
}

pub fn rank<T: LatticeScalar>(m: &Matrix<T>) -> usize {
    smith_normal_form(m).rank()
}

/// Columns form a ℤ-basis of the saturated lattice `{v : M v = 0}`.
pub fn kernel_basis<T: LatticeScalar>(m: &Matrix<T>) -> Matrix<T> {
    let smith = smith_normal_form(m);
    let r = smith.rank();
    let keep: Vec<usize> = (r..m.cols()).collect();
    smith.v.select_columns(&keep)
}

/// An integer solution of `M x = b`, if one exists.
pub fn solve<T: LatticeScalar>(m: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let smith = smith_normal_form(m);
    let ub = smith.u.mul_vec(b);
    let factors = smith.invariant_factors();
    let mut y = vec![T::zero(); m.cols()];
    for (i, value) in ub.iter().enumerate() {
        match factors.get(i) {
            Some(d) => {
                let (q, rem) = value.div_rem(d);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            }
            None if !value.is_zero() => return Ok(None),
            None => {}
        }
    }
    Ok(Some(smith.v.mul_vec(&y)))
}

/// `v / gcd(v)`, with the first nonzero entry made positive.
pub fn primitive<T: LatticeScalar>(v: &[T]) -> Result<Vec<T>> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let sign_flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    Ok(v
        .iter()
        .map(|x| {
            let y = x.clone() / g.clone();
            if sign_flip {
                -y
            } else {
                y
            }
        })
        .collect())
}

pub fn is_primitive<T: LatticeScalar>(v: &[T]) -> bool {
    v.iter().fold(T::zero(), |g, x| g.gcd(x)).is_one()
}

/// Lower-triangular column Hermite form `H = M · W`.
///
/// The nonzero columns of `H` come first, each with a positive pivot strictly
/// below the previous one, and entries left of a pivot reduced into
/// `[0, pivot)`. `w_inv` is maintained alongside so that `M = H · W⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnHermite<T> {
    pub h: Matrix<T>,
    pub w: Matrix<T>,
    pub w_inv: Matrix<T>,
    pub rank: usize,
}

pub fn column_hermite<T: LatticeScalar>(m: &Matrix<T>) -> ColumnHermite<T> {
    let (rows, cols) = m.shape();
    let mut h = m.clone();
    let mut w = Matrix::identity(cols);
    let mut w_inv = Matrix::identity(cols);

    // col_dst -= q·col_src on H and W is row_src += q·row_dst on W⁻¹
    let axpy = |h: &mut Matrix<T>, w: &mut Matrix<T>, w_inv: &mut Matrix<T>, dst, src, q: &T| {
        col_axpy(h, dst, src, q);
        col_axpy(w, dst, src, q);
        row_axpy(w_inv, src, dst, &-q.clone());
    };

    let mut p = 0;
    for i in 0..rows {
        if p == cols {
            break;
        }
        loop {
            let best = (p..cols)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&a, &b| h[(i, a)].abs().cmp(&h[(i, b)].abs()));
            let Some(j) = best else { break };
            h.swap_cols(p, j);
            w.swap_cols(p, j);
            w_inv.swap_rows(p, j);
            let pivot = h[(i, p)].clone();
            let mut done = true;
            for j in p + 1..cols {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&pivot);
                axpy(&mut h, &mut w, &mut w_inv, j, p, &q);
                done &= h[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(i, p)].is_zero() {
            continue;
        }
        if h[(i, p)].is_negative() {
            negate_col(&mut h, p);
            negate_col(&mut w, p);
            negate_row(&mut w_inv, p);
        }
        let pivot = h[(i, p)].clone();
        for j in 0..p {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                axpy(&mut h, &mut w, &mut w_inv, j, p, &q);
            }
        }
        p += 1;
    }
    ColumnHermite {
        h,
        w,
        w_inv,
        rank: p,
    }
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant<T: LatticeScalar>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num / prev.clone();
            }
        }
        prev = a[(k, k)].clone();
    }
    if n == 0 {
        return T::one();
    }
    sign * a[(n - 1, n - 1)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<BigInt> {
        Matrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_smith(a: &Matrix<BigInt>, smith: &Smith<BigInt>) {
        assert_eq!(smith.u.mul(a).mul(&smith.v), smith.s);
        assert!(determinant(&smith.u).abs().is_one());
        assert!(determinant(&smith.v).abs().is_one());
        let (r, c) = smith.s.shape();
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    assert!(smith.s[(i, j)].is_zero());
                }
            }
        }
        let d = smith.invariant_factors();
        for pair in d.windows(2) {
            assert!(pair[1].is_multiple_of(&pair[0]));
        }
        for i in d.len()..r.min(c) {
            assert!(smith.s[(i, i)].is_zero());
        }
    }

    /// gcd of all `size × size` minors, the independent route to the
    /// product of the first `size` invariant factors.
    fn minor_gcd(a: &Matrix<BigInt>, size: usize) -> BigInt {
        use itertools::Itertools;
        let mut g = BigInt::zero();
        for rows in (0..a.rows()).combinations(size) {
            for cols in (0..a.cols()).combinations(size) {
                let sub = a.select_rows(&rows).select_columns(&cols);
                g = g.gcd(&determinant(&sub));
            }
        }
        g
    }

    #[test]
    fn smith_diagonal_two_three() {
        let a = m(vec![vec![2, 0], vec![0, 3]]);
        let smith = smith_normal_form(&a);
        check_smith(&a, &smith);
        assert_eq!(smith.invariant_factors(), ints(&[1, 6]));
        // minors: gcd(2,3) = 1, det = 6
        assert_eq!(minor_gcd(&a, 1), BigInt::from(1));
        assert_eq!(minor_gcd(&a, 2), BigInt::from(6));
    }

    #[test]
    fn smith_identity() {
        let a = m(vec![vec![1, 0], vec![0, 1]]);
        let smith = smith_normal_form(&a);
        check_smith(&a, &smith);
        assert_eq!(smith.s, a);
        assert_eq!(smith.u, a);
        assert_eq!(smith.v, a);
    }

    #[test]
    fn smith_single_row() {
        let a = m(vec![vec![1, 1, -1, -1]]);
        let smith = smith_normal_form(&a);
        check_smith(&a, &smith);
        assert_eq!(smith.s, m(vec![vec![1, 0, 0, 0]]));
    }

    #[test]
    fn kernel_of_conifold_row() {
        let a = m(vec![vec![1, 1, -1, -1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.shape(), (4, 3));
        assert!(a.mul(&k).is_zero());
        assert_eq!(smith_normal_form(&k).invariant_factors(), ints(&[1, 1, 1]));
        for v in [[1, -1, 0, 0], [0, 0, 1, -1], [1, 0, 1, 0]] {
            assert!(solve(&k, &ints(&v)).unwrap().is_some(), "{v:?} not in kernel span");
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let a = m(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(kernel_basis(&a).shape(), (3, 0));
    }

    #[test]
    fn kernel_of_a1_row() {
        let a = m(vec![vec![1, -2, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        for v in [[2, 1, 0], [-1, 0, 1]] {
            assert!(solve(&k, &ints(&v)).unwrap().is_some());
        }
        // saturated: (1,1,1) = ((2,1,0) + (0,1,2))/2 must be reachable
        assert!(solve(&k, &ints(&[1, 1, 1])).unwrap().is_some());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&ints(&[2, -4])).unwrap(), ints(&[1, -2]));
        assert_eq!(primitive(&ints(&[-3, 0])).unwrap(), ints(&[1, 0]));
        assert_eq!(primitive(&ints(&[5])).unwrap(), ints(&[1]));
        assert_eq!(primitive(&ints(&[0, 0])), Err(Error::ZeroVector));
        assert_eq!(primitive(&[0i64, -6, 4]).unwrap(), vec![0, 3, -2]);
    }

    #[test]
    fn solve_detects_nonmembership() {
        let a = m(vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(solve(&a, &ints(&[1, 0])).unwrap(), None);
        assert_eq!(solve(&a, &ints(&[4, -2])).unwrap(), Some(ints(&[2, -1])));
    }

    #[test]
    fn hermite_of_even_lattice() {
        let a = m(vec![vec![2, 0, -2], vec![0, 2, -2]]);
        let herm = column_hermite(&a);
        assert_eq!(herm.rank, 2);
        assert_eq!(herm.h, m(vec![vec![2, 0, 0], vec![0, 2, 0]]));
        assert_eq!(a.mul(&herm.w), herm.h);
        assert_eq!(herm.h.mul(&herm.w_inv), a);
    }

    #[test]
    fn fixed_width_instance() {
        let a = Matrix::from_rows(vec![vec![4i64, 6], vec![6, 9]]).unwrap();
        let smith = smith_normal_form(&a);
        assert_eq!(smith.invariant_factors(), vec![1]);
        assert_eq!(kernel_basis(&a).column(0), vec![3, -2]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<BigInt>> {
        (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c)
                .prop_map(move |d| Matrix::from_vec(r, c, d).unwrap().map(|&x| BigInt::from(x)))
        })
    }

    proptest! {
        #[test]
        fn smith_contract(a in small_matrix()) {
            let smith = smith_normal_form(&a);
            check_smith(&a, &smith);
            let d = smith.invariant_factors();
            let mut prod = BigInt::one();
            for (size, f) in d.iter().enumerate() {
                prod *= f;
                prop_assert_eq!(&prod, &minor_gcd(&a, size + 1));
            }
        }

        #[test]
        fn kernel_is_saturated(a in small_matrix()) {
            let k = kernel_basis(&a);
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.cols() + rank(&a), a.cols());
            if k.cols() > 0 {
                prop_assert!(smith_normal_form(&k).invariant_factors().iter().all(|d| d.is_one()));
            }
        }

        #[test]
        fn hermite_contract(a in small_matrix()) {
            let herm = column_hermite(&a);
            prop_assert_eq!(a.mul(&herm.w), herm.h.clone());
            prop_assert_eq!(herm.h.mul(&herm.w_inv), a.clone());
            prop_assert_eq!(herm.w.mul(&herm.w_inv), Matrix::identity(a.cols()));
            prop_assert_eq!(herm.rank, rank(&a));
            for j in herm.rank..a.cols() {
                prop_assert!(herm.h.column(j).iter().all(|x| x.is_zero()));
            }
        }
    }
}
