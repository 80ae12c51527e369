//! Scalar traits for the generic layers.
//!
//! [`LatticeScalar`] is any signed Euclidean ring usable for Smith and
//! Hermite reduction (`i64`, `i128`, [`BigInt`]). Fixed-width instances
//! overflow silently on large inputs; the rest of the crate uses [`BigInt`].
//! [`Field`] is a coefficient field for evaluating the Horn map: exact over
//! [`BigRational`], approximate over `f64`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

pub trait LatticeScalar: Integer + Signed + Clone + Debug {}

impl<T> LatticeScalar for T where T: Integer + Signed + Clone + Debug {}

pub trait Field: Num + Clone + Debug + std::ops::Neg<Output = Self> {
    fn from_int(value: &BigInt) -> Self;
    fn from_rational(value: &BigRational) -> Self;
}

impl Field for BigRational {
    fn from_int(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn from_rational(value: &BigRational) -> Self {
        value.clone()
    }
}

impl Field for f64 {
    fn from_int(value: &BigInt) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }

    fn from_rational(value: &BigRational) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }
}

/// `base^exp` for a possibly negative integer exponent.
///
/// Panics if `exp` does not fit in `u32` or if `base` is zero and `exp < 0`.
pub fn signed_pow<F: Field>(base: &F, exp: &BigInt) -> F {
    let magnitude = exp
        .abs()
        .to_u32()
        .expect("exponent magnitude exceeds u32");
    let mut acc = F::one();
    let mut square = base.clone();
    let mut e = magnitude;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * square.clone();
        }
        e >>= 1;
        if e > 0 {
            square = square.clone() * square;
        }
    }
    if exp.is_negative() {
        assert!(!base.is_zero(), "zero raised to a negative power");
        F::one() / acc
    } else {
        acc
    }
}

/// Exact rational `base^exp` for an integer base.
pub fn rational_pow(base: &BigInt, exp: &BigInt) -> BigRational {
    signed_pow(&BigRational::from_integer(base.clone()), exp)
}
