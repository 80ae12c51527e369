//! The two hyperplane arrangements in `L^∨_ℂ` and their comparison.
//!
//! A [`HyperplaneFamily`] with normal `l` and offset `α` stands for the
//! `ℤ`-orbit `{y : ⟨l, y⟩ ∈ α + ℤ}`. Offsets are complex numbers
//! `α = r + i·t/(2π)` with `r ∈ [0, 1)` rational and `t` a [`LogReal`]; the
//! `1/(2π)` is never materialized.
//!
//! The discriminant side takes `α = Log_br(c)` for each circuit constant `c`.
//! The zonotope side takes `α = c_F mod 1` for each facet pair of `½Σ̄`. The
//! translation `i·z` with `z = −(1/2π) Σ_j log|n_j| β_j` carries the second
//! onto the first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::circuits::{circuit_constant, enumerate_circuit_normals};
use crate::error::{Error, Result};
use crate::logreal::{log_abs, log_of_rational, LogReal};
use crate::weights::{partition_lines, require_quasi_symmetric, WeightSystem};
use crate::zonotope::{hls_facet_normals, hls_offset};
use crate::IntVector;

/// `frac(q)`, in `[0, 1)`.
fn reduce_mod_one(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(q.numer().div_floor(q.denom()))
}

/// Complex offset `real_part + i · imag_log / (2π)`, taken modulo `ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Offset {
    real_part: BigRational,
    imag_log: LogReal,
}

impl Offset {
    pub fn new(real_part: BigRational, imag_log: LogReal) -> Self {
        Offset {
            real_part: reduce_mod_one(&real_part),
            imag_log,
        }
    }

    pub fn real(real_part: BigRational) -> Self {
        Offset::new(real_part, LogReal::zero())
    }

    pub fn real_part(&self) -> &BigRational {
        &self.real_part
    }

    /// Imaginary part times `2π`.
    pub fn imag_log(&self) -> &LogReal {
        &self.imag_log
    }

    pub fn is_real(&self) -> bool {
        self.imag_log.is_zero()
    }

    /// Adds `i · t / (2π)`.
    pub fn shift_imaginary(&self, t: &LogReal) -> Offset {
        Offset {
            real_part: self.real_part.clone(),
            imag_log: &self.imag_log + t,
        }
    }

    pub fn neg(&self) -> Offset {
        Offset::new(-self.real_part.clone(), -self.imag_log.clone())
    }

    /// `(real, imaginary)` as floats, for display.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.real_part.to_f64().unwrap_or(f64::NAN),
            self.imag_log.to_f64() / std::f64::consts::TAU,
        )
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.real_part.is_zero(), self.imag_log.is_zero()) {
            (_, true) => write!(f, "{}", self.real_part),
            (true, false) => write!(f, "i*({})/(2pi)", self.imag_log),
            (false, false) => write!(f, "{} + i*({})/(2pi)", self.real_part, self.imag_log),
        }
    }
}

/// `Log_br(c) = log(c) / (2πi)` with `arg c ∈ [0, 2π)`:
/// `arg(c)/2π − i·log|c|/2π`.
pub fn log_br(c: &BigRational) -> Result<Offset> {
    if c.is_zero() {
        return Err(Error::NonPositive(c.clone()));
    }
    let real_part = if c.is_negative() {
        BigRational::new(1.into(), 2.into())
    } else {
        BigRational::zero()
    };
    Ok(Offset::new(real_part, -log_of_rational(&c.abs())?))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperplaneFamily {
    normal: IntVector,
    offset: Offset,
}

impl HyperplaneFamily {
    /// Canonicalizes the sign: `(−l, −α)` and `(l, α)` are the same family.
    pub fn new(normal: IntVector, offset: Offset) -> Self {
        let flip = normal.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        if flip {
            HyperplaneFamily {
                normal: normal.into_iter().map(|x| -x).collect(),
                offset: offset.neg(),
            }
        } else {
            HyperplaneFamily { normal, offset }
        }
    }

    pub fn normal(&self) -> &IntVector {
        &self.normal
    }

    pub fn offset(&self) -> &Offset {
        &self.offset
    }

    /// Right-hand side of the member `⟨l, y⟩ = α + index`, as
    /// `(real, imaginary · 2π)`.
    pub fn hyperplane(&self, index: &BigInt) -> (BigRational, LogReal) {
        (
            &self.offset.real_part + BigRational::from_integer(index.clone()),
            self.offset.imag_log.clone(),
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Arrangement {
    families: Vec<HyperplaneFamily>,
}

impl Arrangement {
    pub fn new(mut families: Vec<HyperplaneFamily>) -> Self {
        families.sort();
        families.dedup();
        Arrangement { families }
    }

    pub fn families(&self) -> &[HyperplaneFamily] {
        &self.families
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn family(&self, normal: &[BigInt]) -> Option<&HyperplaneFamily> {
        self.families.iter().find(|f| f.normal == normal)
    }

    /// The arrangement translated by `i·z`.
    pub fn translate_imaginary(&self, z: &ShiftVector) -> Arrangement {
        Arrangement::new(
            self.families
                .iter()
                .map(|f| {
                    HyperplaneFamily::new(f.normal.clone(), f.offset.shift_imaginary(&z.pair(&f.normal)))
                })
                .collect(),
        )
    }
}

/// The real vector `z`, each coordinate stored times `2π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftVector {
    coords: Vec<LogReal>,
}

impl ShiftVector {
    pub fn new(coords: Vec<LogReal>) -> Self {
        ShiftVector { coords }
    }

    pub fn coords(&self) -> &[LogReal] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(LogReal::is_zero)
    }

    /// `⟨l, z⟩`, times `2π`.
    pub fn pair(&self, l: &[BigInt]) -> LogReal {
        self.coords.iter().zip(l).map(|(z, li)| z.scale_int(li)).sum()
    }
}

pub fn discriminant_arrangement(ws: &WeightSystem) -> Result<Arrangement> {
    let families = enumerate_circuit_normals(ws)?
        .into_iter()
        .map(|l| {
            let offset = log_br(&circuit_constant(ws, &l)?)?;
            Ok(HyperplaneFamily::new(l, offset))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arrangement::new(families))
}

pub fn hls_arrangement(ws: &WeightSystem) -> Result<Arrangement> {
    let families = hls_facet_normals(ws)?
        .into_iter()
        .map(|l| {
            let c = hls_offset(ws, &l)?;
            Ok(HyperplaneFamily::new(l, Offset::real(c)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arrangement::new(families))
}

/// `z = −(1/2π) Σ_j log|n_j| β_j`, stored times `2π`.
pub fn shift_vector(ws: &WeightSystem) -> Result<ShiftVector> {
    require_quasi_symmetric(ws)?;
    let mut coords = vec![LogReal::zero(); ws.rank()];
    for group in partition_lines(ws) {
        for (&j, n) in group.members.iter().zip(&group.lengths) {
            let log_n = log_abs(n);
            if log_n.is_zero() {
                continue;
            }
            for (z, b) in coords.iter_mut().zip(ws.weight(j)) {
                *z += log_n.scale_int(&-b);
            }
        }
    }
    Ok(ShiftVector { coords })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMatch {
    pub normal: IntVector,
    pub circuit_constant: BigRational,
    /// `c_F` before reduction mod `ℤ`.
    pub facet_offset: BigRational,
    pub discriminant: Offset,
    /// The zonotope family's offset after adding `i⟨l, z⟩`.
    pub shifted: Offset,
    /// `c_Γ > 0 ⟺ c_F ∈ ℤ`
    pub real_parts_agree: bool,
    /// `log|c_Γ| = Σ_j ⟨l, β_j⟩ log|n_j|`
    pub imaginary_parts_agree: bool,
}

impl FamilyMatch {
    pub fn agrees(&self) -> bool {
        self.real_parts_agree && self.imaginary_parts_agree
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    EqualAfterShift,
    Counterexample { normal: IntVector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub shift: ShiftVector,
    pub discriminant: Arrangement,
    pub hls: Arrangement,
    pub matches: Vec<FamilyMatch>,
    pub verdict: Verdict,
}

pub fn compare_arrangements(ws: &WeightSystem) -> Result<ComparisonReport> {
    let discriminant = discriminant_arrangement(ws)?;
    let hls = hls_arrangement(ws)?;
    let shift = shift_vector(ws)?;

    for f in hls.families() {
        if discriminant.family(&f.normal).is_none() {
            return Err(Error::UnmatchedNormal(f.normal.clone()));
        }
    }
    for f in discriminant.families() {
        if hls.family(&f.normal).is_none() {
            return Err(Error::UnmatchedNormal(f.normal.clone()));
        }
    }

    let lines = partition_lines(ws);
    let mut matches = Vec::with_capacity(hls.len());
    for f in hls.families() {
        let l = &f.normal;
        let disc = discriminant.family(l).expect("checked above");
        let c_gamma = circuit_constant(ws, l)?;
        let c_f = hls_offset(ws, l)?;
        let shifted = f.offset.shift_imaginary(&shift.pair(l));

        let real_parts_agree = c_gamma.is_positive() == c_f.is_integer()
            && disc.offset.real_part == shifted.real_part;

        let exponents = ws.pairings(l)?;
        let mut from_lengths = LogReal::zero();
        for group in &lines {
            for (&j, n) in group.members.iter().zip(&group.lengths) {
                from_lengths += log_abs(n).scale_int(&exponents[j]);
            }
        }
        let imaginary_parts_agree = log_of_rational(&c_gamma.abs())? == from_lengths
            && disc.offset.imag_log == shifted.imag_log;

        matches.push(FamilyMatch {
            normal: l.clone(),
            circuit_constant: c_gamma,
            facet_offset: c_f,
            discriminant: disc.offset.clone(),
            shifted,
            real_parts_agree,
            imaginary_parts_agree,
        });
    }

    let verdict = match matches.iter().find(|m| !m.agrees()) {
        Some(m) => Verdict::Counterexample {
            normal: m.normal.clone(),
        },
        None if hls.translate_imaginary(&shift) == discriminant => Verdict::EqualAfterShift,
        None => Verdict::Counterexample {
            normal: matches.first().map(|m| m.normal.clone()).unwrap_or_default(),
        },
    };

    Ok(ComparisonReport {
        shift,
        discriminant,
        hls,
        matches,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::weights::is_self_dual;
    use crate::weights::test_support::*;
    use rand::{rngs::StdRng, SeedableRng};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn log2(c: i64) -> LogReal {
        LogReal::log_prime(2.into(), q(c, 1))
    }

    #[test]
    fn log_br_examples() {
        assert_eq!(log_br(&q(1, 1)).unwrap(), Offset::real(q(0, 1)));
        assert_eq!(log_br(&q(-1, 1)).unwrap(), Offset::real(q(1, 2)));
        assert_eq!(log_br(&q(1, 4)).unwrap(), Offset::new(q(0, 1), log2(2)));
        assert_eq!(log_br(&q(4, 1)).unwrap(), Offset::new(q(0, 1), log2(-2)));
        assert!(log_br(&q(0, 1)).is_err());
    }

    #[test]
    fn offsets_reduce_mod_one() {
        assert_eq!(Offset::real(q(3, 2)), Offset::real(q(1, 2)));
        assert_eq!(Offset::real(q(-1, 2)), Offset::real(q(1, 2)));
        assert_eq!(Offset::real(q(2, 1)).real_part(), &q(0, 1));
        let f = HyperplaneFamily::new(ints(&[-1, 0]), Offset::new(q(1, 3), log2(1)));
        assert_eq!(f.normal(), &ints(&[1, 0]));
        assert_eq!(f.offset(), &Offset::new(q(2, 3), log2(-1)));
        assert_eq!(f.hyperplane(&BigInt::from(-1)).0, q(-1, 3));
    }

    #[test]
    fn discriminant_examples() {
        let a = discriminant_arrangement(&ws1(&[1, 1, -1, -1])).unwrap();
        assert_eq!(a.families(), &[HyperplaneFamily::new(ints(&[1]), Offset::real(q(0, 1)))]);

        let a = discriminant_arrangement(&ws1(&[1, -2, 1])).unwrap();
        assert_eq!(a.families(), &[HyperplaneFamily::new(ints(&[1]), Offset::new(q(0, 1), log2(2)))]);

        let a = discriminant_arrangement(&ws(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert_eq!(
            a.families(),
            &[
                HyperplaneFamily::new(ints(&[0, 1]), Offset::real(q(1, 2))),
                HyperplaneFamily::new(ints(&[1, 0]), Offset::real(q(1, 2))),
            ]
        );
    }

    #[test]
    fn hls_examples() {
        let a = hls_arrangement(&ws1(&[1, -2, 1])).unwrap();
        assert_eq!(a.families(), &[HyperplaneFamily::new(ints(&[1]), Offset::real(q(0, 1)))]);
        let a = hls_arrangement(&ws1(&[1, -1, 2, -2])).unwrap();
        assert_eq!(a.families(), &[HyperplaneFamily::new(ints(&[1]), Offset::real(q(1, 2)))]);
        let a = hls_arrangement(&ws1(&[1, 1, -1, -1])).unwrap();
        assert_eq!(a.families(), &[HyperplaneFamily::new(ints(&[1]), Offset::real(q(0, 1)))]);
    }

    #[test]
    fn shift_examples() {
        assert!(shift_vector(&ws1(&[1, 1, -1, -1])).unwrap().is_zero());
        assert_eq!(shift_vector(&ws1(&[1, -2, 1])).unwrap().coords(), &[log2(2)]);
        assert!(shift_vector(&ws1(&[1, -1, 2, -2])).unwrap().is_zero());
        let z = shift_vector(&ws(&[&[2, 0], &[-1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert_eq!(z.coords(), &[log2(-2), LogReal::zero()]);
    }

    #[test]
    fn compare_examples() {
        let r = compare_arrangements(&ws1(&[1, -2, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::EqualAfterShift);
        assert_eq!(r.shift.coords(), &[log2(2)]);

        let r = compare_arrangements(&ws1(&[1, 1, -1, -1])).unwrap();
        assert_eq!(r.verdict, Verdict::EqualAfterShift);
        assert!(r.shift.is_zero());
        assert_eq!(r.discriminant, r.hls);

        let r = compare_arrangements(&ws(&[&[2, 0], &[-1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert_eq!(r.verdict, Verdict::EqualAfterShift);
        let by_normal = |l: &[i64]| r.matches.iter().find(|m| m.normal == ints(l)).unwrap();
        let x = by_normal(&[1, 0]);
        assert_eq!(x.circuit_constant, q(4, 1));
        assert_eq!(x.facet_offset, q(1, 1));
        assert_eq!(x.discriminant, Offset::new(q(0, 1), log2(-2)));
        assert_eq!(r.shift.pair(&ints(&[1, 0])), log2(-2));
        let y = by_normal(&[0, 1]);
        assert_eq!(y.circuit_constant, q(-1, 1));
        assert_eq!(y.facet_offset, q(1, 2));
        assert_eq!(y.discriminant.real_part(), &q(1, 2));
    }

    #[test]
    fn compare_refuses_non_quasi_symmetric() {
        let s = ws(&[&[1, 0], &[0, 1], &[1, 1], &[-2, -2]]);
        assert!(matches!(compare_arrangements(&s), Err(Error::NotQuasiSymmetric { .. })));
        assert!(matches!(shift_vector(&s), Err(Error::NotQuasiSymmetric { .. })));
    }

    #[test]
    fn random_systems_agree_after_shift() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let s = generate::random_quasi_symmetric(&mut rng);
            let r = compare_arrangements(&s).unwrap();
            assert_eq!(r.verdict, Verdict::EqualAfterShift, "{:?}", s.weights());
        }
    }

    #[test]
    fn self_dual_arrangements_are_real() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..100 {
            let s = generate::random_self_dual(&mut rng);
            assert!(is_self_dual(&s));
            let a = discriminant_arrangement(&s).unwrap();
            assert!(a.families().iter().all(|f| f.offset().is_real()));
            assert!(shift_vector(&s).unwrap().is_zero());
        }
    }
}
