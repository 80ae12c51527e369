//! Exact reals of the form `q₀ + Σ_p q_p · log p`.
//!
//! Since `{1} ∪ {log p : p prime}` is linearly independent over ℚ, two such
//! values are equal exactly when their coefficients agree, which is what the
//! derived `PartialEq` compares.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogReal {
    rational: BigRational,
    // prime -> coefficient; no zero coefficients
    logs: BTreeMap<BigInt, BigRational>,
}

impl LogReal {
    pub fn zero() -> Self {
        LogReal {
            rational: BigRational::zero(),
            logs: BTreeMap::new(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        LogReal {
            rational: q,
            logs: BTreeMap::new(),
        }
    }

    /// `coefficient · log(prime)`. The caller guarantees `prime` is prime.
    pub fn log_prime(prime: BigInt, coefficient: BigRational) -> Self {
        let mut out = LogReal::zero();
        out.add_log_term(prime, coefficient);
        out
    }

    /// Builds from parts, dropping zero coefficients. Primality of keys is
    /// not checked.
    pub fn from_parts(
        rational: BigRational,
        terms: impl IntoIterator<Item = (BigInt, BigRational)>,
    ) -> Self {
        let mut out = LogReal::from_rational(rational);
        for (p, c) in terms {
            out.add_log_term(p, c);
        }
        out
    }

    fn add_log_term(&mut self, prime: BigInt, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.logs.entry(prime.clone()).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.logs.remove(&prime);
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    /// `(prime, coefficient)` pairs, primes ascending.
    pub fn log_terms(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.logs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.logs.is_empty()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return LogReal::zero();
        }
        LogReal {
            rational: &self.rational * factor,
            logs: self
                .logs
                .iter()
                .map(|(p, c)| (p.clone(), c * factor))
                .collect(),
        }
    }

    pub fn scale_int(&self, factor: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(factor.clone()))
    }

    /// Floating approximation, for display and sanity checks only.
    pub fn to_f64(&self) -> f64 {
        let mut acc = self.rational.to_f64().unwrap_or(f64::NAN);
        for (p, c) in &self.logs {
            acc += c.to_f64().unwrap_or(f64::NAN) * p.to_f64().unwrap_or(f64::NAN).ln();
        }
        acc
    }
}

/// Prime factorization of a positive integer by trial division.
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    assert!(n.is_positive(), "factorize expects a positive integer");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    let mut divide_out = |rest: &mut BigInt, p: &BigInt| {
        while rest.is_multiple_of(p) {
            *rest /= p;
            *out.entry(p.clone()).or_insert(0) += 1;
        }
    };
    let two = BigInt::from(2);
    divide_out(&mut rest, &two);
    let mut p = BigInt::from(3);
    while &p * &p <= rest {
        divide_out(&mut rest, &p);
        p += 2;
    }
    if !rest.is_one() {
        *out.entry(rest).or_insert(0) += 1;
    }
    out
}

/// `log q` for a positive rational, as a combination of prime logs.
pub fn log_of_rational(q: &BigRational) -> Result<LogReal> {
    if !q.is_positive() {
        return Err(Error::NonPositive(q.clone()));
    }
    let mut out = LogReal::zero();
    for (p, e) in factorize(q.numer()) {
        out.add_log_term(p, BigRational::from_integer(e.into()));
    }
    for (p, e) in factorize(q.denom()) {
        out.add_log_term(p, -BigRational::from_integer(e.into()));
    }
    Ok(out)
}

/// `log |n|` for a nonzero integer.
pub fn log_abs(n: &BigInt) -> LogReal {
    log_of_rational(&BigRational::from_integer(n.abs())).expect("log of zero")
}

impl Add for LogReal {
    type Output = LogReal;

    fn add(mut self, rhs: LogReal) -> LogReal {
        self += rhs;
        self
    }
}

impl Add<&LogReal> for &LogReal {
    type Output = LogReal;

    fn add(self, rhs: &LogReal) -> LogReal {
        self.clone() + rhs.clone()
    }
}

impl AddAssign for LogReal {
    fn add_assign(&mut self, rhs: LogReal) {
        self.rational += rhs.rational;
        for (p, c) in rhs.logs {
            self.add_log_term(p, c);
        }
    }
}

impl Neg for LogReal {
    type Output = LogReal;

    fn neg(self) -> LogReal {
        LogReal {
            rational: -self.rational,
            logs: self.logs.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Sub for LogReal {
    type Output = LogReal;

    fn sub(self, rhs: LogReal) -> LogReal {
        self + (-rhs)
    }
}

impl Sub<&LogReal> for &LogReal {
    type Output = LogReal;

    fn sub(self, rhs: &LogReal) -> LogReal {
        self.clone() - rhs.clone()
    }
}

impl Mul<&BigRational> for &LogReal {
    type Output = LogReal;

    fn mul(self, rhs: &BigRational) -> LogReal {
        self.scale(rhs)
    }
}

impl Sum for LogReal {
    fn sum<I: Iterator<Item = LogReal>>(iter: I) -> LogReal {
        iter.fold(LogReal::zero(), |a, b| a + b)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        for (p, c) in &self.logs {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "log({p})")?;
            } else {
                write!(f, "{mag}*log({p})")?;
            }
        }
        Ok(())
    }
}
