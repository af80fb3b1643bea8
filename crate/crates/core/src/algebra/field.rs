use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Coefficients {
    #[default]
    Integers,
    Rationals,
    Prime(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("unknown coefficient descriptor {0:?}; expected Z, Q or Zp:<p>")]
    Unknown(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("a field is required here, got the integers")]
    FieldRequired,
}

impl Coefficients {
    pub fn prime(p: u64) -> Result<Self, CoefficientError> {
        if is_prime(p) {
            Ok(Coefficients::Prime(p))
        } else {
            Err(CoefficientError::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Coefficients::Integers)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "Zp:{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = CoefficientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(Coefficients::Integers),
            "Q" => Ok(Coefficients::Rationals),
            other => {
                let p = other
                    .strip_prefix("Zp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| CoefficientError::Unknown(other.to_string()))?;
                Coefficients::prime(p)
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic of an exact field. The value carries any parameters (the modulus).
pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn descriptor(&self) -> Coefficients;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn descriptor(&self) -> Coefficients {
        Coefficients::Rationals
    }
}

/// Integers modulo a prime.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, CoefficientError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(PrimeField { p })
        } else {
            Err(CoefficientError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let mut base = *a % self.p;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
    fn descriptor(&self) -> Coefficients {
        Coefficients::Prime(self.p)
    }
}

/// Runs `$body` with `$f` bound to the field named by a [`Coefficients`] value.
/// Evaluates to `Err(CoefficientError::FieldRequired)` for the integers.
#[macro_export]
macro_rules! with_field {
    ($coeff:expr, $f:ident => $body:expr) => {{
        match $coeff {
            $crate::algebra::Coefficients::Rationals => {
                let $f = $crate::algebra::Rationals;
                Ok($body)
            }
            $crate::algebra::Coefficients::Prime(p) => match $crate::algebra::PrimeField::new(p) {
                Ok($f) => Ok($body),
                Err(e) => Err(e),
            },
            $crate::algebra::Coefficients::Integers => Err($crate::algebra::CoefficientError::FieldRequired),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_descriptors() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("Q".parse::<Coefficients>().unwrap(), Coefficients::Rationals);
        assert_eq!("Zp:7".parse::<Coefficients>().unwrap(), Coefficients::Prime(7));
        assert_eq!("Zp:8".parse::<Coefficients>(), Err(CoefficientError::NotPrime(8)));
        assert!("R".parse::<Coefficients>().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(11).unwrap();
        for a in 1..11 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-3), 8);
    }
}
