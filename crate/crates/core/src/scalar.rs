//! Exact scalars over Q or GF(p).
//!
//! Every coefficient in the engine is a [`Scalar`] tagged with the [`Field`]
//! it lives in. Binary operations on scalars of different fields are a logic
//! error and panic; the polynomial and element layers check field tags up
//! front and surface a [`ScalarError::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not an odd prime (characteristic must differ from 2)")]
    BadModulus(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("unknown field '{0}' (expected q or fp:<p>)")]
    BadField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {den} is not invertible modulo {p}")]
    NotInvertible { den: BigInt, p: u64 },
}

/// Coefficient field: the rationals or a prime field of odd characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    /// GF(p). Rejects 2 and composites; moduli above 2^32 are rejected so
    /// that products of residues fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(ScalarError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = ScalarError;

    /// Parses `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Field, ScalarError> {
        match s {
            "q" | "Q" => Ok(Field::Rational),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| ScalarError::BadField(s.to_string()))?;
                Field::prime(p)
            }
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Scalar::Residue {
                value: reduce_bigint(n, p),
                modulus: p,
            },
        }
    }

    /// Maps a rational into `field`.
    pub fn from_rational(field: Field, q: &BigRational) -> Result<Scalar, ScalarError> {
        match field {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(ScalarError::NotInvertible { den: q.denom().clone(), p });
                }
                let num = reduce_bigint(q.numer(), p);
                Ok(Scalar::Residue {
                    value: num * inv_mod(den, p) % p,
                    modulus: p,
                })
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Sign used for rendering: residues above p/2 print as negatives.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { value, modulus } => *value > modulus / 2,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Multiplication by a small integer structure constant.
    pub fn scale_int(&self, k: i64) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q * BigInt::from(k)),
            Scalar::Residue { value, modulus } => {
                let k = k.rem_euclid(*modulus as i64) as u64;
                Scalar::Residue {
                    value: value * k % modulus,
                    modulus: *modulus,
                }
            }
        }
    }

    /// The value as a rational with the residue's symmetric representative.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue { value, modulus } => {
                let v = if value > &(modulus / 2) {
                    *value as i64 - *modulus as i64
                } else {
                    *value as i64
                };
                BigRational::from_integer(v.into())
            }
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        let q = self.to_rational();
        if q.is_integer() {
            q.numer().to_i64()
        } else {
            None
        }
    }

    fn binop(&self, rhs: &Scalar, op: fn(&BigRational, &BigRational) -> BigRational, mop: fn(u64, u64, u64) -> u64) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(op(a, b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => Scalar::Residue {
                value: mop(*a, *b, *p),
                modulus: *p,
            },
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, |a, b, p| (a + b) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a * b, |a, b, p| a * b % p)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.to_rational();
        if q.is_integer() {
            write!(f, "{}", q.numer())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_from_str() {
        assert_eq!("q".parse::<Field>(), Ok(Field::Rational));
        assert_eq!("fp:1009".parse::<Field>(), Ok(Field::Prime(1009)));
        assert_eq!("fp:9".parse::<Field>(), Err(ScalarError::BadModulus(9)));
        assert!(matches!("gf7".parse::<Field>(), Err(ScalarError::BadField(_))));
        assert_eq!(Field::Prime(101).to_string().parse::<Field>(), Ok(Field::Prime(101)));
    }

    #[test]
    fn rejects_even_and_composite_moduli() {
        assert_eq!(Field::prime(2), Err(ScalarError::BadModulus(2)));
        assert_eq!(Field::prime(91), Err(ScalarError::BadModulus(91)));
        assert!(Field::prime(1009).is_ok());
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = Scalar::from_int(f, 5);
        let b = Scalar::from_int(f, 4);
        assert_eq!(&a + &b, Scalar::from_int(f, 2));
        assert_eq!(&a - &b, Scalar::one(f));
        assert_eq!(&a * &b, Scalar::from_int(f, 6));
        assert_eq!(&a * &a.inv().unwrap(), Scalar::one(f));
        assert_eq!((-&a).to_string(), "2");
        assert!(Scalar::from_int(f, -1).is_negative());
        assert_eq!(Scalar::from_int(f, -1).to_string(), "-1");
    }

    #[test]
    fn rational_into_prime_field() {
        let half = BigRational::new(1.into(), 2.into());
        let f = Field::prime(101).unwrap();
        let h = Scalar::from_rational(f, &half).unwrap();
        assert_eq!(&h.scale_int(2), &Scalar::one(f));
        let third = BigRational::new(1.into(), 3.into());
        assert!(Scalar::from_rational(Field::prime(3).unwrap(), &third).is_err());
        assert_eq!(Scalar::Rational(half).to_string(), "1/2");
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = &Scalar::one(Field::Rational) + &Scalar::one(Field::prime(5).unwrap());
    }
}
