//! Exact scalar arithmetic.
//!
//! Computations are generic over a [`Field`] context which owns the
//! arithmetic; elements are plain values (`BigRational` for ℚ, a canonical
//! `u64` residue for GF(p)). The modulus lives in the context, never in the
//! element, so rationals and residues cannot be mixed inside an algorithm.
//!
//! [`Scalar`] is the self-describing value used at the edges (parsing,
//! reports, serialization). It carries its field, and combining scalars of
//! different fields is an error.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    Mismatch {
        left: FieldDescriptor,
        right: FieldDescriptor,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
}

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "modulus", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
}

impl FieldDescriptor {
    /// A prime-field descriptor; `p` is checked for primality.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldDescriptor::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldDescriptor::Prime(_))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => f.write_str("Q"),
            FieldDescriptor::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Arithmetic context for an exact field.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    /// Imports a boundary scalar; fails if it belongs to another field.
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, FieldError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `(-1)^k`
    fn sign(&self, k: usize) -> Self::Elem {
        if k.is_multiple_of(2) {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn parse(&self, literal: &str) -> Result<Self::Elem, FieldError> {
        let s = Scalar::parse(literal, self.descriptor())?;
        self.from_scalar(&s)
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.to_scalar(a).to_string()
    }
}

/// The rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational, FieldError> {
        match s {
            Scalar::Rational(q) => Ok(q.clone()),
            other => Err(FieldError::Mismatch {
                left: FieldDescriptor::Rational,
                right: other.field(),
            }),
        }
    }
}

/// GF(p) with canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        FieldDescriptor::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary integer into the canonical range.
    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    /// All field elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v as i128)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + (self.p - *b) as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(inv_mod(*a, self.p).expect("nonzero residue is invertible modulo a prime"))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Residue {
            value: *a,
            modulus: self.p,
        }
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u64, FieldError> {
        match s {
            Scalar::Residue { value, modulus } if *modulus == self.p => Ok(*value),
            other => Err(FieldError::Mismatch {
                left: self.descriptor(),
                right: other.field(),
            }),
        }
    }
}

/// A field element that knows which field it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn rational(numer: i64, denom: i64) -> Scalar {
        Scalar::Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(v: i64) -> Scalar {
        Scalar::rational(v, 1)
    }

    /// A residue in GF(`modulus`); `value` is reduced into `[0, modulus)`.
    pub fn residue(value: i64, modulus: u64) -> Result<Scalar, FieldError> {
        let f = PrimeField::new(modulus)?;
        Ok(Scalar::Residue {
            value: f.reduce(value as i128),
            modulus,
        })
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rational,
            Scalar::Residue { modulus, .. } => FieldDescriptor::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    /// Parses `"p/q"`, `"p"` (optional leading minus) over ℚ, or a decimal
    /// integer reduced modulo p over GF(p).
    pub fn parse(literal: &str, field: FieldDescriptor) -> Result<Scalar, FieldError> {
        let text = literal.trim();
        let err = |reason: &str| FieldError::Parse {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let parse_int = |s: &str| -> Result<BigInt, FieldError> {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("expected a decimal integer"));
            }
            BigInt::from_str(s).map_err(|e| err(&e.to_string()))
        };
        match field {
            FieldDescriptor::Rational => {
                let value = match text.split_once('/') {
                    Some((n, d)) => {
                        let d = parse_int(d)?;
                        if d.is_zero() {
                            return Err(err("zero denominator"));
                        }
                        BigRational::new(parse_int(n)?, d)
                    }
                    None => BigRational::from_integer(parse_int(text)?),
                };
                Ok(Scalar::Rational(value))
            }
            FieldDescriptor::Prime(p) => {
                if text.contains('/') {
                    return Err(err("prime-field literals are decimal residues"));
                }
                let v = parse_int(text)?.mod_floor(&BigInt::from(p));
                Ok(Scalar::Residue {
                    value: v.to_u64().expect("residue below a u64 modulus"),
                    modulus: p,
                })
            }
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::Mismatch {
                left: self.field(),
                right: other.field(),
            })
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(&PrimeField, u64, u64) -> u64,
    ) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                let f = PrimeField { p: *modulus };
                Scalar::Residue {
                    value: res(&f, *a, *b),
                    modulus: *modulus,
                }
            }
            _ => unreachable!("field equality checked above"),
        })
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |a, b| a + b, |f, a, b| f.add(&a, &b))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.binary(other, |a, b| a * b, |f, a, b| f.mul(&a, &b))
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: PrimeField { p: *modulus }.neg(value),
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Rational(q) => Rationals.inv(q).map(Scalar::Rational),
            Scalar::Residue { value, modulus } => Ok(Scalar::Residue {
                value: PrimeField { p: *modulus }.inv(value)?,
                modulus: *modulus,
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => {
                debug_assert!(q.denom().is_positive());
                write!(f, "{}/{}", q.numer(), q.denom())
            }
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a comma-separated list of scalar literals.
pub fn parse_list(text: &str, field: FieldDescriptor) -> Result<Vec<Scalar>, FieldError> {
    text.split(',').map(|s| Scalar::parse(s, field)).collect()
}
