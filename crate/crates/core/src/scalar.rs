//! Exact scalar types.
//!
//! Everything downstream is generic over [`Scalar`], which is implemented for
//! arbitrary-precision rationals ([`Rational`]) and for prime-field elements
//! ([`Fp`](crate::fp::Fp)). There is no floating-point scalar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::linalg::{bareiss, elimination};

pub type Rational = BigRational;

/// Which field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldKind {
    Rationals,
    /// `F_q` for an odd prime `q`.
    Prime(u64),
}

impl FieldKind {
    pub fn prime(q: u64) -> Result<Self> {
        if q == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not allowed for quadratic cochains".into(),
            ));
        }
        if !is_prime(q) {
            return Err(Error::InvalidField(format!("{q} is not prime")));
        }
        Ok(FieldKind::Prime(q))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rationals => 0,
            FieldKind::Prime(q) => *q,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(q) => write!(f, "Fq:{q}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldKind::Rationals);
        }
        let q = s
            .strip_prefix("Fq:")
            .ok_or_else(|| Error::InvalidField(format!("expected `Q` or `Fq:<q>`, got `{s}`")))?;
        let q: u64 = q
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad modulus in `{s}`")))?;
        FieldKind::prime(q)
    }
}

impl From<FieldKind> for String {
    fn from(f: FieldKind) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// The elimination hooks let each field pick its own strategy: rationals use
/// fraction-free elimination over the integers, prime fields use ordinary
/// Gauss-Jordan.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Embeds an integer into `field`; fails if this scalar type cannot
    /// represent that field.
    fn from_bigint(field: FieldKind, value: &BigInt) -> Result<Self>;

    fn from_i64(field: FieldKind, value: i64) -> Result<Self> {
        Self::from_bigint(field, &BigInt::from(value))
    }

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.clone() * inv)
    }

    /// Parses `"a"` or `"a/b"`.
    fn parse_in(field: FieldKind, s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: `{t}`")))
        };
        match s.split_once('/') {
            None => Self::from_bigint(field, &parse_int(s)?),
            Some((num, den)) => {
                let num = Self::from_bigint(field, &parse_int(num)?)?;
                let den = Self::from_bigint(field, &parse_int(den)?)?;
                num.checked_div(&den)
            }
        }
    }

    /// Lossless text form: `"num/den"` for rationals, the residue for `F_q`.
    fn to_exact_string(&self) -> String;

    fn rank_of(m: &Matrix<Self>) -> usize {
        elimination::rank(m)
    }

    fn kernel_of(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        elimination::kernel_basis(m)
    }
}

impl Scalar for Rational {
    fn from_bigint(field: FieldKind, value: &BigInt) -> Result<Self> {
        match field {
            FieldKind::Rationals => Ok(Rational::from_integer(value.clone())),
            other => Err(Error::InvalidField(format!(
                "rational scalars cannot represent {other}"
            ))),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_exact_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn rank_of(m: &Matrix<Self>) -> usize {
        bareiss::rank(&bareiss::integer_rows(m))
    }

    fn kernel_of(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        bareiss::kernel_basis(&bareiss::integer_rows(m), m.cols())
            .into_iter()
            .map(|v| v.into_iter().map(Rational::from_integer).collect())
            .collect()
    }
}

/// `true` when every entry is an integer.
pub fn is_integral(values: &[Rational]) -> bool {
    values.iter().all(|v| v.is_integer())
}

/// `(-1)^k` as a scalar.
pub fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}
