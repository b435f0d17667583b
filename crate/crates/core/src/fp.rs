//! Prime field elements with a runtime modulus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

/// An element of `F_q`.
///
/// The modulus travels with the value. `Zero::zero()` and `One::one()` have no
/// field to refer to, so they produce field-agnostic integer constants
/// (`modulus == 0`) that adopt the modulus of the first bound element they
/// meet. Mixing two different moduli is a programming error and panics.
#[derive(Clone, Copy)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

enum Pair {
    Bound { a: u64, b: u64, q: u64 },
    Free { a: i64, b: i64 },
}

impl Fp {
    /// `value mod q`. `q` is assumed to be an odd prime (see [`FieldKind::prime`]).
    pub fn new(value: i64, q: u64) -> Self {
        assert!(q > 2, "modulus must be an odd prime");
        Fp {
            value: value.rem_euclid(q as i64) as u64,
            modulus: q,
        }
    }

    pub fn residue(&self) -> u64 {
        self.value
    }

    /// `None` for a field-agnostic constant.
    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus)
    }

    fn free(v: i64) -> Self {
        Fp {
            value: v as u64,
            modulus: 0,
        }
    }

    fn as_free(&self) -> i64 {
        self.value as i64
    }

    fn bind(&self, q: u64) -> u64 {
        if self.modulus == 0 {
            self.as_free().rem_euclid(q as i64) as u64
        } else {
            self.value
        }
    }

    fn pair(a: &Fp, b: &Fp) -> Pair {
        match (a.modulus, b.modulus) {
            (0, 0) => Pair::Free {
                a: a.as_free(),
                b: b.as_free(),
            },
            (qa, qb) => {
                if qa != 0 && qb != 0 {
                    assert_eq!(qa, qb, "mixing elements of F_{qa} and F_{qb}");
                }
                let q = qa.max(qb);
                Pair::Bound {
                    a: a.bind(q),
                    b: b.bind(q),
                    q,
                }
            }
        }
    }

    pub fn pow(&self, mut exp: u64) -> Fp {
        let q = self.modulus;
        assert!(q != 0, "pow on a field-agnostic constant");
        let mut base = self.value as u128;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q as u128;
            }
            base = base * base % q as u128;
            exp >>= 1;
        }
        Fp {
            value: acc as u64,
            modulus: q,
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "{}", self.as_free()),
            q => write!(f, "{} mod {}", self.value, q),
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "{}", self.as_free()),
            _ => write!(f, "{}", self.value),
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match Fp::pair(self, other) {
            Pair::Bound { a, b, .. } => a == b,
            Pair::Free { a, b } => a == b,
        }
    }
}

impl Eq for Fp {}

impl Add for Fp {
    type Output = Fp;

    fn add(self, rhs: Fp) -> Fp {
        match Fp::pair(&self, &rhs) {
            Pair::Bound { a, b, q } => Fp {
                value: ((a as u128 + b as u128) % q as u128) as u64,
                modulus: q,
            },
            Pair::Free { a, b } => Fp::free(a.checked_add(b).expect("constant overflow")),
        }
    }
}

impl Sub for Fp {
    type Output = Fp;

    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;

    fn mul(self, rhs: Fp) -> Fp {
        match Fp::pair(&self, &rhs) {
            Pair::Bound { a, b, q } => Fp {
                value: ((a as u128 * b as u128) % q as u128) as u64,
                modulus: q,
            },
            Pair::Free { a, b } => Fp::free(a.checked_mul(b).expect("constant overflow")),
        }
    }
}

impl Neg for Fp {
    type Output = Fp;

    fn neg(self) -> Fp {
        match self.modulus {
            0 => Fp::free(-self.as_free()),
            q => Fp {
                value: (q - self.value) % q,
                modulus: q,
            },
        }
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Fp;

    fn add(self, rhs: &'a Fp) -> Fp {
        self + *rhs
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Fp;

    fn sub(self, rhs: &'a Fp) -> Fp {
        self - *rhs
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Fp;

    fn mul(self, rhs: &'a Fp) -> Fp {
        self * *rhs
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp::free(0)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp::free(1)
    }
}

impl Scalar for Fp {
    fn from_bigint(field: FieldKind, value: &BigInt) -> Result<Self> {
        match field {
            FieldKind::Prime(q) => {
                let r = value.mod_floor(&BigInt::from(q));
                Ok(Fp {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: q,
                })
            }
            FieldKind::Rationals => Err(Error::InvalidField(
                "prime-field scalars cannot represent Q".into(),
            )),
        }
    }

    fn inverse(&self) -> Option<Self> {
        match self.modulus {
            0 => match self.as_free() {
                1 | -1 => Some(*self),
                _ => None,
            },
            q => (self.value != 0).then(|| self.pow(q - 2)),
        }
    }

    fn to_exact_string(&self) -> String {
        self.to_string()
    }
}
