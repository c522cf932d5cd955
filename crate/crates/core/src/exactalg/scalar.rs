use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Tag naming one of the three exact scalar rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Rational,
    Gaussian,
    Laurent,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Rational => "rational",
            RingKind::Gaussian => "gaussian",
            RingKind::Laurent => "laurent",
        })
    }
}

/// A commutative ring containing the rationals.
///
/// Every ring here is a Q-algebra, so exact division by a nonzero integer is
/// always defined. The `*_ref` methods exist so generic kernels can avoid
/// cloning where the concrete type has cheaper by-reference arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const KIND: RingKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_rational(q: &Q) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }
    /// Exact division by a nonzero integer.
    fn div_int(&self, n: i64) -> Self;
    /// Multiplicative inverse if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

/// A ring in which every nonzero element is a unit.
pub trait Field: Ring {
    /// Degree of the field over Q. Eigenvalues of a d×d matrix over the
    /// field are algebraic of degree at most `d * EXTENSION_DEGREE`.
    const EXTENSION_DEGREE: usize;

    fn inv(&self) -> Self {
        self.unit_inverse().expect("inverse of zero")
    }
    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }
}

impl Ring for Q {
    const KIND: RingKind = RingKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero integer");
        self / Q::from_integer(BigInt::from(n))
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Field for Q {
    const EXTENSION_DEGREE: usize = 1;

    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // fall back on exponent-aware conversion for huge numerators
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub(crate) fn fmt_q(x: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_integer() {
        write!(f, "{}", x.numer())
    } else {
        write!(f, "{}/{}", x.numer(), x.denom())
    }
}
