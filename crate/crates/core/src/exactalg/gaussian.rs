use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::scalar::{fmt_q, Field, Ring, RingKind, Q};

/// Element re + im·i of the Gaussian rationals Q(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Q,
    pub im: Q,
}

impl GaussRational {
    pub fn new(re: Q, im: Q) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussRational { re, im: Q::zero() }
    }

    pub fn i() -> Self {
        GaussRational { re: Q::zero(), im: <Q as Ring>::one() }
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (super::scalar::q_to_f64(&self.re), super::scalar::q_to_f64(&self.im))
    }
}

impl From<Q> for GaussRational {
    fn from(re: Q) -> Self {
        GaussRational::real(re)
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl Ring for GaussRational {
    const KIND: RingKind = RingKind::Gaussian;

    fn zero() -> Self {
        GaussRational::default()
    }
    fn one() -> Self {
        GaussRational::real(<Q as Ring>::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rational(q: &Q) -> Self {
        GaussRational::real(q.clone())
    }
    fn div_int(&self, n: i64) -> Self {
        GaussRational { re: self.re.div_int(n), im: self.im.div_int(n) }
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(GaussRational { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn add_ref(&self, o: &Self) -> Self {
        GaussRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRational::real(&self.re * &o.re);
        }
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Field for GaussRational {
    const EXTENSION_DEGREE: usize = 2;
}

/// Writes `1/2+3/4i`, `-i`, `5` style literals; the inverse of the entry grammar.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_q(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_q(&self.re, f)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im == <Q as Ring>::one() {
            f.write_str("i")
        } else if self.im == -<Q as Ring>::one() {
            f.write_str("-i")
        } else {
            fmt_q(&self.im, f)?;
            f.write_str("i")
        }
    }
}
