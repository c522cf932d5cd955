use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::gaussian::GaussRational;
use super::scalar::{Field, Ring, RingKind, Q};

/// Laurent polynomial in one variable `t` with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, GaussRational>,
}

impl Laurent {
    pub fn monomial(coeff: GaussRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !Ring::is_zero(&coeff) {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Laurent::monomial(GaussRational::one(), 1)
    }

    pub fn t_pow(exp: i64) -> Self {
        Laurent::monomial(GaussRational::one(), exp)
    }

    pub fn constant(c: GaussRational) -> Self {
        Laurent::monomial(c, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> GaussRational {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// True when no positive or negative power of `t` occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn constant_value(&self) -> Option<GaussRational> {
        self.is_constant().then(|| self.coeff(0))
    }

    /// Lowest and highest exponent present, `None` for zero.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    /// Evaluates at a nonzero value of `t`.
    pub fn eval(&self, t: &GaussRational) -> GaussRational {
        let inv = t.unit_inverse().expect("Laurent evaluation at t = 0");
        let mut acc = GaussRational::zero();
        for (&e, c) in &self.terms {
            let base = if e >= 0 { t } else { &inv };
            let mut p = GaussRational::one();
            for _ in 0..e.unsigned_abs() {
                p = p.mul_ref(base);
            }
            acc = acc.add_ref(&c.mul_ref(&p));
        }
        acc
    }

    fn insert_add(&mut self, exp: i64, c: GaussRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                if !Ring::is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if Ring::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

impl From<GaussRational> for Laurent {
    fn from(c: GaussRational) -> Self {
        Laurent::constant(c)
    }
}

impl From<Q> for Laurent {
    fn from(c: Q) -> Self {
        Laurent::constant(GaussRational::real(c))
    }
}

impl Add for Laurent {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for Laurent {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for Laurent {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for Laurent {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Ring for Laurent {
    const KIND: RingKind = RingKind::Laurent;

    fn zero() -> Self {
        Laurent::default()
    }
    fn one() -> Self {
        Laurent::constant(GaussRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(q: &Q) -> Self {
        Laurent::constant(GaussRational::real(q.clone()))
    }
    fn div_int(&self, n: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, c.div_int(n))).collect() }
    }
    /// Units of the Laurent ring are exactly the nonzero monomials.
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Laurent::monomial(c.inv(), -e))
    }
    fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(*e, -c.clone());
        }
        out
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Laurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.insert_add(e1 + e2, c1.mul_ref(c2));
            }
        }
        out
    }
}

/// Writes `2*t^-1 + 1 - 1/3*t^2`, ascending exponents.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            // pull a leading minus out of purely real coefficients
            let (negative, mag) = if c.is_real() && c.re.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if mag.is_real() { mag.to_string() } else { format!("({mag})") };
            if e == 0 {
                f.write_str(&coeff)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{coeff}*")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}
