//! Exact spectral classifiers and the floating contraction certificate.
//!
//! Unipotence and eigenvalue tests work over any exact ring. Order
//! classification raises to the cyclotomic exponent L: over a field of
//! degree e, an eigenvalue that is a root of unity has order n with
//! φ(n) ≤ d·e, so m has finite order exactly when m^L = I.

mod contraction;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::exactalg::{rank, Field, GaussRational, Laurent, Matrix, Poly, Ring, RingKind, ExactMatrix, Q};

pub use contraction::{
    contraction_certificate, corroborate, projective_distance, to_float, ContractionCertificate,
    ContractionOutcome, ContractionSearch,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectraError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("operation needs a field, got the {0} ring")]
    NotAField(RingKind),
    #[error("cyclotomic exponent for d = {d} overflows u64")]
    ExponentOverflow { d: usize },
}

/// Why a matrix was classified as having infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InfiniteReason {
    /// m^L is unipotent but not the identity.
    #[serde(rename = "nontrivial unipotent power")]
    NontrivialUnipotentPower,
    /// m^L has an eigenvalue other than 1.
    #[serde(rename = "power not unipotent")]
    PowerNotUnipotent,
}

impl std::fmt::Display for InfiniteReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InfiniteReason::NontrivialUnipotentPower => "nontrivial unipotent power",
            InfiniteReason::PowerNotUnipotent => "power not unipotent",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrderVerdict {
    /// Invariant: m^order = I, order is minimal and divides L.
    Finite { order: u64 },
    Infinite { reason: InfiniteReason },
}

impl OrderVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrderVerdict::Finite { .. })
    }
}

/// Three-way unipotence verdict; `ParameterDependent` only arises over the
/// Laurent ring, when the characteristic polynomial depends on t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Unipotence {
    Unipotent,
    NotUnipotent,
    ParameterDependent,
}

fn unit_poly<R: Ring>(d: usize) -> Poly<R> {
    Poly::linear_power(&R::one(), d)
}

/// The two unipotence routes: nilpotence of m − I, and char_poly = (x−1)^d.
pub fn unipotence_routes<R: Ring>(m: &Matrix<R>) -> (bool, bool) {
    let d = m.rows();
    let n = m.sub(&Matrix::identity(d));
    let nilpotent = n.pow(d as u64).is_zero();
    let by_poly = m.char_poly() == unit_poly(d);
    (nilpotent, by_poly)
}

/// True iff every eigenvalue of m equals 1.
///
/// Over the Laurent ring a true verdict holds for every nonzero t.
pub fn is_unipotent<R: Ring>(m: &Matrix<R>) -> bool {
    assert!(m.is_square(), "is_unipotent needs a square matrix");
    // cheap necessary condition first
    if m.trace() != R::from_i64(m.rows() as i64) {
        return false;
    }
    let (a, b) = unipotence_routes(m);
    assert_eq!(a, b, "unipotence routes disagree on {m}");
    a
}

/// Determinant of the principal submatrix on `idx`, by Laplace expansion
/// along the first row.
fn principal_minor<R: Ring>(m: &Matrix<R>, rows: &[usize], cols: &[usize]) -> R {
    match rows.len() {
        0 => R::one(),
        1 => m[(rows[0], cols[0])].clone(),
        2 => m[(rows[0], cols[0])]
            .mul_ref(&m[(rows[1], cols[1])])
            .sub_ref(&m[(rows[0], cols[1])].mul_ref(&m[(rows[1], cols[0])])),
        _ => {
            let mut acc = R::zero();
            for (k, &c) in cols.iter().enumerate() {
                let e = &m[(rows[0], c)];
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = e.mul_ref(&principal_minor(m, &rows[1..], &rest));
                acc = if k % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            acc
        }
    }
}

fn subsets_of_size(d: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << d)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..d).filter(|&i| s & (1 << i) != 0).collect())
        .collect()
}

/// Single-route unipotence test for hot loops; agrees with [`is_unipotent`].
///
/// For d ≤ 4 it compares the sums of k×k principal minors with C(d, k),
/// stopping at the first mismatch; larger matrices use the characteristic
/// polynomial.
pub fn is_unipotent_fast<R: Ring>(m: &Matrix<R>) -> bool {
    let d = m.rows();
    if m.trace() != R::from_i64(d as i64) {
        return false;
    }
    if d > 4 {
        return m.char_poly() == unit_poly(d);
    }
    let mut binom = d as i64;
    for k in 2..=d {
        binom = binom * (d - k + 1) as i64 / k as i64;
        let sum = subsets_of_size(d, k)
            .iter()
            .fold(R::zero(), |acc, s| acc.add_ref(&principal_minor(m, s, s)));
        if sum != R::from_i64(binom) {
            return false;
        }
    }
    true
}

/// Symbolic verdict for a Laurent family, valid for every t ≠ 0.
pub fn laurent_unipotence(m: &Matrix<Laurent>) -> Unipotence {
    let p = m.char_poly();
    if p == unit_poly(m.rows()) {
        Unipotence::Unipotent
    } else if p.coeffs().iter().all(Laurent::is_constant) {
        Unipotence::NotUnipotent
    } else {
        Unipotence::ParameterDependent
    }
}

/// Unipotence of a ring-tagged matrix.
pub fn unipotence(m: &ExactMatrix) -> Unipotence {
    let verdict = |u: bool| if u { Unipotence::Unipotent } else { Unipotence::NotUnipotent };
    match m {
        ExactMatrix::Rational(m) => verdict(is_unipotent(m)),
        ExactMatrix::Gaussian(m) => verdict(is_unipotent(m)),
        ExactMatrix::Laurent(m) => laurent_unipotence(m),
    }
}

/// Unipotent with a single Jordan block: rank(m − I) = d − 1.
pub fn is_regular_unipotent<F: Field>(m: &Matrix<F>) -> bool {
    let d = m.rows();
    is_unipotent(m) && rank(&m.sub(&Matrix::identity(d))) + 1 == d
}

/// True iff 1 is a root of the characteristic polynomial.
pub fn has_eigenvalue_one<F: Field>(m: &Matrix<F>) -> bool {
    m.char_poly().eval(&F::one()).is_zero()
}

fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Field degree over Q of the scalar ring, if it is a field.
pub fn extension_degree(ring: RingKind) -> Option<usize> {
    match ring {
        RingKind::Rational => Some(Q::EXTENSION_DEGREE),
        RingKind::Gaussian => Some(GaussRational::EXTENSION_DEGREE),
        RingKind::Laurent => None,
    }
}

/// L = lcm{ n : φ(n) ≤ B } with B = d times the field degree.
///
/// φ(n) ≥ √(n/2), so the search stops at n = 2B².
pub fn cyclotomic_exponent(d: usize, ring: RingKind) -> Result<u64, SpectraError> {
    let e = extension_degree(ring).ok_or(SpectraError::NotAField(ring))?;
    exponent_for_bound((d * e) as u64).ok_or(SpectraError::ExponentOverflow { d })
}

fn exponent_for_bound(b: u64) -> Option<u64> {
    let mut l: u64 = 1;
    for n in 1..=2 * b * b {
        if euler_phi(n) <= b {
            l = (l / gcd(l, n)).checked_mul(n)?;
        }
    }
    Some(l)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Scalars whose algebraic-integer test is decidable entrywise.
pub trait OrderField: Field {
    /// True if the value is an algebraic integer of absolute value ≤ bound
    /// under every embedding.
    fn bounded_integer(&self, bound: &BigInt) -> bool;
}

impl OrderField for Q {
    fn bounded_integer(&self, bound: &BigInt) -> bool {
        self.is_integer() && self.numer().abs() <= *bound
    }
}

impl OrderField for GaussRational {
    fn bounded_integer(&self, bound: &BigInt) -> bool {
        self.re.is_integer()
            && self.im.is_integer()
            && self.re.numer() * self.re.numer() + self.im.numer() * self.im.numer() <= bound * bound
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Characteristic polynomial could be a product of cyclotomic factors:
/// algebraic-integer coefficients bounded by the binomial coefficients.
fn roots_may_be_roots_of_unity<F: OrderField>(p: &Poly<F>, d: usize) -> bool {
    (0..=d).all(|k| p.coeff(k).bounded_integer(&binomial(d, k)))
}

/// Finite order with the exact order, or infinite order with the reason.
pub fn classify_order<F: OrderField>(m: &Matrix<F>) -> Result<OrderVerdict, SpectraError> {
    if !m.is_square() {
        return Err(SpectraError::NotSquare);
    }
    let d = m.rows();
    if m.det().is_zero() {
        return Err(SpectraError::Singular);
    }
    if !roots_may_be_roots_of_unity(&m.char_poly(), d) {
        return Ok(OrderVerdict::Infinite { reason: InfiniteReason::PowerNotUnipotent });
    }
    let l = cyclotomic_exponent(d, F::KIND)?;
    let p = m.pow(l);
    if !p.is_identity() {
        let reason = if is_unipotent(&p) {
            InfiniteReason::NontrivialUnipotentPower
        } else {
            InfiniteReason::PowerNotUnipotent
        };
        return Ok(OrderVerdict::Infinite { reason });
    }
    let mut k = l;
    for prime in prime_factors(l) {
        while k % prime == 0 && m.pow(k / prime).is_identity() {
            k /= prime;
        }
    }
    Ok(OrderVerdict::Finite { order: k })
}

/// Order classification of a ring-tagged matrix.
pub fn classify_order_exact(m: &ExactMatrix) -> Result<OrderVerdict, SpectraError> {
    match m {
        ExactMatrix::Rational(m) => classify_order(m),
        ExactMatrix::Gaussian(m) => classify_order(m),
        ExactMatrix::Laurent(_) => Err(SpectraError::NotAField(RingKind::Laurent)),
    }
}

#[cfg(test)]
mod tests;
