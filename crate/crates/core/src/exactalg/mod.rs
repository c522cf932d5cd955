//! Exact scalar rings and matrix algebra.
//!
//! Three rings are supported: the rationals [`Q`], the Gaussian rationals
//! [`GaussRational`], and Laurent polynomials in `t` over the Gaussian
//! rationals ([`Laurent`]). Matrices are generic over [`Ring`]; routines that
//! need division are bounded by [`Field`].

mod format;
mod gaussian;
mod laurent;
mod linalg;
mod matrix;
mod poly;
mod scalar;
mod smith;

pub use format::{
    matrix_from_literals, parse_gaussian, parse_laurent, parse_rational, ExactMatrix, Literal,
    LiteralError,
};
pub use gaussian::GaussRational;
pub use laurent::Laurent;
pub use linalg::{
    common_kernel, kernel_basis, laurent_rank, laurent_rank_sample_bound, rank, rref, Subspace,
};
pub use matrix::Matrix;
pub use poly::Poly;
pub use scalar::{q, qi, Field, Ring, RingKind, Q};
pub use smith::{conjugate_over_field, conjugate_semisimple, invariant_factors, minimal_poly};

pub(crate) use scalar::q_to_f64;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("Laurent matrix evaluated at t = 0")]
    EvaluationAtZero,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Format(String),
    #[error("entry [{row}][{col}] {text:?}: {cause}")]
    Literal {
        row: usize,
        col: usize,
        text: String,
        cause: LiteralError,
    },
}

/// Characteristic polynomial det(xI − m).
pub fn char_poly<R: Ring>(m: &Matrix<R>) -> Poly<R> {
    m.char_poly()
}

/// Evaluates every entry of a Laurent matrix at a nonzero rational `t`.
pub fn eval_laurent(m: &Matrix<Laurent>, t: &Q) -> Result<Matrix<GaussRational>, AlgebraError> {
    if Ring::is_zero(t) {
        return Err(AlgebraError::EvaluationAtZero);
    }
    let tv = GaussRational::real(t.clone());
    Ok(m.map(|e| e.eval(&tv)))
}

/// Embeds a rational matrix into the Gaussian rationals.
pub fn to_gaussian(m: &Matrix<Q>) -> Matrix<GaussRational> {
    m.map(|e| GaussRational::real(e.clone()))
}

/// Embeds a rational matrix as constant Laurent entries.
pub fn to_laurent(m: &Matrix<Q>) -> Matrix<Laurent> {
    m.map(|e| Laurent::from(e.clone()))
}

/// Projects a Gaussian matrix with zero imaginary parts back to Q.
pub fn real_part_if_real(m: &Matrix<GaussRational>) -> Option<Matrix<Q>> {
    m.entries().iter().all(GaussRational::is_real).then(|| m.map(|e| e.re.clone()))
}

/// Diagonal one-parameter family diag(t^{k_1}, …, t^{k_d}) over the Laurent ring.
pub fn monomial_diagonal(exponents: &[i64]) -> Matrix<Laurent> {
    Matrix::diagonal(exponents.iter().map(|&k| Laurent::t_pow(k)).collect())
}

/// The same family evaluated at a nonzero rational value.
pub fn monomial_diagonal_at(exponents: &[i64], t: &Q) -> Result<Matrix<Q>, AlgebraError> {
    if Ring::is_zero(t) {
        return Err(AlgebraError::EvaluationAtZero);
    }
    let tinv = Field::inv(t);
    Ok(Matrix::diagonal(
        exponents
            .iter()
            .map(|&k| {
                let base = if k >= 0 { t } else { &tinv };
                (0..k.unsigned_abs()).fold(<Q as Ring>::one(), |acc, _| acc * base)
            })
            .collect(),
    ))
}
