//! Zariski-density certificates in SL_d through the adjoint representation.
//!
//! For Γ ⊂ SL_d the span of Ad(Γ) in End(sl_d) is the associative algebra
//! generated by the generators' adjoints. It is everything exactly when the
//! Zariski closure acts irreducibly on sl_d; together with an element of
//! infinite order that forces the closure to be SL_d.

use serde::Serialize;

use crate::exactalg::{ExactMatrix, Field, Matrix, RingKind, Subspace};
use crate::freegroup::{words_up_to, Evaluator, ReducedWord};
use crate::group::MatrixGroup;
use crate::par::Exec;
use crate::spectra::{classify_order, InfiniteReason, OrderField, OrderVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DensityError {
    #[error("generator {index} has determinant {det}, expected 1")]
    NotSpecialLinear { index: usize, det: String },
    #[error("no generators given")]
    Empty,
    #[error("generator {index} is {got}x{got}, expected {expected}x{expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("generators mix scalar rings")]
    MixedRings,
    #[error("density needs a field, got the {0} ring")]
    NotAField(RingKind),
}

/// Index of the basis element E_ij (i ≠ j) or H_k = E_kk − E_{k+1,k+1}.
///
/// Off-diagonal units come first in row-major order, then H_1..H_{d−1}.
pub fn sl_basis_len(d: usize) -> usize {
    d * d - 1
}

/// Coordinates of a trace-zero matrix in the fixed basis of sl_d.
pub fn sl_coordinates<F: Field>(x: &Matrix<F>) -> Vec<F> {
    let d = x.rows();
    let mut out = Vec::with_capacity(sl_basis_len(d));
    for i in 0..d {
        for j in 0..d {
            if i != j {
                out.push(x[(i, j)].clone());
            }
        }
    }
    // X = Σ c_k H_k has X_11 + … + X_kk = c_k
    let mut partial = F::zero();
    for k in 0..d - 1 {
        partial = partial.add_ref(&x[(k, k)]);
        out.push(partial.clone());
    }
    out
}

fn sl_basis_element<F: Field>(d: usize, idx: usize) -> Matrix<F> {
    let off = d * (d - 1);
    let unit = |a: usize, b: usize| Matrix::from_fn(d, d, |r, c| if (r, c) == (a, b) { F::one() } else { F::zero() });
    if idx < off {
        let i = idx / (d - 1);
        let jr = idx % (d - 1);
        unit(i, if jr >= i { jr + 1 } else { jr })
    } else {
        let k = idx - off;
        unit(k, k).sub(&unit(k + 1, k + 1))
    }
}

/// Conjugation X ↦ gXg⁻¹ on sl_d, as a (d²−1)×(d²−1) matrix whose columns
/// are the images of the basis elements.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointOperator<F> {
    pub source: Matrix<F>,
    pub matrix: Matrix<F>,
}

/// Adjoint of g ∈ SL_d.
pub fn adjoint<F: Field>(g: &Matrix<F>) -> Result<AdjointOperator<F>, DensityError> {
    let det = g.det();
    if !det.is_one() {
        return Err(DensityError::NotSpecialLinear { index: 1, det: det.to_string() });
    }
    Ok(AdjointOperator { source: g.clone(), matrix: adjoint_matrix(g) })
}

fn adjoint_matrix<F: Field>(g: &Matrix<F>) -> Matrix<F> {
    let d = g.rows();
    let gi = g.inverse_field().expect("det 1");
    let n = sl_basis_len(d);
    let cols: Vec<Vec<F>> = (0..n)
        .map(|k| sl_coordinates(&g.mul(&sl_basis_element(d, k)).mul(&gi)))
        .collect();
    Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DensityVerdict {
    Dense,
    NotDense,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityCertificate {
    pub verdict: DensityVerdict,
    /// Words whose adjoint images form a basis of the span found.
    pub spanning_words: Vec<ReducedWord>,
    pub span_dim: usize,
    /// (d²−1)², the dimension of End(sl_d).
    pub full_dim: usize,
    /// Infinite-order word, present for Dense.
    pub witness: Option<ReducedWord>,
    pub witness_reason: Option<InfiniteReason>,
    /// Dimension of the closed algebra, present for NotDense.
    pub stable_algebra_dim: Option<usize>,
    /// True once the span was closed under the generators.
    pub stabilized: bool,
}

/// Words tried when hunting for an infinite-order element.
const WITNESS_WORD_CAP: usize = 20_000;

fn validate<F: Field>(gens: &[Matrix<F>]) -> Result<usize, DensityError> {
    let first = gens.first().ok_or(DensityError::Empty)?;
    let d = first.rows();
    for (k, g) in gens.iter().enumerate() {
        if !g.is_square() || g.rows() != d {
            return Err(DensityError::DimensionMismatch { index: k + 1, expected: d, got: g.rows() });
        }
        let det = g.det();
        if !det.is_one() {
            return Err(DensityError::NotSpecialLinear { index: k + 1, det: det.to_string() });
        }
    }
    Ok(d)
}

fn flatten<F: Field>(m: &Matrix<F>) -> Vec<F> {
    m.entries().to_vec()
}

/// First infinite-order word of length ≤ `max_len` in shortlex order,
/// preferring one whose L-th power is not unipotent.
fn infinite_order_witness<F: OrderField>(
    gens: &[Matrix<F>],
    max_len: usize,
) -> Option<(ReducedWord, InfiniteReason)> {
    let group = MatrixGroup::<F>::new(gens[0].rows());
    let ev = Evaluator::new(&group, gens);
    let mut fallback = None;
    let words: Vec<ReducedWord> = words_up_to(gens.len(), max_len).into_iter().take(WITNESS_WORD_CAP).collect();
    let found = ev.eval_batch(&words, |_, w, m| match classify_order(m) {
        Ok(OrderVerdict::Infinite { reason: InfiniteReason::PowerNotUnipotent }) => {
            std::ops::ControlFlow::Break(w.clone())
        }
        Ok(OrderVerdict::Infinite { reason }) => {
            fallback.get_or_insert((w.clone(), reason));
            std::ops::ControlFlow::Continue(())
        }
        _ => std::ops::ControlFlow::Continue(()),
    });
    found.map(|w| (w, InfiniteReason::PowerNotUnipotent)).or(fallback)
}

/// Adjoint-span closure plus an infinite-order witness search.
///
/// Words are explored breadth-first, each new span element left-multiplied
/// by every generator adjoint. The span is stable once a whole pass adds no
/// dimension; it is then the algebra generated by Ad(gens).
pub fn certify_zariski_density<F: OrderField>(
    gens: &[Matrix<F>],
    word_budget: usize,
) -> Result<DensityCertificate, DensityError> {
    let d = validate(gens)?;
    let n = gens.len();
    let dim = sl_basis_len(d);
    let full_dim = dim * dim;
    let ads: Vec<Matrix<F>> = gens.iter().map(adjoint_matrix).collect();

    let mut span = Subspace::zero(full_dim);
    let ident = Matrix::<F>::identity(dim);
    span.insert(flatten(&ident));
    let mut spanning = vec![ReducedWord::identity(n)];
    let mut frontier: Vec<(ReducedWord, Matrix<F>)> = vec![(ReducedWord::identity(n), ident)];
    let mut stabilized = false;
    for _ in 0..word_budget {
        let mut next = Vec::new();
        for (w, a) in &frontier {
            for (k, ad) in ads.iter().enumerate() {
                if span.dim() == full_dim {
                    break;
                }
                let prod = ad.mul(a);
                if span.insert(flatten(&prod)) {
                    let word = ReducedWord::generator(n, k + 1).mul(w);
                    spanning.push(word.clone());
                    next.push((word, prod));
                }
            }
        }
        if next.is_empty() {
            stabilized = true;
            break;
        }
        frontier = next;
    }
    if span.dim() == full_dim {
        stabilized = true;
    }

    let span_dim = span.dim();
    let mut cert = DensityCertificate {
        verdict: DensityVerdict::Inconclusive,
        spanning_words: spanning,
        span_dim,
        full_dim,
        witness: None,
        witness_reason: None,
        stable_algebra_dim: None,
        stabilized,
    };
    if stabilized && span_dim < full_dim {
        cert.verdict = DensityVerdict::NotDense;
        cert.stable_algebra_dim = Some(span_dim);
    } else if span_dim == full_dim {
        if let Some((w, reason)) = infinite_order_witness(gens, word_budget.max(1)) {
            cert.verdict = DensityVerdict::Dense;
            cert.witness = Some(w);
            cert.witness_reason = Some(reason);
        }
    }
    Ok(cert)
}

/// Independent re-check of a Dense certificate.
pub fn verify_dense<F: OrderField>(gens: &[Matrix<F>], cert: &DensityCertificate) -> bool {
    if cert.verdict != DensityVerdict::Dense {
        return false;
    }
    let group = MatrixGroup::<F>::new(gens[0].rows());
    let ev = Evaluator::new(&group, gens);
    let span = Subspace::span(
        cert.full_dim,
        cert.spanning_words.iter().map(|w| flatten(&adjoint_matrix(&ev.eval(w)))),
    );
    let witness_ok = cert.witness.as_ref().is_some_and(|w| {
        let m = ev.eval(w);
        matches!(classify_order(&m), Ok(OrderVerdict::Infinite { .. }))
    });
    span.dim() == cert.full_dim && witness_ok
}

/// Certificate for a ring-tagged generator list.
pub fn certify_exact(gens: &[ExactMatrix], word_budget: usize) -> Result<DensityCertificate, DensityError> {
    let first = gens.first().ok_or(DensityError::Empty)?;
    match first.ring() {
        RingKind::Rational => {
            let ms: Option<Vec<_>> = gens.iter().map(|g| match g {
                ExactMatrix::Rational(m) => Some(m.clone()),
                _ => None,
            }).collect();
            certify_zariski_density(&ms.ok_or(DensityError::MixedRings)?, word_budget)
        }
        RingKind::Gaussian => {
            let ms: Option<Vec<_>> = gens.iter().map(|g| match g {
                ExactMatrix::Gaussian(m) => Some(m.clone()),
                _ => None,
            }).collect();
            certify_zariski_density(&ms.ok_or(DensityError::MixedRings)?, word_budget)
        }
        RingKind::Laurent => Err(DensityError::NotAField(RingKind::Laurent)),
    }
}

/// Proper coordinate subsets (1-based, size ≥ 2) whose sub-tuple is Dense.
///
/// A nonempty result shows the tuple is Zariski redundant: the free factor
/// on those coordinates already has dense image.
pub fn redundancy_scan<F: OrderField>(
    tuple: &[Matrix<F>],
    word_budget: usize,
    exec: Exec,
) -> Result<Vec<Vec<usize>>, DensityError> {
    validate(tuple)?;
    let n = tuple.len();
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).map(|i| i + 1).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let verdicts = exec.map(&subsets, |s| {
        let sub: Vec<Matrix<F>> = s.iter().map(|&i| tuple[i - 1].clone()).collect();
        certify_zariski_density(&sub, word_budget).map(|c| c.verdict)
    });
    let mut out = Vec::new();
    for (s, v) in subsets.into_iter().zip(verdicts) {
        if v? == DensityVerdict::Dense {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
