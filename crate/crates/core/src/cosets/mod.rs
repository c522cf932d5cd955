//! Cosets x·H inside a single conjugacy class: trace obstructions for
//! one-parameter subgroups, the monomial-type conclusion, and sampled
//! conjugacy-invariant checks.

use std::collections::HashMap;

use serde::Serialize;

use crate::exactalg::{
    invariant_factors, monomial_diagonal, Field, Laurent, Matrix, Poly, Ring, Q,
};
use crate::freegroup::{words_up_to, Evaluator, ReducedWord};
use crate::group::MatrixGroup;
use crate::spectra::{has_eigenvalue_one, is_unipotent};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CosetError {
    #[error("eigenvalue list is empty")]
    Empty,
    #[error("eigenvalues sum to {0}, expected 0")]
    NonzeroSum(String),
    #[error("proper partial sum over indices {0:?} vanishes")]
    PartialSumZero(Vec<usize>),
    #[error("exponents sum to {0}, expected 0")]
    NonzeroExponentSum(i64),
    #[error("sample t = 0 is not allowed")]
    ZeroParameter,
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("samples do not match the subgroup description")]
    SampleKind,
}

/// Indices (1-based) of a proper nonempty subset of λ summing to zero.
///
/// Since the whole list sums to zero, a subset and its complement vanish
/// together, so only subsets avoiding the last entry are searched. Reachable
/// sums are grown one entry at a time.
pub fn vanishing_partial_sum(lambda: &[Q]) -> Option<Vec<usize>> {
    let n = lambda.len();
    if n < 2 {
        return None;
    }
    // sum -> smallest index set reaching it
    let mut reach: HashMap<Q, Vec<usize>> = HashMap::new();
    for (i, l) in lambda[..n - 1].iter().enumerate() {
        let mut grown: Vec<(Q, Vec<usize>)> = vec![(l.clone(), vec![i + 1])];
        for (s, set) in &reach {
            let mut with = set.clone();
            with.push(i + 1);
            grown.push((s + l, with));
        }
        for (s, set) in grown {
            if s == <Q as Ring>::zero() {
                return Some(set);
            }
            reach.entry(s).or_insert(set);
        }
    }
    None
}

/// One-parameter hypothesis: λ sums to zero and no proper partial sum does.
pub fn check_hypothesis(lambda: &[Q]) -> Result<(), CosetError> {
    if lambda.is_empty() {
        return Err(CosetError::Empty);
    }
    let total = lambda.iter().fold(<Q as Ring>::zero(), |a, b| a + b);
    if total != <Q as Ring>::zero() {
        return Err(CosetError::NonzeroSum(total.to_string()));
    }
    match vanishing_partial_sum(lambda) {
        Some(s) => Err(CosetError::PartialSumZero(s)),
        None => Ok(()),
    }
}

/// Σ_{|S|=m} det(x_{S,S}) · (Σ_{i∈S} λ_i)^k.
///
/// This is the k-th derivative at 0 of tr Λ^m(x·e^{tA}) for A = diag(λ); it
/// must vanish for every k ≥ 1 when that trace is constant.
pub fn wedge_trace<F: Field>(x: &Matrix<F>, lambda: &[Q], m: usize, k: u32) -> F {
    let d = x.rows();
    let mut acc = F::zero();
    for mask in 0u32..1 << d {
        if mask.count_ones() as usize != m {
            continue;
        }
        let s: Vec<usize> = (0..d).filter(|&i| mask & (1 << i) != 0).collect();
        let lam_s = s.iter().fold(<Q as Ring>::zero(), |a, &i| a + &lambda[i]);
        let minor = x.submatrix(&s, &s).det();
        let pow = F::from_rational(&num_traits::pow(lam_s, k as usize));
        acc = acc.add_ref(&minor.mul_ref(&pow));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceCondition {
    pub wedge: usize,
    pub power: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionReport {
    /// Conditions evaluated, in order (wedge degree, then power).
    pub checked: usize,
    /// First non-vanishing trace condition: x·e^{tA} cannot stay in x's class.
    pub obstruction: Option<TraceCondition>,
    /// When every condition holds: whether char_poly(x) = t^d − c.
    pub monomial_type: Option<bool>,
}

/// Necessary trace conditions for x·exp(tA) ⊂ x^G with A = diag(λ).
///
/// Conditions run over wedge degrees m = 1..d−1 and powers k = 1..depth.
/// If all vanish, reports the monomial-type check on x; the conclusion that
/// x is conjugate to diag(1, ζ, …, ζ^{d−1}) also needs det normalization.
pub fn one_param_obstruction<F: Field>(
    x: &Matrix<F>,
    lambda: &[Q],
    depth: u32,
) -> Result<ObstructionReport, CosetError> {
    check_hypothesis(lambda)?;
    let d = x.rows();
    if lambda.len() != d {
        return Err(CosetError::DimensionMismatch { expected: d, got: lambda.len() });
    }
    let mut checked = 0;
    for m in 1..d.max(2) {
        for k in 1..=depth {
            checked += 1;
            let v = wedge_trace(x, lambda, m, k);
            if !v.is_zero() {
                return Ok(ObstructionReport {
                    checked,
                    obstruction: Some(TraceCondition { wedge: m, power: k, value: v.to_string() }),
                    monomial_type: None,
                });
            }
        }
    }
    Ok(ObstructionReport { checked, obstruction: None, monomial_type: Some(monomial_type_check(x)) })
}

/// char_poly(x) = t^d − c: every coefficient strictly between the constant
/// and the leading one vanishes.
pub fn monomial_type_check<F: Field>(x: &Matrix<F>) -> bool {
    let p = x.char_poly();
    let d = x.rows();
    (1..d).all(|k| p.coeff(k).is_zero())
}

/// A subgroup H, given by generators or as t ↦ diag(t^{k_1}, …, t^{k_d}).
#[derive(Debug, Clone, PartialEq)]
pub enum Subgroup<F> {
    Generators(Vec<Matrix<F>>),
    OneParameter { exponents: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosetInstance<F> {
    pub x: Matrix<F>,
    pub h: Subgroup<F>,
}

impl<F: Field> CosetInstance<F> {
    pub fn new(x: Matrix<F>, h: Subgroup<F>) -> Result<Self, CosetError> {
        let d = x.rows();
        match &h {
            Subgroup::Generators(gs) => {
                if let Some(g) = gs.iter().find(|g| g.rows() != d) {
                    return Err(CosetError::DimensionMismatch { expected: d, got: g.rows() });
                }
            }
            Subgroup::OneParameter { exponents } => {
                if exponents.len() != d {
                    return Err(CosetError::DimensionMismatch { expected: d, got: exponents.len() });
                }
                let s: i64 = exponents.iter().sum();
                if s != 0 {
                    return Err(CosetError::NonzeroExponentSum(s));
                }
            }
        }
        Ok(CosetInstance { x, h })
    }

    /// Characteristic polynomial of x·h(t) over the Laurent ring.
    pub fn family_char_poly(&self) -> Option<Poly<Laurent>>
    where
        F: Into<Laurent> + Clone,
    {
        let Subgroup::OneParameter { exponents } = &self.h else { return None };
        let xl: Matrix<Laurent> = self.x.map(|e| e.clone().into());
        Some(xl.mul(&monomial_diagonal(exponents)).char_poly())
    }
}

/// Sampled subgroup elements, or parameter values for a one-parameter family.
#[derive(Debug, Clone, PartialEq)]
pub enum CosetSamples<F> {
    Elements(Vec<Matrix<F>>),
    Params(Vec<Q>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefutationReason {
    CharPolyMismatch,
    InvariantFactorMismatch,
    EigenvalueOneFailure,
}

/// Strongest conjugacy invariant compared on every sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugacyLevel {
    /// Invariant factors over the coefficient field: full conjugacy.
    InvariantFactors,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CosetVerdict<F> {
    ConsistentUpToSamples { sampled: usize, level: ConjugacyLevel },
    Refuted { sample: usize, witness: Matrix<F>, reason: RefutationReason },
}

fn sample_elements<F: Field>(inst: &CosetInstance<F>, samples: &CosetSamples<F>) -> Result<Vec<Matrix<F>>, CosetError> {
    match (&inst.h, samples) {
        (Subgroup::OneParameter { exponents }, CosetSamples::Params(ts)) => ts
            .iter()
            .map(|t| {
                if Ring::is_zero(t) {
                    return Err(CosetError::ZeroParameter);
                }
                let tf = F::from_rational(t);
                let ti = tf.inv();
                let entry = |k: i64| {
                    let base = if k >= 0 { &tf } else { &ti };
                    (0..k.unsigned_abs()).fold(F::one(), |acc, _| acc.mul_ref(base))
                };
                Ok(Matrix::diagonal(exponents.iter().map(|&k| entry(k)).collect()))
            })
            .collect(),
        (_, CosetSamples::Elements(hs)) => {
            let d = inst.x.rows();
            if let Some(h) = hs.iter().find(|h| h.rows() != d) {
                return Err(CosetError::DimensionMismatch { expected: d, got: h.rows() });
            }
            Ok(hs.clone())
        }
        (Subgroup::Generators(_), CosetSamples::Params(_)) => Err(CosetError::SampleKind),
    }
}

/// Checks that x·h is conjugate to x for each sample h, and, when x is
/// unipotent, that h has eigenvalue 1. The first failure refutes xH ⊂ x^G.
pub fn coset_sample_check<F: Field>(
    inst: &CosetInstance<F>,
    samples: &CosetSamples<F>,
) -> Result<CosetVerdict<F>, CosetError> {
    let hs = sample_elements(inst, samples)?;
    let x = &inst.x;
    let cp = x.char_poly();
    let inv = invariant_factors(x);
    let unipotent_class = is_unipotent(x);
    for (k, h) in hs.iter().enumerate() {
        let xh = x.mul(h);
        let reason = if xh.char_poly() != cp {
            Some(RefutationReason::CharPolyMismatch)
        } else if invariant_factors(&xh) != inv {
            Some(RefutationReason::InvariantFactorMismatch)
        } else if unipotent_class && !has_eigenvalue_one(h) {
            Some(RefutationReason::EigenvalueOneFailure)
        } else {
            None
        };
        if let Some(reason) = reason {
            return Ok(CosetVerdict::Refuted { sample: k, witness: h.clone(), reason });
        }
    }
    Ok(CosetVerdict::ConsistentUpToSamples { sampled: hs.len(), level: ConjugacyLevel::InvariantFactors })
}

/// Images of all words of length ≤ `max_len` in the generators.
pub fn subgroup_words<F: Field>(h_gens: &[Matrix<F>], max_len: usize) -> Vec<(ReducedWord, Matrix<F>)> {
    let Some(first) = h_gens.first() else { return Vec::new() };
    let group = MatrixGroup::<F>::new(first.rows());
    let ev = Evaluator::new(&group, h_gens);
    let words = words_up_to(h_gens.len(), max_len);
    let mut out = Vec::with_capacity(words.len());
    let _: Option<()> = ev.eval_batch(&words, |_, w, m| {
        out.push((w.clone(), m.clone()));
        std::ops::ControlFlow::Continue(())
    });
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueOneAudit {
    pub words_checked: usize,
    /// A word whose image lacks eigenvalue 1; then no x has xH ⊂ U(d).
    pub violation: Option<ReducedWord>,
}

/// Looks for an element of H without eigenvalue 1 among short words.
pub fn eigenvalue_one_audit<F: Field>(h_gens: &[Matrix<F>], word_budget: usize) -> EigenvalueOneAudit {
    let Some(first) = h_gens.first() else {
        return EigenvalueOneAudit { words_checked: 0, violation: None };
    };
    let group = MatrixGroup::<F>::new(first.rows());
    let ev = Evaluator::new(&group, h_gens);
    let words = words_up_to(h_gens.len(), word_budget);
    let mut checked = 0;
    let violation = ev.eval_batch(&words, |_, w, m| {
        checked += 1;
        if has_eigenvalue_one(m) {
            std::ops::ControlFlow::Continue(())
        } else {
            std::ops::ControlFlow::Break(w.clone())
        }
    });
    EigenvalueOneAudit { words_checked: checked, violation }
}
