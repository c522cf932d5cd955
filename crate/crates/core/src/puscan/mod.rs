//! Primitive-unipotent scanning and simultaneous triangularization.
//!
//! A tuple is primitive-unipotent when every primitive word evaluates to a
//! unipotent matrix. The scanner hunts for a primitive word with a
//! non-unipotent image; the triangularizer builds a common invariant flag
//! when the generated group is unipotent.

use std::ops::ControlFlow;

use crate::exactalg::{common_kernel, kernel_basis, Field, Matrix, Poly, Ring, Subspace};
use crate::freegroup::{
    apply_automorphism, enumerate_primitives, words_up_to, Automorphism, Evaluator, FreeGroupError,
    NielsenMove, PrimitiveSet, ReducedWord, Sign,
};
use crate::group::MatrixGroup;
use crate::par::Exec;
use crate::spectra::{is_regular_unipotent, is_unipotent, is_unipotent_fast};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PuscanError {
    #[error("tuple is empty")]
    Empty,
    #[error("matrix {index} is {got}x{got}, expected {expected}x{expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("matrix {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("matrix {index} is not regular unipotent")]
    NotRegularUnipotent { index: usize },
    #[error("subspace dimension {k} outside 1..{d}")]
    BadDimension { k: usize, d: usize },
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
}

/// An n-tuple of invertible d×d matrices: a point of Hom(F_n, GL_d).
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationTuple<R> {
    mats: Vec<Matrix<R>>,
}

impl<R: Ring> RepresentationTuple<R> {
    pub fn new(mats: Vec<Matrix<R>>) -> Result<Self, PuscanError> {
        let d = mats.first().ok_or(PuscanError::Empty)?.rows();
        for (k, m) in mats.iter().enumerate() {
            if !m.is_square() || m.rows() != d {
                return Err(PuscanError::DimensionMismatch { index: k + 1, expected: d, got: m.rows() });
            }
            if m.det().unit_inverse().is_none() {
                return Err(PuscanError::NotInvertible { index: k + 1 });
            }
        }
        Ok(RepresentationTuple { mats })
    }

    pub fn rank(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn mats(&self) -> &[Matrix<R>] {
        &self.mats
    }

    pub fn group(&self) -> MatrixGroup<R> {
        MatrixGroup::new(self.dim())
    }

    /// Image of a word: x_k ↦ mats[k-1].
    pub fn eval(&self, w: &ReducedWord) -> Matrix<R> {
        let g = self.group();
        Evaluator::new(&g, &self.mats).eval(w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanVerdict<R> {
    /// A primitive word whose image is not unipotent.
    WitnessFound { word: ReducedWord, char_poly: Poly<R> },
    AllUnipotentUpToBudget,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport<R> {
    pub verdict: ScanVerdict<R>,
    /// Primitive words evaluated, in enumeration order, up to the witness.
    pub tested: usize,
    /// Primitive enumeration stopped at its budget.
    pub truncated: bool,
    /// Witness came from a Nielsen-modified tuple rather than the direct scan.
    pub via_extension: bool,
}

impl<R> ScanReport<R> {
    pub fn witness(&self) -> Option<&ReducedWord> {
        match &self.verdict {
            ScanVerdict::WitnessFound { word, .. } => Some(word),
            ScanVerdict::AllUnipotentUpToBudget => None,
        }
    }
}

const SCAN_CHUNK: usize = 2048;

/// Scans every primitive word of length ≤ `max_len`.
pub fn scan_primitives<R: Ring>(
    t: &RepresentationTuple<R>,
    max_len: usize,
    budget: usize,
    exec: Exec,
) -> Result<ScanReport<R>, PuscanError> {
    let p = enumerate_primitives(t.rank(), max_len, budget)?;
    Ok(scan_with(t, &p, exec))
}

/// Scan against a precomputed primitive set; the first witness in shortlex
/// order wins regardless of the execution mode.
pub fn scan_with<R: Ring>(t: &RepresentationTuple<R>, primitives: &PrimitiveSet, exec: Exec) -> ScanReport<R> {
    assert_eq!(primitives.rank, t.rank(), "primitive set rank differs from tuple rank");
    let group = t.group();
    let ev = Evaluator::new(&group, &t.mats);
    let hit = exec.find_map_first_chunk(&primitives.words, SCAN_CHUNK, |offset, chunk| {
        ev.eval_batch(chunk.iter().map(|p| &p.word), |i, w, m| {
            if is_unipotent_fast(m) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break((offset + i, w.clone(), m.char_poly()))
            }
        })
    });
    let truncated = primitives.truncated;
    match hit {
        Some((idx, word, char_poly)) => ScanReport {
            verdict: ScanVerdict::WitnessFound { word, char_poly },
            tested: idx + 1,
            truncated,
            via_extension: false,
        },
        None => ScanReport {
            verdict: ScanVerdict::AllUnipotentUpToBudget,
            tested: primitives.len(),
            truncated,
            via_extension: false,
        },
    }
}

/// Automorphisms x_i ↦ x_j^k·x_i and x_i ↦ x_j^k·x_i·x_j^{−k}, for i ≠ j and
/// 1 ≤ k ≤ `max_power`, as recorded move sequences.
pub fn modification_moves(rank: usize, max_power: usize) -> Vec<Automorphism> {
    let mut out = Vec::new();
    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            for k in 1..=max_power {
                let left = vec![NielsenMove::LeftMultiply { i: j, j: i, sign: Sign::Plus }; k];
                let mut conj = left.clone();
                conj.extend(std::iter::repeat_n(NielsenMove::RightMultiply { i: j, j: i, sign: Sign::Minus }, k));
                out.push(Automorphism::new(rank, left).expect("legal moves"));
                out.push(Automorphism::new(rank, conj).expect("legal moves"));
            }
        }
    }
    out
}

/// Direct scan, then, if it finds nothing, short scans of Nielsen-modified
/// tuples φ·t. A witness w on φ·t is reported as the primitive word φ(w),
/// which has the same image on t.
///
/// The extension is a search heuristic only; it reaches primitives longer
/// than `max_len` without enumerating them.
pub fn scan_extended<R: Ring>(
    t: &RepresentationTuple<R>,
    primitives: &PrimitiveSet,
    short: &PrimitiveSet,
    max_power: usize,
    exec: Exec,
) -> ScanReport<R> {
    let direct = scan_with(t, primitives, exec);
    if direct.witness().is_some() {
        return direct;
    }
    let group = t.group();
    let mut tested = direct.tested;
    for phi in modification_moves(t.rank(), max_power) {
        let moved = crate::freegroup::act_on_tuple(&phi, &t.mats, &group).expect("rank matches");
        let mt = RepresentationTuple { mats: moved };
        let r = scan_with(&mt, short, exec);
        if let ScanVerdict::WitnessFound { word, char_poly } = r.verdict {
            let original = apply_automorphism(&phi, &word).expect("rank matches");
            return ScanReport {
                verdict: ScanVerdict::WitnessFound { word: original, char_poly },
                tested: tested + r.tested,
                truncated: direct.truncated,
                via_extension: true,
            };
        }
        tested += r.tested;
    }
    ScanReport { tested, ..direct }
}

/// Basis change to a common flag: column k of `basis_change` is the k-th
/// flag vector, so P⁻¹·a·P is upper unitriangular for every generator a.
#[derive(Debug, Clone, PartialEq)]
pub struct Flag<F> {
    pub basis_change: Matrix<F>,
    /// Flag dimensions 1, 2, …, d.
    pub signature: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KolchinOutcome<F> {
    Flag(Flag<F>),
    /// No common fixed vector in the quotient by the stage-dimensional flag
    /// part; `witness` is a short word with non-unipotent image, if found.
    Failure { stage: usize, witness: Option<ReducedWord> },
}

/// Longest word tried when looking for a non-unipotent element after failure.
pub const KOLCHIN_WITNESS_LEN: usize = 4;

/// Builds a common flag stage by stage: at stage k, with V_k spanned by the
/// first k flag vectors, picks v ∉ V_k with (a − I)v ∈ V_k for all a.
pub fn kolchin_triangularize<F: Field>(t: &RepresentationTuple<F>) -> KolchinOutcome<F> {
    let d = t.dim();
    let ident = Matrix::<F>::identity(d);
    let shifted: Vec<Matrix<F>> = t.mats.iter().map(|a| a.sub(&ident)).collect();
    let mut flag = Subspace::<F>::zero(d);
    let mut columns: Vec<Vec<F>> = Vec::with_capacity(d);
    for stage in 0..d {
        // rows of `ann` cut out V_k
        let ann: Vec<Vec<F>> = if columns.is_empty() {
            (0..d).map(|i| (0..d).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
        } else {
            kernel_basis(&Matrix::from_rows(columns.clone()))
        };
        let annm = Matrix::from_rows(ann);
        let conditions: Vec<Matrix<F>> = shifted.iter().map(|s| annm.mul(s)).collect();
        let next = common_kernel(&conditions).into_iter().find(|v| !flag.contains(v));
        match next {
            Some(v) => {
                flag.insert(v.clone());
                columns.push(v);
            }
            None => return KolchinOutcome::Failure { stage, witness: non_unipotent_word(t, KOLCHIN_WITNESS_LEN) },
        }
    }
    let p = Matrix::from_fn(d, d, |i, j| columns[j][i].clone());
    let pi = p.inverse_field().expect("flag vectors are independent");
    debug_assert!(t.mats.iter().all(|a| pi.mul(a).mul(&p).is_upper_unitriangular()));
    KolchinOutcome::Flag(Flag { basis_change: p, signature: (1..=d).collect() })
}

/// Checks a flag against the tuple exactly.
pub fn verify_flag<F: Field>(t: &RepresentationTuple<F>, flag: &Flag<F>) -> bool {
    flag.basis_change.inverse_field().is_some_and(|pi| {
        t.mats.iter().all(|a| pi.mul(a).mul(&flag.basis_change).is_upper_unitriangular())
    })
}

/// First word of length ≤ `max_len` (shortlex) with a non-unipotent image.
pub fn non_unipotent_word<R: Ring>(t: &RepresentationTuple<R>, max_len: usize) -> Option<ReducedWord> {
    let group = t.group();
    let ev = Evaluator::new(&group, &t.mats);
    let words = words_up_to(t.rank(), max_len);
    ev.eval_batch(&words, |_, w, m| {
        if is_unipotent(m) { ControlFlow::Continue(()) } else { ControlFlow::Break(w.clone()) }
    })
}

/// ker((u − I)^k): for regular unipotent u, the unique u-invariant subspace
/// of dimension k.
pub fn regular_invariant_subspace<F: Field>(u: &Matrix<F>, k: usize) -> Result<Subspace<F>, PuscanError> {
    let d = u.rows();
    if !is_regular_unipotent(u) {
        return Err(PuscanError::NotRegularUnipotent { index: 1 });
    }
    if k == 0 || k >= d {
        return Err(PuscanError::BadDimension { k, d });
    }
    let n = u.sub(&Matrix::identity(d)).pow(k as u64);
    let s = Subspace::span(d, kernel_basis(&n));
    debug_assert_eq!(s.dim(), k);
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoodPosition {
    pub ok: bool,
    /// First (i, j, k) in lexicographic order, 1-based, with equal
    /// k-dimensional invariant subspaces.
    pub violation: Option<(usize, usize, usize)>,
}

/// Pairwise distinctness of the invariant subspace chains, k = 1..d−1.
pub fn good_position_check<F: Field>(t: &RepresentationTuple<F>) -> Result<GoodPosition, PuscanError> {
    let d = t.dim();
    let mut chains = Vec::with_capacity(t.rank());
    for (idx, u) in t.mats.iter().enumerate() {
        if !is_regular_unipotent(u) {
            return Err(PuscanError::NotRegularUnipotent { index: idx + 1 });
        }
        let chain: Vec<Subspace<F>> =
            (1..d).map(|k| regular_invariant_subspace(u, k).expect("checked regular")).collect();
        chains.push(chain);
    }
    for i in 0..t.rank() {
        for j in i + 1..t.rank() {
            for k in 1..d {
                if chains[i][k - 1] == chains[j][k - 1] {
                    return Ok(GoodPosition { ok: false, violation: Some((i + 1, j + 1, k)) });
                }
            }
        }
    }
    Ok(GoodPosition { ok: true, violation: None })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpan<F> {
    pub span: Subspace<F>,
    /// The dimension cap was reached before the span closed up.
    pub capped: bool,
}

/// Smallest subspace containing v and invariant under every generator.
///
/// Stops with `capped` set as soon as the span exceeds `cap` dimensions.
pub fn orbit_span<F: Field>(gens: &[Matrix<F>], v: &[F], cap: usize) -> OrbitSpan<F> {
    let mut span = Subspace::zero(v.len());
    let mut queue = Vec::new();
    if span.insert(v.to_vec()) {
        queue.push(v.to_vec());
    }
    while let Some(w) = queue.pop() {
        for g in gens {
            let gw = g.mul_vec(&w);
            if span.insert(gw.clone()) {
                if span.dim() > cap {
                    return OrbitSpan { span, capped: true };
                }
                queue.push(gw);
            }
        }
    }
    debug_assert!(gens.iter().all(|g| span.is_invariant_under(g)));
    OrbitSpan { span, capped: false }
}
