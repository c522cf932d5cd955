//! Exact constructions of three explicit examples with self-checks: a
//! unipotent coset in SL_3, a semisimple element whose coset by a torus
//! stays in one conjugacy class, and an infinite group of affine isometries
//! of ℝ⁴ in which every primitive element has finite order.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::cosets::{CosetError, CosetInstance, Subgroup};
use crate::exactalg::{monomial_diagonal, q, to_laurent, Laurent, Matrix, Poly, Ring, Q};
use crate::freegroup::{enumerate_primitives, evaluate, Evaluator, FreeGroupError, ReducedWord};
use crate::group::MatrixGroup;
use crate::par::Exec;
use crate::spectra::{has_eigenvalue_one, is_unipotent};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PaperError {
    #[error("parameter t must be nonzero")]
    ZeroParameter,
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("linear part is not orthogonal")]
    NotOrthogonal,
    #[error("translation has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("primitive {word} has infinite-order image")]
    InfiniteOrderPrimitive { word: String },
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
}

fn check(ok: bool, what: &str) -> Result<(), PaperError> {
    if ok {
        Ok(())
    } else {
        Err(PaperError::SelfCheck(what.to_string()))
    }
}

fn rational(rows: [[i64; 3]; 3]) -> Matrix<Q> {
    Matrix::from_fn(3, 3, |i, j| q(rows[i][j], 1))
}

/// The torus parameter: an indeterminate or a nonzero rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Symbolic,
    At(Q),
}

pub const TORUS_EXPONENTS: [i64; 3] = [1, 0, -1];

pub fn larsen_u() -> Matrix<Q> {
    rational([[0, 1, 3], [0, 3, 8], [-1, 0, 0]])
}

/// diag(t, 1, t⁻¹).
pub fn torus_at(t: &Q) -> Result<Matrix<Q>, PaperError> {
    if Ring::is_zero(t) {
        return Err(PaperError::ZeroParameter);
    }
    Ok(Matrix::diagonal(vec![t.clone(), Q::one(), t.recip()]))
}

/// det, tr and tr of the square of x·diag(t,1,t⁻¹) over the Laurent ring.
fn family_invariants(x: &Matrix<Q>) -> [Laurent; 3] {
    let xh = to_laurent(x).mul(&monomial_diagonal(&TORUS_EXPONENTS));
    [xh.det(), xh.trace(), xh.mul(&xh).trace()]
}

/// The coset u·{diag(t,1,t⁻¹)}, symbolic or at one parameter value.
///
/// Self-checks det(uh) = 1, tr(uh) = tr((uh)²) = 3, and unipotence of uh
/// (over the Laurent ring for the symbolic family).
pub fn build_larsen(t: &Param) -> Result<CosetInstance<Q>, PaperError> {
    let u = larsen_u();
    match t {
        Param::Symbolic => {
            let [det, tr, tr2] = family_invariants(&u);
            check(det == Laurent::one(), "det(uh) = 1")?;
            check(tr == Laurent::from(q(3, 1)) && tr2 == Laurent::from(q(3, 1)), "tr(uh) = tr((uh)²) = 3")?;
            let inst = CosetInstance::new(u, Subgroup::OneParameter { exponents: TORUS_EXPONENTS.to_vec() })?;
            let cp = inst.family_char_poly().expect("one-parameter family");
            check(cp == Poly::linear_power(&Laurent::one(), 3), "char_poly(uh) = (x−1)³")?;
            Ok(inst)
        }
        Param::At(v) => {
            let h = torus_at(v)?;
            let uh = u.mul(&h);
            check(uh.det().is_one(), "det(uh) = 1")?;
            check(uh.trace() == q(3, 1) && uh.mul(&uh).trace() == q(3, 1), "tr(uh) = tr((uh)²) = 3")?;
            check(is_unipotent(&uh), "uh unipotent")?;
            Ok(CosetInstance::new(u, Subgroup::Generators(vec![h]))?)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemisimplePair {
    pub a: Matrix<Q>,
    pub exponents: [i64; 3],
    pub coset: CosetInstance<Q>,
    /// Characteristic polynomial of a·b(t); its coefficients are t-free.
    pub family_char_poly: Poly<Laurent>,
}

pub fn semisimple_a() -> Matrix<Q> {
    Matrix::from_rows(vec![
        vec![q(0, 1), q(-1, 1), q(2, 1)],
        vec![q(0, 1), q(-4, 1), q(15, 2)],
        vec![q(2, 1), q(0, 1), q(0, 1)],
    ])
}

/// The element a with b(t) = diag(t, 1, t⁻¹).
///
/// Self-checks tr(a) = −4, det(a) = 1, eigenvalue 1, squarefree minimal
/// polynomial, and t-freeness of det(ab), tr(ab), tr((ab)²).
pub fn build_semisimple_pair() -> Result<SemisimplePair, PaperError> {
    let a = semisimple_a();
    check(a.trace() == q(-4, 1), "tr(a) = −4")?;
    check(a.det().is_one(), "det(a) = 1")?;
    check(has_eigenvalue_one(&a), "a has eigenvalue 1")?;
    check(a.char_poly().is_squarefree(), "a semisimple")?;
    let invariants = family_invariants(&a);
    check(invariants.iter().all(Laurent::is_constant), "det(ab), tr(ab), tr((ab)²) independent of t")?;
    let coset = CosetInstance::new(a.clone(), Subgroup::OneParameter { exponents: TORUS_EXPONENTS.to_vec() })?;
    let family_char_poly = coset.family_char_poly().expect("one-parameter family");
    check(family_char_poly.coeffs().iter().all(Laurent::is_constant), "char_poly(ab) independent of t")?;
    Ok(SemisimplePair { a, exponents: TORUS_EXPONENTS, coset, family_char_poly })
}

/// v ↦ linear·v + translation with rational orthogonal `linear`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineIsometry {
    pub linear: Matrix<Q>,
    pub translation: Vec<Q>,
}

impl AffineIsometry {
    pub fn new(linear: Matrix<Q>, translation: Vec<Q>) -> Result<Self, PaperError> {
        let d = linear.rows();
        if translation.len() != d {
            return Err(PaperError::DimensionMismatch { expected: d, got: translation.len() });
        }
        if !linear.transpose().mul(&linear).is_identity() {
            return Err(PaperError::NotOrthogonal);
        }
        Ok(AffineIsometry { linear, translation })
    }

    /// Rotation by `linear` about `center`: v ↦ linear·(v − c) + c.
    pub fn rotation_about(linear: Matrix<Q>, center: &[Q]) -> Result<Self, PaperError> {
        let lc = linear.mul_vec(center);
        let translation = center.iter().zip(&lc).map(|(c, l)| c.clone() - l.clone()).collect();
        AffineIsometry::new(linear, translation)
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    /// (d+1)×(d+1) matrix [[linear, translation], [0, 1]].
    pub fn homogeneous(&self) -> Matrix<Q> {
        let d = self.dim();
        Matrix::from_fn(d + 1, d + 1, |i, j| match (i < d, j < d) {
            (true, true) => self.linear[(i, j)].clone(),
            (true, false) => self.translation[i].clone(),
            (false, false) => Q::one(),
            (false, true) => Q::zero(),
        })
    }

    /// Inverse of [`homogeneous`](Self::homogeneous); the last row must be (0, …, 0, 1).
    pub fn from_homogeneous(m: &Matrix<Q>) -> Self {
        let d = m.rows() - 1;
        debug_assert!(m.row(d)[..d].iter().all(Ring::is_zero) && m[(d, d)].is_one());
        AffineIsometry {
            linear: Matrix::from_fn(d, d, |i, j| m[(i, j)].clone()),
            translation: (0..d).map(|i| m[(i, d)].clone()).collect(),
        }
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }
}

/// Left multiplication by i and j on ℍ = ℚ⁴ in the basis (1, i, j, k).
pub fn quaternion_units() -> [Matrix<Q>; 2] {
    let m = |rows: [[i64; 4]; 4]| Matrix::from_fn(4, 4, |r, c| q(rows[r][c], 1));
    [
        m([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
        m([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct BurnsideExample {
    /// ḡ_1, ḡ_2: rotation by i about p_1 and by j about p_2.
    pub generators: [AffineIsometry; 2],
    pub centers: [Vec<Q>; 2],
    /// The linear parts, enumerated exactly.
    pub projection: Vec<Matrix<Q>>,
    /// ḡ_1²·ḡ_2², a nontrivial translation.
    pub translation: AffineIsometry,
}

impl BurnsideExample {
    pub fn homogeneous_generators(&self) -> Vec<Matrix<Q>> {
        self.generators.iter().map(AffineIsometry::homogeneous).collect()
    }

    pub fn eval(&self, w: &ReducedWord) -> AffineIsometry {
        let hs = self.homogeneous_generators();
        AffineIsometry::from_homogeneous(&evaluate(&MatrixGroup::<Q>::new(5), &hs, w))
    }
}

/// Closure of a finite matrix group under multiplication by generators.
fn generated_group(gens: &[Matrix<Q>], cap: usize) -> Vec<Matrix<Q>> {
    let id = Matrix::identity(gens[0].rows());
    let mut seen: HashSet<Matrix<Q>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() && out.len() <= cap {
        for g in gens {
            let next = g.mul(&out[head]);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        head += 1;
    }
    out
}

/// Smallest k ≥ 1 with m^k = I, searched up to `max`.
pub fn exact_order(m: &Matrix<Q>, max: u64) -> Option<u64> {
    let mut p = m.clone();
    for k in 1..=max {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

pub const TRANSLATION_POWER_CHECK: u64 = 100;

/// Two rotations of ℝ⁴ with linear parts i, j ∈ Q₈ about p_1 = 0 and
/// p_2 = e_1. Self-checks |Q₈| = 8, order 4 of ḡ_1, and that ḡ_1²ḡ_2² is the
/// translation by 2(p_1 − p_2) with no power up to 100 trivial.
pub fn build_burnside() -> Result<BurnsideExample, PaperError> {
    let [li, lj] = quaternion_units();
    let p1 = vec![Q::zero(); 4];
    let mut p2 = vec![Q::zero(); 4];
    p2[0] = Q::one();
    let g1 = AffineIsometry::rotation_about(li.clone(), &p1)?;
    let g2 = AffineIsometry::rotation_about(lj.clone(), &p2)?;
    let projection = generated_group(&[li, lj], 64);
    check(projection.len() == 8, "projection has order 8")?;
    // Q₈ acts freely on S³: only the identity has eigenvalue 1
    check(projection.iter().filter(|m| has_eigenvalue_one(m)).count() == 1, "free action on S³")?;

    let (h1, h2) = (g1.homogeneous(), g2.homogeneous());
    check(exact_order(&h1, 16) == Some(4), "ḡ_1 has order 4")?;
    let t = AffineIsometry::from_homogeneous(&h1.mul(&h1).mul(&h2).mul(&h2));
    let expected: Vec<Q> = p1.iter().zip(&p2).map(|(a, b)| (a.clone() - b.clone()) * q(2, 1)).collect();
    check(t.is_translation() && t.translation == expected, "ḡ_1²ḡ_2² = translation by 2(p_1 − p_2)")?;
    check(t.translation.iter().any(|c| !c.is_zero()), "nonzero translation")?;
    check(exact_order(&t.homogeneous(), TRANSLATION_POWER_CHECK).is_none(), "translation of infinite order")?;
    Ok(BurnsideExample { generators: [g1, g2], centers: [p1, p2], projection, translation: t })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BurnsideAudit {
    pub max_len: usize,
    pub primitives_checked: usize,
    /// order → number of primitives with an image of that order.
    pub orders: BTreeMap<u64, usize>,
    pub first_word_orders: Vec<(ReducedWord, u64)>,
}

/// Primitive elements per parallel task in [`burnside_primitive_audit`].
const AUDIT_CHUNK: usize = 256;

/// Order of a primitive image: the linear part must lack eigenvalue 1, so
/// the isometry has a unique fixed point and its order equals that of the
/// linear part; this is then confirmed by an exact power.
fn primitive_order(ex: &BurnsideExample, img: &Matrix<Q>) -> Option<u64> {
    let aff = AffineIsometry::from_homogeneous(img);
    if has_eigenvalue_one(&aff.linear) {
        return None;
    }
    let k = exact_order(&aff.linear, ex.projection.len() as u64)?;
    img.pow(k).is_identity().then_some(k)
}

/// Checks every primitive of F_2 up to `max_len` maps to a finite-order
/// element and histograms the orders. An infinite-order image is an error.
pub fn burnside_primitive_audit(
    ex: &BurnsideExample,
    max_len: usize,
    exec: Exec,
) -> Result<BurnsideAudit, PaperError> {
    let prims = enumerate_primitives(2, max_len, usize::MAX)?;
    let words: Vec<&ReducedWord> = prims.iter_words().collect();
    let hs = ex.homogeneous_generators();
    let group = MatrixGroup::<Q>::new(5);
    let chunks: Vec<&[&ReducedWord]> = words.chunks(AUDIT_CHUNK).collect();
    let results: Vec<Result<Vec<u64>, PaperError>> = exec.map(&chunks, |chunk| {
        let ev = Evaluator::new(&group, &hs);
        chunk
            .iter()
            .map(|w| {
                primitive_order(ex, &ev.eval(w))
                    .ok_or_else(|| PaperError::InfiniteOrderPrimitive { word: w.to_string() })
            })
            .collect()
    });
    let mut orders = BTreeMap::new();
    let mut all = Vec::with_capacity(words.len());
    for r in results {
        all.extend(r?);
    }
    for &k in &all {
        *orders.entry(k).or_insert(0) += 1;
    }
    let first_word_orders = words.iter().zip(&all).take(8).map(|(w, &k)| ((*w).clone(), k)).collect();
    Ok(BurnsideAudit { max_len, primitives_checked: words.len(), orders, first_word_orders })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn record<T>(name: &str, r: Result<T, PaperError>, detail: impl FnOnce(&T) -> String) -> ExampleCheck {
    match r {
        Ok(v) => ExampleCheck { name: name.to_string(), passed: true, detail: detail(&v) },
        Err(e) => ExampleCheck { name: name.to_string(), passed: false, detail: e.to_string() },
    }
}

/// Runs every builder self-check and the primitive audit up to `audit_len`.
pub fn verify_all(audit_len: usize, exec: Exec) -> Vec<ExampleCheck> {
    let mut out = vec![record("larsen_symbolic", build_larsen(&Param::Symbolic), |_| {
        "char_poly(u·h(t)) = (x−1)³ over Q[t, t⁻¹]".to_string()
    })];
    for t in [q(2, 1), q(-1, 1), q(7, 3)] {
        out.push(record(&format!("larsen_t={t}"), build_larsen(&Param::At(t)), |_| "u·h(t) unipotent".into()));
    }
    out.push(record("semisimple_pair", build_semisimple_pair(), |p| {
        format!("char_poly(a·b(t)) = {}", p.family_char_poly)
    }));
    let burnside = build_burnside();
    out.push(record("burnside_construction", burnside.clone(), |b| {
        format!("projection order {}, ḡ_1²ḡ_2² translation {:?}", b.projection.len(), b.translation.translation.iter().map(ToString::to_string).collect::<Vec<_>>())
    }));
    if let Ok(b) = burnside {
        out.push(record("burnside_primitive_audit", burnside_primitive_audit(&b, audit_len, exec), |a| {
            format!("{} primitives up to length {}, orders {:?}", a.primitives_checked, a.max_len, a.orders)
        }));
    }
    out
}

#[cfg(test)]
mod tests;
