//! Exact elimination over fields: ranks, kernels, and subspaces kept in
//! reduced row echelon form.

use super::gaussian::GaussRational;
use super::laurent::Laurent;
use super::matrix::Matrix;
use super::scalar::{Field, Ring, Q};
use super::AlgebraError;

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let s = a[(r, c)].inv();
        a.scale_row(r, &s);
        for i in 0..a.rows() {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                a.sub_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space {v : m·v = 0}, one vector per free column.
///
/// Works for rectangular input; the square case is the usual kernel.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[(row, free)].clone();
        }
        out.push(v);
    }
    out
}

/// Common null space of several same-width matrices (stacked system).
pub fn common_kernel<F: Field>(ms: &[Matrix<F>]) -> Vec<Vec<F>> {
    let Some(first) = ms.first() else {
        return Vec::new();
    };
    let rows: Vec<Vec<F>> = ms.iter().flat_map(Matrix::row_vecs).collect();
    if rows.is_empty() {
        return kernel_basis(&Matrix::zeros(0, first.cols()));
    }
    kernel_basis(&Matrix::from_rows(rows))
}

/// Subspace of F^n held as a reduced row echelon basis.
///
/// Every basis row has a leading one at its pivot and zeros at every other
/// row's pivot, so the representation is canonical: two subspaces are equal
/// iff their stored bases are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Subspace::zero(ambient);
        for i in 0..ambient {
            let mut e = vec![F::zero(); ambient];
            e[i] = F::one();
            s.insert(e);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Ring::is_zero)
    }

    /// Inserts a vector; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v;
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let s = w[p].inv();
        for x in w.iter_mut() {
            *x = x.mul_ref(&s);
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(r));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// True when m maps the subspace into itself.
    pub fn is_invariant_under(&self, m: &Matrix<F>) -> bool {
        self.rows.iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        // v = Σ a_i u_i = Σ b_j w_j  ⇔  (a, -b) in ker [U^T | -W^T]
        let n = self.ambient;
        let k1 = self.dim();
        let k2 = other.dim();
        if k1 == 0 || k2 == 0 {
            return Subspace::zero(n);
        }
        let m = Matrix::from_fn(n, k1 + k2, |i, j| {
            if j < k1 {
                self.rows[j][i].clone()
            } else {
                -other.rows[j - k1][i].clone()
            }
        });
        let ker = kernel_basis(&m);
        Subspace::span(
            n,
            ker.into_iter().map(|c| {
                (0..n)
                    .map(|i| {
                        (0..k1).fold(F::zero(), |acc, j| acc.add_ref(&c[j].mul_ref(&self.rows[j][i])))
                    })
                    .collect()
            }),
        )
    }
}

/// Generic rank of a Laurent matrix: the maximum rank over evaluations at
/// the given nonzero rational samples.
///
/// A nonzero r×r minor is a Laurent polynomial whose exponent spread is at
/// most the sum over its rows of that row's spread; it vanishes at no more
/// than that many nonzero points. Once the sample count exceeds
/// [`laurent_rank_sample_bound`], the maximum equals the generic rank.
pub fn laurent_rank(m: &Matrix<Laurent>, samples: &[Q]) -> Result<usize, AlgebraError> {
    let mut best = 0;
    for t in samples {
        if Ring::is_zero(t) {
            return Err(AlgebraError::EvaluationAtZero);
        }
        let tv = GaussRational::real(t.clone());
        let ev = m.map(|e| e.eval(&tv));
        best = best.max(rank(&ev));
        if best == m.rows().min(m.cols()) {
            break;
        }
    }
    Ok(best)
}

/// Number of distinct nonzero sample points that guarantees
/// [`laurent_rank`] returns the generic rank.
pub fn laurent_rank_sample_bound(m: &Matrix<Laurent>) -> usize {
    let spread: i64 = (0..m.rows())
        .map(|i| {
            let ranges: Vec<(i64, i64)> =
                m.row(i).iter().filter_map(Laurent::exponent_range).collect();
            match (ranges.iter().map(|r| r.0).min(), ranges.iter().map(|r| r.1).max()) {
                (Some(lo), Some(hi)) => hi - lo,
                _ => 0,
            }
        })
        .sum();
    spread as usize + 1
}
