use std::fmt;
use std::ops::{Index, IndexMut};

use super::poly::Poly;
use super::scalar::{Field, Ring};

/// Dense row-major matrix over an exact ring.
///
/// Most of the toolkit works with square matrices; rectangular shapes show up
/// inside elimination (stacked systems, vectors as columns).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        Matrix::scalar(d, R::one())
    }

    pub fn scalar(d: usize, c: R) -> Self {
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: Vec<R>) -> Self {
        let d = entries.len();
        let mut m = Matrix::zeros(d, d);
        for (i, c) in entries.into_iter().enumerate() {
            m[(i, i)] = c;
        }
        m
    }

    /// Builds from row vectors; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn column(v: Vec<R>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Matrix::<R>::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    /// Repeated squaring; `pow(0)` is the identity.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.add_ref(&self[(i, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Upper triangular with ones on the diagonal.
    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_one() && (0..i).all(|j| self[(i, j)].is_zero())
            })
    }

    /// Square submatrix on the given row/column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Characteristic polynomial det(xI - m) by the Faddeev–LeVerrier recurrence.
    ///
    /// Only divisions by the integers 1..d occur, so this runs over every ring
    /// in the toolkit, including Laurent polynomials.
    pub fn char_poly(&self) -> Poly<R> {
        assert!(self.is_square(), "char_poly of non-square matrix");
        let d = self.rows;
        let mut coeffs = vec![R::zero(); d + 1];
        coeffs[d] = R::one();
        let mut m = Matrix::zeros(d, d);
        for k in 1..=d {
            m = self.mul(&m).add(&Matrix::scalar(d, coeffs[d - k + 1].clone()));
            let t = self.mul(&m).trace();
            coeffs[d - k] = -t.div_int(k as i64);
        }
        Poly::new(coeffs)
    }

    pub fn det(&self) -> R {
        let c0 = self.char_poly().coeff(0);
        if self.rows.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    /// Inverse when the determinant is a unit of the ring.
    ///
    /// Uses Cayley–Hamilton: m⁻¹ = -(m^{d-1} + c_{d-1} m^{d-2} + … + c_1) / c_0.
    pub fn inverse(&self) -> Option<Self> {
        let p = self.char_poly();
        let c0_inv = p.coeff(0).unit_inverse()?;
        let d = self.rows;
        // Horner on the quotient (p(x) - c0) / x
        let mut acc = Matrix::zeros(d, d);
        for c in p.coeffs().iter().skip(1).rev() {
            acc = acc.mul(self).add(&Matrix::scalar(d, c.clone()));
        }
        Some(acc.scale(&-c0_inv))
    }

    /// Conjugate `p · self · p⁻¹`.
    pub fn conjugate_by(&self, p: &Self, p_inv: &Self) -> Self {
        p.mul(self).mul(p_inv)
    }
}

impl<F: Field> Matrix<F> {
    /// Gauss–Jordan inverse over a field; `None` if singular.
    pub fn inverse_field(&self) -> Option<Self> {
        assert!(self.is_square());
        let d = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(d);
        for c in 0..d {
            let p = (c..d).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let s = a[(c, c)].inv();
            a.scale_row(c, &s);
            inv.scale_row(c, &s);
            for r in 0..d {
                if r != c && !a[(r, c)].is_zero() {
                    let f = a[(r, c)].clone();
                    a.sub_row_multiple(r, c, &f);
                    inv.sub_row_multiple(r, c, &f);
                }
            }
        }
        Some(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, s: &F) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = self.data[idx].mul_ref(s);
        }
    }

    /// row[target] -= f · row[source]
    pub(crate) fn sub_row_multiple(&mut self, target: usize, source: usize, f: &F) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = s.mul_ref(f);
            let idx = target * self.cols + j;
            self.data[idx] = self.data[idx].sub_ref(&v);
        }
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
