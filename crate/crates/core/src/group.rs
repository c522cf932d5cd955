//! Group contracts used by the tuple action and word evaluation.

use std::marker::PhantomData;

use crate::exactalg::{Matrix, Ring};

/// A group given by its operations on an element type.
///
/// Implementors are responsible for the group axioms; the tuple action and
/// word evaluation rely on them without checking.
pub trait Group {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `a^e` for a signed exponent.
    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }
}

/// Invertible d×d matrices over an exact ring.
///
/// Inversion panics on a non-unit determinant; callers validate tuples
/// before acting on them.
pub struct MatrixGroup<R> {
    pub dim: usize,
    _ring: PhantomData<fn() -> R>,
}

impl<R> MatrixGroup<R> {
    pub fn new(dim: usize) -> Self {
        MatrixGroup { dim, _ring: PhantomData }
    }
}

impl<R> Clone for MatrixGroup<R> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<R> Copy for MatrixGroup<R> {}

impl<R: Ring> Group for MatrixGroup<R> {
    type Elem = Matrix<R>;

    fn identity(&self) -> Matrix<R> {
        Matrix::identity(self.dim)
    }
    fn mul(&self, a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
        a.mul(b)
    }
    fn inv(&self, a: &Matrix<R>) -> Matrix<R> {
        a.inverse().expect("matrix group element with non-unit determinant")
    }
}
