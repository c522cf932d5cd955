use super::matrix::Matrix;
use super::poly::Poly;
use super::scalar::Field;

/// Invariant factors of xI − m over the coefficient field.
///
/// Computed from the Smith normal form of the characteristic matrix over
/// F[x]. The returned list holds the non-unit diagonal entries, monic and in
/// divisibility order; their product is the characteristic polynomial. Two
/// matrices over F are conjugate over F iff their lists coincide.
pub fn invariant_factors<F: Field>(m: &Matrix<F>) -> Vec<Poly<F>> {
    assert!(m.is_square(), "invariant factors of non-square matrix");
    let d = m.rows();
    let mut a: Vec<Vec<Poly<F>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let c = -m[(i, j)].clone();
                    if i == j {
                        Poly::new(vec![c, F::one()])
                    } else {
                        Poly::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    let diag = smith_diagonal(&mut a);
    diag.into_iter().filter(|p| p.degree().is_some_and(|k| k > 0)).collect()
}

fn deg<F: Field>(p: &Poly<F>) -> usize {
    p.degree().unwrap_or(usize::MAX)
}

/// Diagonalizes a square polynomial matrix in place, returning monic diagonal
/// entries d_1 | d_2 | … (zero entries stay zero and sort last).
fn smith_diagonal<F: Field>(a: &mut [Vec<Poly<F>>]) -> Vec<Poly<F>> {
    let n = a.len();
    for t in 0..n {
        loop {
            // smallest-degree nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| deg(&a[i][j]) < deg(&a[bi][bj]))
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                #[allow(clippy::needless_range_loop)]
                for j in t..n {
                    let sub = q.mul(&a[t][j]);
                    a[i][j] = a[i][j].sub(&sub);
                }
                debug_assert_eq!(a[i][t], r);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = q.mul(&row[t]);
                    row[j] = row[j].sub(&sub);
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[t][t].divides(&a[i][j]));
            match bad {
                Some((i, _)) => {
                    #[allow(clippy::needless_range_loop)]
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] = a[t][j].add(&v);
                    }
                }
                None => break,
            }
        }
    }
    finish(a)
}

fn finish<F: Field>(a: &[Vec<Poly<F>>]) -> Vec<Poly<F>> {
    let mut diag: Vec<Poly<F>> = (0..a.len()).map(|i| a[i][i].monic()).collect();
    // zero entries (singular characteristic matrices never occur for xI − m,
    // but keep the ordering total)
    diag.sort_by_key(|p| p.degree().map_or(usize::MAX, |k| k));
    diag
}

/// Minimal polynomial: the last invariant factor.
pub fn minimal_poly<F: Field>(m: &Matrix<F>) -> Poly<F> {
    invariant_factors(m).pop().unwrap_or_else(|| Poly::one())
}

/// Conjugacy over the coefficient field.
pub fn conjugate_over_field<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    a.rows() == b.rows() && invariant_factors(a) == invariant_factors(b)
}

/// Conjugacy test valid over an algebraic closure for semisimple input:
/// equal characteristic polynomials and squarefree minimal polynomials.
///
/// Returns `None` when either matrix fails to be semisimple, since the test
/// says nothing in that case.
pub fn conjugate_semisimple<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<bool> {
    if !minimal_poly(a).is_squarefree() || !minimal_poly(b).is_squarefree() {
        return None;
    }
    Some(a.rows() == b.rows() && a.char_poly() == b.char_poly())
}
