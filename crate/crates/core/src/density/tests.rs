use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactalg::{q, qi, Ring, Q};

fn mq(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

fn sl2z_pair() -> Vec<Matrix<Q>> {
    vec![mq(&[&[1, 1], &[0, 1]]), mq(&[&[1, 0], &[1, 1]])]
}

/// Random element of SL_d(Q) as a product of elementary matrices.
fn random_sl(d: usize, rng: &mut ChaCha8Rng) -> Matrix<Q> {
    let mut m = Matrix::<Q>::identity(d);
    for _ in 0..3 * d {
        let i = rng.random_range(0..d);
        let j = (i + rng.random_range(1..d)) % d;
        let c = q(rng.random_range(-3..=3), rng.random_range(1..=2));
        let e = Matrix::from_fn(d, d, |a, b| if a == b { qi(1) } else if (a, b) == (i, j) { c.clone() } else { qi(0) });
        m = m.mul(&e);
    }
    m
}

/// Oracle: conjugate each basis element directly and read coordinates by
/// expanding in the basis with an independent solve.
fn adjoint_oracle(g: &Matrix<Q>) -> Matrix<Q> {
    let d = g.rows();
    let n = sl_basis_len(d);
    let gi = g.inverse_field().unwrap();
    let basis: Vec<Matrix<Q>> = (0..n).map(|k| sl_basis_element(d, k)).collect();
    // B: flattened basis as columns (d² × n), solve B c = vec(gXg⁻¹)
    let bmat = Matrix::from_fn(d * d, n, |r, c| basis[c].entries()[r].clone());
    let bt = bmat.transpose();
    let gram_inv = bt.mul(&bmat).inverse_field().unwrap();
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|x| {
            let y = g.mul(x).mul(&gi);
            gram_inv.mul(&bt).mul_vec(y.entries())
        })
        .collect();
    Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
}

#[test]
fn adjoint_examples() {
    let id = adjoint(&Matrix::<Q>::identity(2)).unwrap();
    assert!(id.matrix.is_identity());
    let h = Matrix::diagonal(vec![qi(2), q(1, 2)]);
    let a = adjoint(&h).unwrap().matrix;
    // basis order (E12, E21, H)
    assert_eq!(a, Matrix::diagonal(vec![qi(4), q(1, 4), qi(1)]));
    assert_eq!(a, adjoint_oracle(&h));
    assert!(matches!(adjoint(&Matrix::diagonal(vec![qi(2), qi(1)])), Err(DensityError::NotSpecialLinear { .. })));
}

#[test]
fn sl2z_pair_is_dense() {
    let gens = sl2z_pair();
    let c = certify_zariski_density(&gens, 6).unwrap();
    assert_eq!(c.verdict, DensityVerdict::Dense);
    assert_eq!(c.span_dim, 9);
    let w = c.witness.clone().unwrap();
    let g = MatrixGroup::<Q>::new(2);
    assert_eq!(crate::freegroup::evaluate(&g, &gens, &w), mq(&[&[2, 1], &[1, 1]]));
    assert_eq!(c.witness_reason, Some(InfiniteReason::PowerNotUnipotent));
    assert!(verify_dense(&gens, &c));
}

#[test]
fn commuting_diagonals_not_dense() {
    let gens = vec![Matrix::diagonal(vec![qi(2), q(1, 2)]), Matrix::diagonal(vec![qi(3), q(1, 3)])];
    let c = certify_zariski_density(&gens, 6).unwrap();
    assert_eq!(c.verdict, DensityVerdict::NotDense);
    // oracle: Ad(diag(a,1/a)) = diag(a², a⁻², 1); the algebra is spanned by
    // diag(a^{2k}, a^{−2k}, 1), which has dimension 3
    assert_eq!(c.stable_algebra_dim, Some(3));
    let id = certify_zariski_density(&[Matrix::<Q>::identity(3)], 4).unwrap();
    assert_eq!(id.verdict, DensityVerdict::NotDense);
    assert_eq!(id.stable_algebra_dim, Some(1));
}

#[test]
fn finite_irreducible_group_is_not_certified_dense() {
    // binary tetrahedral group in SL_2(Q(i)): Ad image A_4 is irreducible on
    // sl_2, so the span is full, yet every element has finite order
    use crate::exactalg::GaussRational as G;
    let i = G::i();
    let one = G::one();
    let z = G::zero();
    let a = Matrix::from_rows(vec![vec![i.clone(), z.clone()], vec![z, -i.clone()]]);
    let half = |x: G| x * G::from(q(1, 2));
    let w = Matrix::from_rows(vec![
        vec![half(one.clone() + i.clone()), half(one.clone() + i.clone())],
        vec![half(i.clone() - one.clone()), half(one - i)],
    ]);
    let c = certify_zariski_density(&[a, w], 6).unwrap();
    assert_eq!(c.span_dim, 9);
    assert_eq!(c.verdict, DensityVerdict::Inconclusive);
    assert!(c.witness.is_none());
}

#[test]
fn quaternion_group_adjoint_is_commutative() {
    use crate::exactalg::GaussRational as G;
    let i = G::i();
    let z = G::zero();
    let a = Matrix::from_rows(vec![vec![i.clone(), z.clone()], vec![z.clone(), -i]]);
    let b = Matrix::from_rows(vec![vec![z.clone(), G::one()], vec![-G::one(), z]]);
    let c = certify_zariski_density(&[a, b], 5).unwrap();
    assert_eq!(c.verdict, DensityVerdict::NotDense);
    // Ad(Q8) is a Klein four-group of sign matrices, spanning the 3-dim diagonal algebra
    assert_eq!(c.stable_algebra_dim, Some(3));
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let c = certify_zariski_density(&sl2z_pair(), 1).unwrap();
    assert_eq!(c.verdict, DensityVerdict::Inconclusive);
    assert!(!c.stabilized);
}

#[test]
fn redundancy_examples() {
    let [a, b] = <[Matrix<Q>; 2]>::try_from(sl2z_pair()).unwrap();
    let id = Matrix::<Q>::identity(2);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let r = redundancy_scan(&[a.clone(), b.clone(), id.clone()], 6, exec).unwrap();
        assert!(r.contains(&vec![1, 2]));
        assert!(!r.contains(&vec![1, 3]));
        let c = mq(&[&[2, 1], &[1, 1]]);
        let r = redundancy_scan(&[a.clone(), b.clone(), c], 6, exec).unwrap();
        assert!(r.contains(&vec![1, 2]));
        assert!(redundancy_scan(&[id.clone(), id.clone(), id.clone()], 6, exec).unwrap().is_empty());
    }
}

#[test]
fn not_dense_span_is_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let p = random_sl(3, &mut rng);
    let pi = p.inverse_field().unwrap();
    // block upper triangular: reducible, never dense
    let gens: Vec<Matrix<Q>> = [mq(&[&[1, 2, 1], &[0, 1, 0], &[0, 3, 1]]), mq(&[&[2, 0, 1], &[0, 1, 0], &[1, 0, 1]])]
        .iter()
        .map(|g| {
            let d = g.det();
            assert!(d.is_one(), "test matrix det {d}");
            g.conjugate_by(&p, &pi)
        })
        .collect();
    let c = certify_zariski_density(&gens, 8).unwrap();
    assert_eq!(c.verdict, DensityVerdict::NotDense);
    let g = MatrixGroup::<Q>::new(3);
    let ev = Evaluator::new(&g, &gens);
    let span = Subspace::span(c.full_dim, c.spanning_words.iter().map(|w| flatten(&adjoint_matrix(&ev.eval(w)))));
    assert_eq!(span.dim(), c.stable_algebra_dim.unwrap());
    for b in span.basis() {
        let bm = Matrix::from_fn(8, 8, |i, j| b[8 * i + j].clone());
        for gen in &gens {
            assert!(span.contains(&flatten(&adjoint_matrix(gen).mul(&bm))));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adjoint_is_multiplicative(seed in any::<u64>(), d in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_sl(d, &mut rng);
        let h = random_sl(d, &mut rng);
        prop_assert_eq!(adjoint_matrix(&g.mul(&h)), adjoint_matrix(&g).mul(&adjoint_matrix(&h)));
        prop_assert_eq!(adjoint_matrix(&g), adjoint_oracle(&g));
    }

    #[test]
    fn verdicts_conjugation_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_sl(2, &mut rng);
        let pi = p.inverse_field().unwrap();
        for gens in [sl2z_pair(), vec![Matrix::diagonal(vec![qi(2), q(1, 2)]), Matrix::diagonal(vec![qi(3), q(1, 3)])]] {
            let conj: Vec<Matrix<Q>> = gens.iter().map(|g| g.conjugate_by(&p, &pi)).collect();
            let a = certify_zariski_density(&gens, 6).unwrap();
            let b = certify_zariski_density(&conj, 6).unwrap();
            prop_assert_eq!(a.verdict, b.verdict);
            prop_assert_eq!(a.span_dim, b.span_dim);
        }
    }

    #[test]
    fn adding_generators_never_loses_density(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens = sl2z_pair();
        gens.push(random_sl(2, &mut rng));
        let c = certify_zariski_density(&gens, 6).unwrap();
        prop_assert_ne!(c.verdict, DensityVerdict::NotDense);
        prop_assert_eq!(c.span_dim, 9);
    }
}
