use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactalg::{q, qi, Matrix, Q};

fn mq(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

fn jordan(d: usize) -> Matrix<Q> {
    Matrix::from_fn(d, d, |i, j| if i == j || j == i + 1 { qi(1) } else { qi(0) })
}

fn brute_order<F: Field>(m: &Matrix<F>, limit: u64) -> Option<u64> {
    let mut p = m.clone();
    for k in 1..=limit {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

fn phi_oracle(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

#[test]
fn unipotent_examples() {
    assert!(is_unipotent(&Matrix::<Q>::identity(3)));
    assert!(!is_unipotent(&Matrix::diagonal(vec![qi(2), q(1, 2)])));
    assert!(is_unipotent(&jordan(4)));
    let u = mq(&[&[0, 1, 3], &[0, 3, 8], &[-1, 0, 0]]);
    let h = Matrix::diagonal(vec![qi(2), qi(1), q(1, 2)]);
    assert!(is_unipotent(&u.mul(&h)));
}

#[test]
fn laurent_family_verdicts() {
    use crate::exactalg::{monomial_diagonal, parse_laurent, to_laurent};
    let u = to_laurent(&mq(&[&[0, 1, 3], &[0, 3, 8], &[-1, 0, 0]]));
    let h = monomial_diagonal(&[1, 0, -1]);
    assert_eq!(laurent_unipotence(&u.mul(&h)), Unipotence::Unipotent);
    assert_eq!(laurent_unipotence(&h), Unipotence::ParameterDependent);
    let c = Matrix::<Laurent>::diagonal(vec![parse_laurent("2").unwrap(), parse_laurent("1/2").unwrap()]);
    assert_eq!(laurent_unipotence(&c), Unipotence::NotUnipotent);
}

#[test]
fn regular_unipotent_examples() {
    assert!(is_regular_unipotent(&jordan(3)));
    assert!(!is_regular_unipotent(&Matrix::<Q>::identity(2)));
    let block = mq(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert!(!is_regular_unipotent(&block));
    assert!(is_regular_unipotent(&Matrix::<Q>::identity(1)));
}

#[test]
fn eigenvalue_one_examples() {
    let h = Matrix::diagonal(vec![qi(3), qi(1), q(1, 3)]);
    assert!(has_eigenvalue_one(&h));
    assert!(!has_eigenvalue_one(&Matrix::diagonal(vec![qi(2), qi(3)])));
    assert!(has_eigenvalue_one(&jordan(5)));
}

#[test]
fn cyclotomic_exponent_matches_oracle() {
    assert_eq!(cyclotomic_exponent(3, RingKind::Rational).unwrap(), 12);
    assert_eq!(cyclotomic_exponent(2, RingKind::Rational).unwrap(), 12);
    assert_eq!(cyclotomic_exponent(2, RingKind::Gaussian).unwrap(), 120);
    assert_eq!(cyclotomic_exponent(1, RingKind::Rational).unwrap(), 2);
    assert!(cyclotomic_exponent(2, RingKind::Laurent).is_err());
    for b in 1..=12u64 {
        // oracle: naive totient over a generous window
        let set: Vec<u64> = (1..=4 * b * b).filter(|&n| phi_oracle(n) <= b).collect();
        let l = set.iter().fold(1u64, |l, &n| l / gcd(l, n) * n);
        assert_eq!(exponent_for_bound(b), Some(l), "B = {b}");
    }
}

#[test]
fn order_examples() {
    let minus = Matrix::<Q>::scalar(2, qi(-1));
    assert_eq!(classify_order(&minus).unwrap(), OrderVerdict::Finite { order: 2 });
    let hyp = mq(&[&[2, 1], &[1, 1]]);
    assert_eq!(
        classify_order(&hyp).unwrap(),
        OrderVerdict::Infinite { reason: InfiniteReason::PowerNotUnipotent }
    );
    assert!(!hyp.pow(12).is_identity());
    assert_eq!(
        classify_order(&jordan(2)).unwrap(),
        OrderVerdict::Infinite { reason: InfiniteReason::NontrivialUnipotentPower }
    );
    // (x−1)(x²+x+1)-style blocks: order 3 rotation in SL_2(Z)
    let r3 = mq(&[&[0, -1], &[1, -1]]);
    assert_eq!(classify_order(&r3).unwrap(), OrderVerdict::Finite { order: 3 });
    // integral trace-bounded but still hyperbolic
    let mild = mq(&[&[1, 1], &[1, 0]]);
    assert!(!classify_order(&mild).unwrap().is_finite());
    assert_eq!(classify_order(&mq(&[&[1, 0], &[0, 0]])), Err(SpectraError::Singular));
    // i·I over Q(i) has order 4
    let ii = Matrix::<GaussRational>::scalar(2, GaussRational::i());
    assert_eq!(classify_order(&ii).unwrap(), OrderVerdict::Finite { order: 4 });
}

fn random_signed_permutation(d: usize, rng: &mut ChaCha8Rng) -> Matrix<Q> {
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let signs: Vec<i64> = (0..d).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    Matrix::from_fn(d, d, |i, j| if perm[i] == j { qi(signs[i]) } else { qi(0) })
}

#[test]
fn order_agrees_with_brute_force_on_signed_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..60 {
        let d = rng.random_range(1..=5);
        let m = random_signed_permutation(d, &mut rng);
        let OrderVerdict::Finite { order } = classify_order(&m).unwrap() else {
            panic!("signed permutation classified infinite: {m}");
        };
        assert_eq!(Some(order), brute_order(&m, 1000));
        assert_eq!(cyclotomic_exponent(d, RingKind::Rational).unwrap() % order, 0);
    }
}

#[test]
fn gaussian_monomial_orders() {
    let units = [GaussRational::from(qi(1)), GaussRational::i(), GaussRational::from(qi(-1)), -GaussRational::i()];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let d = rng.random_range(1..=4);
        let p = random_signed_permutation(d, &mut rng);
        let scal: Vec<GaussRational> = (0..d).map(|_| units[rng.random_range(0..4)].clone()).collect();
        let m = Matrix::from_fn(d, d, |i, j| {
            if p[(i, j)].is_zero() { GaussRational::zero() } else { scal[i].clone() }
        });
        let OrderVerdict::Finite { order } = classify_order(&m).unwrap() else { panic!("{m}") };
        assert_eq!(Some(order), brute_order(&m, 2000));
    }
}

#[test]
fn contraction_diagonal_example() {
    let g = DMatrix::from_row_slice(2, 2, &[10.0, 0.0, 0.0, 0.1]);
    let fixed = ContractionSearch { radii: vec![0.3], ..Default::default() };
    let out = contraction_certificate(&g, &fixed).unwrap();
    let c = out.certificate().expect("diag(10, 0.1) contracts near e1");
    assert!((c.center[0] - 1.0).abs() < 1e-9 && c.center[1].abs() < 1e-9);
    assert_eq!(c.r1, 0.3);
    assert!(c.r2 <= 0.05, "r2 = {}", c.r2);
    // oracle: the projective map contracts tan-angles by exactly 1/100
    let exact = (0.3f64.tan() / 100.0).atan();
    assert!(c.r2 >= exact);
}

#[test]
fn contraction_not_found_for_isometries_and_parabolics() {
    let s = ContractionSearch::default();
    let id = DMatrix::<f64>::identity(3, 3);
    assert!(contraction_certificate(&id, &s).unwrap().certificate().is_none());
    let j = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
    assert!(contraction_certificate(&j, &s).unwrap().certificate().is_none());
    // exhaustive radius grid for the parabolic
    let grid = ContractionSearch { radii: (1..=150).map(|k| k as f64 * 0.01).collect(), ..s.clone() };
    assert!(contraction_certificate(&j, &grid).unwrap().certificate().is_none());
    let rot = DMatrix::from_row_slice(2, 2, &[0.6, -0.8, 0.8, 0.6]);
    assert!(contraction_certificate(&rot, &s).unwrap().certificate().is_none());
    let singular = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
    assert_eq!(contraction_certificate(&singular, &s), Err(SpectraError::Singular));
}

#[test]
fn contraction_in_dimension_three() {
    let g = DMatrix::from_row_slice(3, 3, &[5.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 2.0, 0.2]);
    let out = contraction_certificate(&g, &ContractionSearch::default()).unwrap();
    let c = out.certificate().expect("dominant real eigenvalue contracts");
    assert!(c.r2 < c.r1 && c.margin >= 0.0);
    assert!(c.sample_count > 100);
}

#[test]
fn projective_distance_is_on_lines() {
    let a = nalgebra::DVector::from_vec(vec![1.0, 0.0]);
    let b = nalgebra::DVector::from_vec(vec![-3.0, 0.0]);
    assert!(projective_distance(&a, &b) < 1e-15);
    let c = nalgebra::DVector::from_vec(vec![1.0, 1.0]);
    assert!((projective_distance(&a, &c) - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
}

fn small_rational(d: usize, rng: &mut ChaCha8Rng) -> Matrix<Q> {
    let v: Vec<Q> = (0..d * d).map(|_| q(rng.random_range(-4..=4), rng.random_range(1..=3))).collect();
    Matrix::from_fn(d, d, |i, j| v[d * i + j].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unipotence_routes_agree(seed in any::<u64>(), d in 1usize..=4, conj in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = small_rational(d, &mut rng);
        if conj {
            // a conjugated unipotent, so true verdicts are exercised too
            let p = small_rational(d, &mut rng);
            if let Some(pi) = p.inverse_field() {
                let u = Matrix::from_fn(d, d, |i, j| if i == j { qi(1) } else if j > i { m[(i, j)].clone() } else { qi(0) });
                m = u.conjugate_by(&p, &pi);
            }
        }
        let (a, b) = unipotence_routes(&m);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn finite_verdicts_hold_exactly(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = small_rational(d, &mut rng);
        if m.det().is_zero() {
            return Ok(());
        }
        let l = cyclotomic_exponent(d, RingKind::Rational).unwrap();
        match classify_order(&m).unwrap() {
            OrderVerdict::Finite { order } => {
                prop_assert_eq!(l % order, 0);
                prop_assert!(m.pow(order).is_identity());
            }
            OrderVerdict::Infinite { .. } => prop_assert!(!m.pow(l).is_identity()),
        }
    }

    #[test]
    fn certificates_are_sound(seed in any::<u64>(), d in 2usize..=4, unip in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = small_rational(d, &mut rng);
        if unip {
            let p = small_rational(d, &mut rng);
            if let Some(pi) = p.inverse_field() {
                m = jordan(d).conjugate_by(&p, &pi);
            }
        }
        if m.det().is_zero() {
            return Ok(());
        }
        let out = contraction_certificate(&to_float(&m), &ContractionSearch { seed, ..Default::default() }).unwrap();
        prop_assert!(corroborate(&m, &out));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_unipotence_agrees(seed in any::<u64>(), d in 1usize..=6, conj in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = if conj {
            let p = small_rational(d, &mut rng);
            match p.inverse_field() {
                Some(pi) => jordan(d).conjugate_by(&p, &pi),
                None => jordan(d),
            }
        } else {
            small_rational(d, &mut rng)
        };
        prop_assert_eq!(is_unipotent_fast(&m), is_unipotent(&m));
    }
}
