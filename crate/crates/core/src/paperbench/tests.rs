use proptest::prelude::*;

use super::*;
use crate::freegroup::words_up_to;

#[test]
fn larsen_family_is_unipotent() {
    let inst = build_larsen(&Param::Symbolic).unwrap();
    assert_eq!(inst.family_char_poly().unwrap(), Poly::linear_power(&Laurent::one(), 3));
    for t in [q(2, 1), q(-1, 1), q(1, 5)] {
        let inst = build_larsen(&Param::At(t.clone())).unwrap();
        let Subgroup::Generators(h) = &inst.h else { panic!() };
        assert!(is_unipotent(&larsen_u().mul(&h[0])));
    }
    assert_eq!(build_larsen(&Param::At(Q::zero())), Err(PaperError::ZeroParameter));
}

#[test]
fn larsen_product_det_trace_by_hand() {
    // oracle: entries of u·diag(t,1,1/t) written out at t = 3
    let t = q(3, 1);
    let uh = larsen_u().mul(&torus_at(&t).unwrap());
    let expected = Matrix::from_rows(vec![
        vec![q(0, 1), q(1, 1), q(1, 1)],
        vec![q(0, 1), q(3, 1), q(8, 3)],
        vec![q(-3, 1), q(0, 1), q(0, 1)],
    ]);
    assert_eq!(uh, expected);
    assert_eq!(uh.trace(), q(3, 1));
    assert!(uh.det().is_one());
}

#[test]
fn semisimple_pair_checks() {
    let p = build_semisimple_pair().unwrap();
    assert_eq!(p.a.trace(), q(-4, 1));
    assert!(p.a.det().is_one());
    assert!(crate::exactalg::minimal_poly(&p.a).is_squarefree());
    let cp = p.a.char_poly();
    assert!(cp.gcd(&cp.derivative()).degree() == Some(0));
    // family poly evaluated anywhere equals char_poly(a)
    let family: Vec<Q> = p.family_char_poly.coeffs().iter().map(|c| c.constant_value().unwrap().re).collect();
    assert_eq!(family, cp.coeffs());
    for t in [q(2, 1), q(-3, 7)] {
        let ab = p.a.mul(&torus_at(&t).unwrap());
        assert_eq!(ab.char_poly(), cp);
    }
}

#[test]
fn affine_isometry_validation() {
    let bad = Matrix::diagonal(vec![q(2, 1), q(1, 1)]);
    assert_eq!(AffineIsometry::new(bad, vec![Q::zero(); 2]), Err(PaperError::NotOrthogonal));
    assert!(matches!(
        AffineIsometry::new(Matrix::identity(2), vec![Q::zero()]),
        Err(PaperError::DimensionMismatch { .. })
    ));
    let [li, _] = quaternion_units();
    let r = AffineIsometry::rotation_about(li, &[q(1, 2), q(0, 1), q(3, 1), q(-1, 1)]).unwrap();
    assert_eq!(AffineIsometry::from_homogeneous(&r.homogeneous()), r);
}

#[test]
fn quaternion_matrices_satisfy_q8_relations() {
    let [i, j] = quaternion_units();
    let minus = Matrix::scalar(4, q(-1, 1));
    assert_eq!(i.mul(&i), minus);
    assert_eq!(j.mul(&j), minus);
    let k = i.mul(&j);
    assert_eq!(k.mul(&k), minus);
    assert_eq!(j.mul(&i), k.scale(&q(-1, 1)));
    // i·1 = i: first column is e_2
    assert_eq!(i.col_vec(0), vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
}

#[test]
fn burnside_construction() {
    let b = build_burnside().unwrap();
    assert_eq!(b.projection.len(), 8);
    assert_eq!(exact_order(&b.generators[0].homogeneous(), 100), Some(4));
    assert_eq!(b.translation.translation, vec![q(-2, 1), Q::zero(), Q::zero(), Q::zero()]);
    // oracle: compose v ↦ −v + 2p_1 with v ↦ −v + 2p_2 on a sample point
    let v = vec![q(3, 1), q(-1, 2), q(5, 1), q(7, 3)];
    let sq = |c: &[Q], v: &[Q]| -> Vec<Q> { v.iter().zip(c).map(|(x, p)| q(2, 1) * p.clone() - x.clone()).collect() };
    let by_hand = sq(&b.centers[0], &sq(&b.centers[1], &v));
    let hv: Vec<Q> = v.iter().cloned().chain([Q::one()]).collect();
    let img = b.translation.homogeneous().mul_vec(&hv);
    assert_eq!(&img[..4], &by_hand[..]);
    assert_eq!(b.generators[1].homogeneous().mul_vec(&[Q::one(), Q::zero(), Q::zero(), Q::zero(), Q::one()])[..4],
        b.centers[1][..]);
}

#[test]
fn burnside_audit_small_words() {
    let b = build_burnside().unwrap();
    let x1 = ReducedWord::parse("x1", 2).unwrap();
    assert_eq!(primitive_order(&b, &b.eval(&x1).homogeneous()), Some(4));
    let x1x2 = ReducedWord::parse("x1*x2", 2).unwrap();
    let k = primitive_order(&b, &b.eval(&x1x2).homogeneous()).unwrap();
    assert!(8 % k == 0 && b.eval(&x1x2).homogeneous().pow(k).is_identity());
    // non-primitive x1²x2² is the translation
    let w = ReducedWord::parse("x1^2*x2^2", 2).unwrap();
    assert!(primitive_order(&b, &b.eval(&w).homogeneous()).is_none());
}

#[test]
fn burnside_audit_up_to_length_8() {
    let b = build_burnside().unwrap();
    let seq = burnside_primitive_audit(&b, 8, Exec::Sequential).unwrap();
    assert_eq!(seq.primitives_checked, 1508);
    assert_eq!(seq.orders.values().sum::<usize>(), 1508);
    assert!(seq.orders.keys().all(|k| 8 % k == 0));
    assert_eq!(seq, burnside_primitive_audit(&b, 8, Exec::Parallel).unwrap());
}

#[test]
fn verify_all_passes() {
    let checks = verify_all(4, Exec::default());
    assert!(checks.len() >= 6);
    for c in &checks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_a_homomorphism(k in 0usize..200) {
        let b = build_burnside().unwrap();
        let words = words_up_to(2, 5);
        let w = &words[k * 7 % words.len()];
        let img = b.eval(w);
        let lin = crate::freegroup::evaluate(&MatrixGroup::<Q>::new(4), &quaternion_units(), w);
        prop_assert_eq!(&img.linear, &lin);
        prop_assert!(b.projection.contains(&lin));
        prop_assert!(img.linear.transpose().mul(&img.linear).is_identity());
    }
}
