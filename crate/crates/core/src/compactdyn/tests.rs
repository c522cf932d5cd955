use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::freegroup::Sign;

#[test]
fn haar_sample_basics() {
    assert!(haar_sample(0, 1, Exec::Sequential).is_empty());
    let a = haar_sample(70_000, 9, Exec::Sequential);
    assert_eq!(a, haar_sample(70_000, 9, Exec::Parallel));
    assert_ne!(a[..10], haar_sample(10, 10, Exec::Sequential)[..]);
    assert!(a.iter().all(|p| (p.norm() - 1.0).abs() < 1e-12));
}

#[test]
fn haar_trace_law_by_direct_integration() {
    // oracle: CDF as the midpoint integral of √(4−s²)/(2π)
    let steps = 200_000;
    let h = 4.0 / steps as f64;
    let mut acc = 0.0;
    for k in 0..steps {
        let s = -2.0 + (k as f64 + 0.5) * h;
        acc += (4.0 - s * s).sqrt() / (2.0 * std::f64::consts::PI) * h;
        let x = -2.0 + (k + 1) as f64 * h;
        if k % 20_000 == 19_999 {
            assert!((acc - haar_trace_cdf(x)).abs() < 1e-6, "{x}");
        }
    }
    assert!((haar_trace_cdf(2.0) - 1.0).abs() < 1e-15 && haar_trace_cdf(-2.0).abs() < 1e-15);
}

#[test]
fn haar_sample_moments_and_trace_law() {
    let s = haar_sample(200_000, 3, Exec::default());
    let mean_w = s.iter().map(|p| p.w).sum::<f64>() / s.len() as f64;
    // σ(w) = 1/2, so 3σ/√n ≈ 0.0034
    assert!(mean_w.abs() < 0.0034, "{mean_w}");
    let traces: Vec<f64> = s.iter().map(UnitQuaternion::trace).collect();
    assert!(ks_statistic(&traces, haar_trace_cdf) < 0.005);
}

#[test]
fn ks_statistic_detects_wrong_law() {
    let uniform: Vec<f64> = (0..10_000).map(|k| -2.0 + 4.0 * (k as f64 + 0.5) / 10_000.0).collect();
    assert!(ks_statistic(&uniform, haar_trace_cdf) > 0.05);
    assert!(ks_statistic(&uniform, |s| (s + 2.0) / 4.0) < 1e-4);
}

fn walk(steps: usize, seed: u64) -> WalkReport {
    nielsen_walk(&haar_tuple(3, 77), &WalkOptions { steps, burn_in: 0, seed, target: None }).unwrap()
}

#[test]
fn walk_basics() {
    let r = walk(0, 1);
    assert_eq!(r.trace_samples.len(), 1);
    assert_eq!(r.trace_samples[0], haar_tuple(3, 77)[0].trace());
    let (a, b) = (walk(500, 4), walk(500, 4));
    assert_eq!(a, b);
    assert_ne!(a.trace_samples, walk(500, 5).trace_samples);
    assert!(a.traces.iter().flatten().all(|t| t.abs() <= 2.0 + 1e-9));
    assert!(matches!(
        nielsen_walk(&haar_tuple(2, 1), &WalkOptions { steps: 1, burn_in: 0, seed: 0, target: None }),
        Err(DynamicsError::RankTooSmall { .. })
    ));
}

#[test]
fn walk_target_distance_tracks_minimum() {
    let start = haar_tuple(3, 5);
    let r = nielsen_walk(&start, &WalkOptions { steps: 200, burn_in: 0, seed: 2, target: Some(start.clone()) })
        .unwrap();
    assert_eq!(r.min_target_distance, Some(0.0));
}

#[test]
fn walks_over_seeds_agree_across_modes() {
    let t = haar_tuple(3, 8);
    let seq = nielsen_walks(&t, 300, 10, &[1, 2, 3], Exec::Sequential).unwrap();
    let par = nielsen_walks(&t, 300, 10, &[1, 2, 3], Exec::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq.iter().map(|r| r.seed).collect::<Vec<_>>(), [1, 2, 3]);
}

#[test]
fn walk_trace_law_converges() {
    let t = haar_tuple(3, 21);
    let ks = |steps| {
        let r = nielsen_walks(&t, steps, 1_000, &[11, 12, 13], Exec::default()).unwrap();
        r.iter().map(|w| w.ks_distance).sum::<f64>() / 3.0
    };
    let (short, long) = (ks(2_000), ks(100_000));
    assert!(long < short, "{short} → {long}");
    assert!(long < 0.05, "{long}");
}

#[test]
fn minimality_trivial_targets() {
    let start = haar_tuple(3, 31);
    let r = minimality_probe(&start, &start, 0.1, 10).unwrap();
    assert_eq!((r.distance, r.moves.len(), r.hit), (0.0, 0, true));

    let mut target = start.clone();
    NielsenMove::Invert { j: 2 }.apply_in_place(&Su2, &mut target);
    let r = minimality_probe(&start, &target, 1e-12, 1).unwrap();
    assert_eq!(r.moves, vec![NielsenMove::Invert { j: 2 }]);
    assert_eq!(r.distance, 0.0);

    let mut two = start.clone();
    NielsenMove::LeftMultiply { i: 1, j: 3, sign: Sign::Minus }.apply_in_place(&Su2, &mut two);
    let r = minimality_probe(&start, &two, 1e-9, 1).unwrap();
    assert!(r.hit && r.moves.len() == 1);
}

#[test]
fn minimality_reaches_random_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut hits = 0;
    for _ in 0..10 {
        let start: Vec<_> = (0..3).map(|_| UnitQuaternion::random(&mut rng)).collect();
        let target: Vec<_> = (0..3).map(|_| UnitQuaternion::random(&mut rng)).collect();
        let r = minimality_probe(&start, &target, 0.3, 5000).unwrap();
        assert!(r.moves.len() <= 5000);
        let mut replayed = start.clone();
        for m in &r.moves {
            m.apply_in_place(&Su2, &mut replayed);
        }
        assert!((tuple_distance(&replayed, &target) - r.distance).abs() < 1e-12);
        hits += usize::from(r.hit);
    }
    assert!(hits >= 9, "{hits}/10");
}

#[test]
fn minimality_respects_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let start: Vec<_> = (0..3).map(|_| UnitQuaternion::random(&mut rng)).collect();
    let target: Vec<_> = (0..3).map(|_| UnitQuaternion::random(&mut rng)).collect();
    for budget in [0, 1, 3, 7] {
        assert!(minimality_probe(&start, &target, 0.01, budget).unwrap().moves.len() <= budget);
    }
    assert!(minimality_probe(&start, &target[..2], 0.3, 10).is_err());
}

#[test]
fn identity_pair_covers_only_the_identity_ball() {
    let net = Net::standard();
    let eps = 0.5;
    let c = pair_density_probe_with(UnitQuaternion::IDENTITY, UnitQuaternion::IDENTITY, 4, eps, &net, Exec::default());
    let expected = net.points.iter().filter(|p| p.distance(&UnitQuaternion::IDENTITY) <= eps).count();
    assert_eq!(c.covered, expected);
    assert!(c.fraction < 0.05);
}

#[test]
fn commuting_pair_stays_near_a_torus() {
    let net = Net::standard();
    let eps = 0.2;
    let a = UnitQuaternion::from_axis_angle([0.0, 0.0, 1.0], 1.0);
    let b = UnitQuaternion::from_axis_angle([0.0, 0.0, 1.0], 2.0_f64.sqrt());
    let c = pair_density_probe_with(a, b, 10, eps, &net, Exec::default());
    // the circle {cos θ + k sin θ} is at angle arccos √(w² + z²)
    let near_torus = net.points.iter().filter(|p| (p.w.hypot(p.z)).min(1.0).acos() <= eps + 1e-12).count();
    assert!(c.covered <= near_torus);
    assert!(c.covered > near_torus / 2, "{} of {near_torus}", c.covered);
    assert!(c.fraction < 0.5);
}

#[test]
fn generic_pair_covers_the_net() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (a, b) = (UnitQuaternion::random(&mut rng), UnitQuaternion::random(&mut rng));
    let seq = pair_density_probe(a, b, 14, 0.4, Exec::Sequential);
    assert_eq!(seq.fraction, 1.0);
    assert!(seq.complete_at.is_some());
    assert_eq!(seq, pair_density_probe(a, b, 14, 0.4, Exec::Parallel));
}

#[test]
fn grid_lookup_matches_brute_force() {
    let net = Net::haar(500, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (a, b) = (UnitQuaternion::random(&mut rng), UnitQuaternion::random(&mut rng));
    for eps in [0.05, 0.3, 1.0, 3.0] {
        let c = pair_density_probe_with(a, b, 3, eps, &net, Exec::Sequential);
        let mut words = vec![UnitQuaternion::IDENTITY];
        let mut frontier = vec![(UnitQuaternion::IDENTITY, usize::MAX)];
        let letters = [a, a.conj(), b, b.conj()];
        for _ in 0..3 {
            let mut next = Vec::new();
            for &(v, last) in &frontier {
                for (li, g) in letters.iter().enumerate() {
                    if li != last ^ 1 {
                        next.push((v.mul(g), li));
                    }
                }
            }
            words.extend(next.iter().map(|x| x.0));
            frontier = next;
        }
        let brute = net.points.iter().filter(|p| words.iter().any(|w| p.distance(w) <= eps)).count();
        if c.complete_at.is_none() {
            assert_eq!(c.covered, brute, "eps {eps}");
            assert_eq!(c.words_evaluated, words.len());
        } else {
            assert_eq!(brute, net.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn quaternion_product_is_associative_and_unit(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = std::array::from_fn(|_| UnitQuaternion::random(&mut rng));
        let (l, r) = (a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(l.distance(&r) < 1e-12);
        prop_assert!((l.norm() - 1.0).abs() < 1e-12);
        prop_assert!(a.mul(&a.conj()).distance(&UnitQuaternion::IDENTITY) < 1e-7);
        // bi-invariance of the metric
        prop_assert!((c.mul(&a).distance(&c.mul(&b)) - a.distance(&b)).abs() < 1e-9);
    }

    #[test]
    fn move_then_inverse_restores(seed in any::<u64>(), k in 0usize..27) {
        let t = haar_tuple(3, seed);
        let m = all_moves(3)[k];
        let mut u = t.clone();
        m.apply_in_place(&Su2, &mut u);
        m.inverse().apply_in_place(&Su2, &mut u);
        prop_assert!(tuple_distance(&t, &u) < 1e-9);
    }
}
