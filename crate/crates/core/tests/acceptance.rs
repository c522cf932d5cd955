//! Acceptance criteria 1–10: one PASS/FAIL line each, with the pinned
//! tolerance and time budget. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use autfn::compactdyn::{
    haar_sample, haar_trace_cdf, haar_tuple, ks_statistic, minimality_probe, nielsen_walks, UnitQuaternion,
};
use autfn::cosets::{monomial_type_check, vanishing_partial_sum};
use autfn::density::{certify_zariski_density, DensityVerdict};
use autfn::exactalg::{monomial_diagonal, q, qi, to_laurent, Laurent, Matrix, Poly, Ring, Q};
use autfn::freegroup::{enumerate_primitives, evaluate};
use autfn::group::MatrixGroup;
use autfn::paperbench::{
    build_burnside, build_larsen, build_semisimple_pair, burnside_primitive_audit, exact_order, larsen_u,
    semisimple_a, torus_at, Param, TORUS_EXPONENTS, TRANSLATION_POWER_CHECK,
};
use autfn::par::Exec;
use autfn::puscan::{kolchin_triangularize, scan_with, verify_flag, KolchinOutcome, RepresentationTuple};
use autfn::spectra::{
    classify_order, contraction_certificate, corroborate, has_eigenvalue_one, is_regular_unipotent, is_unipotent,
    to_float, ContractionSearch, OrderVerdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (u8, &'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn mq(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

fn random_invertible(d: usize, rng: &mut ChaCha8Rng) -> Matrix<Q> {
    loop {
        let v: Vec<Q> = (0..d * d).map(|_| q(rng.random_range(-3..=3), rng.random_range(1..=2))).collect();
        let m = Matrix::from_fn(d, d, |i, j| v[d * i + j].clone());
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Upper unitriangular; with `regular`, the superdiagonal is nonzero.
fn random_unitriangular(d: usize, regular: bool, rng: &mut ChaCha8Rng) -> Matrix<Q> {
    let v: Vec<i64> = (0..d * d)
        .map(|k| {
            let (i, j) = (k / d, k % d);
            if regular && j == i + 1 {
                [-2, -1, 1, 2][rng.random_range(0..4)]
            } else {
                rng.random_range(-2..=2)
            }
        })
        .collect();
    Matrix::from_fn(d, d, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => qi(1),
        std::cmp::Ordering::Less => qi(v[d * i + j]),
        std::cmp::Ordering::Greater => qi(0),
    })
}

fn conjugate(m: &Matrix<Q>, p: &Matrix<Q>) -> Matrix<Q> {
    p.mul(m).mul(&p.inverse_field().expect("invertible"))
}

fn c1_larsen() -> Check {
    let inst = build_larsen(&Param::Symbolic).map_err(|e| e.to_string())?;
    let cp = inst.family_char_poly().ok_or("no family")?;
    ensure(cp == Poly::linear_power(&Laurent::one(), 3), format!("char_poly = {cp}"))?;
    let uh = to_laurent(&larsen_u()).mul(&monomial_diagonal(&TORUS_EXPONENTS));
    let three = Laurent::from(qi(3));
    ensure(uh.det() == Laurent::one(), "det(uh) ≠ 1")?;
    ensure(uh.trace() == three && uh.mul(&uh).trace() == three, "tr(uh) or tr((uh)²) ≠ 3")?;
    for t in [qi(2), qi(3), qi(5), qi(-1), q(7, 2)] {
        ensure(is_unipotent(&larsen_u().mul(&torus_at(&t).unwrap())), format!("uh not unipotent at t = {t}"))?;
        build_larsen(&Param::At(t)).map_err(|e| e.to_string())?;
    }
    Ok("char_poly(u·h(t)) = (x−1)³; unipotent at t ∈ {2,3,5,−1,7/2}".into())
}

fn c2_semisimple() -> Check {
    let p = build_semisimple_pair().map_err(|e| e.to_string())?;
    let a = semisimple_a();
    ensure(a.trace() == qi(-4) && a.det().is_one() && has_eigenvalue_one(&a), "tr, det or eigenvalue 1")?;
    let ab = to_laurent(&a).mul(&monomial_diagonal(&p.exponents));
    ensure(
        [ab.det(), ab.trace(), ab.mul(&ab).trace()].iter().all(Laurent::is_constant),
        "det(ab), tr(ab), tr((ab)²) depend on t",
    )?;
    let minpoly = autfn::exactalg::minimal_poly(&a);
    ensure(minpoly.is_squarefree(), "minimal polynomial not squarefree")?;
    Ok(format!("char_poly(ab) = {}; minimal polynomial squarefree", p.family_char_poly))
}

fn c3_density() -> Check {
    let pair = [mq(&[&[1, 1], &[0, 1]]), mq(&[&[1, 0], &[1, 1]])];
    let diag = [Matrix::diagonal(vec![qi(2), q(1, 2)]), Matrix::diagonal(vec![qi(3), q(1, 3)])];
    let group = MatrixGroup::<Q>::new(2);
    let (mut dense_dim, mut not_dense_dim) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..=10 {
        // trial 0 is unconjugated
        let p = if trial == 0 { Matrix::identity(2) } else { random_invertible(2, &mut rng) };
        let g: Vec<_> = pair.iter().map(|m| conjugate(m, &p)).collect();
        let c = certify_zariski_density(&g, 6).map_err(|e| e.to_string())?;
        ensure(c.verdict == DensityVerdict::Dense && c.span_dim == 9, format!("trial {trial}: {:?} dim {}", c.verdict, c.span_dim))?;
        let w = c.witness.as_ref().ok_or("no witness")?;
        ensure(!evaluate(&group, &g, w).pow(12).is_identity(), format!("witness {w} has 12th power I"))?;
        dense_dim = c.span_dim;
        let h: Vec<_> = diag.iter().map(|m| conjugate(m, &p)).collect();
        let c = certify_zariski_density(&h, 6).map_err(|e| e.to_string())?;
        ensure(c.verdict == DensityVerdict::NotDense && c.stabilized && c.span_dim < 9, format!("trial {trial}: diagonal pair {:?} dim {}", c.verdict, c.span_dim))?;
        not_dense_dim = c.span_dim;
    }
    Ok(format!("SL₂(ℤ) pair Dense dim {dense_dim}; diagonal pair NotDense dim {not_dense_dim}; 10 conjugations agree"))
}

fn c4_kolchin() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut flags = 0;
    let mut witnesses = 0;
    for k in 0..100 {
        let d = rng.random_range(2..=5);
        let p = random_invertible(d, &mut rng);
        let mut mats: Vec<Matrix<Q>> = (0..3).map(|_| conjugate(&random_unitriangular(d, false, &mut rng), &p)).collect();
        let salted = k >= 50;
        if salted {
            let slot = rng.random_range(0..3);
            let mut diag = vec![qi(1); d];
            diag[0] = qi(2);
            diag[d - 1] = q(1, 2);
            mats[slot] = conjugate(&mats[slot].mul(&Matrix::diagonal(diag)), &random_invertible(d, &mut rng));
        }
        let t = RepresentationTuple::new(mats).map_err(|e| e.to_string())?;
        match (kolchin_triangularize(&t), salted) {
            (KolchinOutcome::Flag(f), false) => {
                ensure(verify_flag(&t, &f), format!("tuple {k}: flag does not triangularize"))?;
                flags += 1;
            }
            (KolchinOutcome::Failure { witness: Some(w), .. }, true) => {
                ensure(!is_unipotent(&t.eval(&w)), format!("tuple {k}: witness {w} is unipotent"))?;
                witnesses += 1;
            }
            (o, _) => return Err(format!("tuple {k} (salted {salted}): unexpected {o:?}")),
        }
    }
    Ok(format!("{flags}/50 flags verified exactly, {witnesses}/50 witnesses"))
}

fn c5_pp_regular() -> Check {
    let prims = enumerate_primitives(3, 8, usize::MAX).map_err(|e| e.to_string())?;
    ensure(!prims.truncated, "primitive enumeration truncated")?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut all_unipotent, mut flagged, mut witnessed) = (0, 0, 0);
    for k in 0..100 {
        let d = if k % 2 == 0 { 2 } else { 3 };
        // every fifth tuple shares a flag; the rest are independent conjugates
        let shared = k % 5 == 0;
        let p = random_invertible(d, &mut rng);
        let mats: Vec<Matrix<Q>> = (0..3)
            .map(|_| {
                let u = random_unitriangular(d, true, &mut rng);
                conjugate(&u, &if shared { p.clone() } else { random_invertible(d, &mut rng) })
            })
            .collect();
        ensure(mats.iter().all(is_regular_unipotent), format!("tuple {k}: generator not regular unipotent"))?;
        let t = RepresentationTuple::new(mats).map_err(|e| e.to_string())?;
        let scan = scan_with(&t, &prims, Exec::default());
        if scan.witness().is_some() {
            witnessed += 1;
            continue;
        }
        all_unipotent += 1;
        match kolchin_triangularize(&t) {
            KolchinOutcome::Flag(f) if verify_flag(&t, &f) => flagged += 1,
            o => return Err(format!("tuple {k}: all {} primitives unipotent but Kolchin gave {o:?}", prims.len())),
        }
    }
    Ok(format!(
        "{} primitives; {all_unipotent} primitive-unipotent tuples all triangularized ({flagged}), {witnessed} witnessed; 0 contradictions",
        prims.len()
    ))
}

/// Smallest k ≤ `max` with m^k = I by repeated multiplication.
fn brute_order(m: &Matrix<Q>, max: u64) -> Option<u64> {
    let mut p = m.clone();
    for k in 1..=max {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

fn c6_orders() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut finite, mut infinite) = (0, 0);
    for k in 0..200 {
        let d = rng.random_range(1..=5);
        let mut perm: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        // signed permutations, then monomials with entries ±1, ±2, ±1/2
        let entries: Vec<Q> = (0..d)
            .map(|_| {
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                if k < 100 {
                    qi(sign)
                } else {
                    [qi(sign), qi(2 * sign), q(sign, 2)][rng.random_range(0..3)].clone()
                }
            })
            .collect();
        let m = Matrix::from_fn(d, d, |i, j| if perm[j] == i { entries[j].clone() } else { Q::zero() });
        // finite orders of d ≤ 5 monomial matrices divide 2·lcm(1..5) = 120
        let brute = brute_order(&m, 120);
        let verdict = classify_order(&m).map_err(|e| e.to_string())?;
        match (verdict, brute) {
            (OrderVerdict::Finite { order }, Some(b)) if order == b => finite += 1,
            (OrderVerdict::Infinite { .. }, None) => infinite += 1,
            (v, b) => return Err(format!("matrix {k}: classifier {v:?}, brute force {b:?}")),
        }
    }
    Ok(format!("200/200 agree ({finite} finite, {infinite} infinite)"))
}

fn c7_burnside() -> Check {
    let ex = build_burnside().map_err(|e| e.to_string())?;
    let audit = burnside_primitive_audit(&ex, 8, Exec::default()).map_err(|e| e.to_string())?;
    ensure(ex.projection.len() == 8, "projection order ≠ 8")?;
    let t = &ex.translation;
    ensure(t.is_translation() && t.translation.iter().any(|c| !c.is_zero()), "ḡ₁²ḡ₂² not a nonzero translation")?;
    ensure(exact_order(&t.homogeneous(), TRANSLATION_POWER_CHECK).is_none(), "translation has finite order")?;
    Ok(format!("{} primitives finite order {:?}; projection order 8; translation {:?}", audit.primitives_checked, audit.orders,
        t.translation.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

fn c8_contraction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let search = ContractionSearch::default();
    let (mut issued, mut unipotent_inputs) = (0, 0);
    for k in 0..100 {
        let d = rng.random_range(2..=4);
        let m = match k % 3 {
            0 => conjugate(&random_unitriangular(d, true, &mut rng), &random_invertible(d, &mut rng)),
            1 => {
                let mut diag: Vec<Q> = (0..d).map(|_| [qi(1), qi(-1), qi(2), q(1, 2), qi(3)][rng.random_range(0..5)].clone()).collect();
                diag[0] = qi(1);
                conjugate(&Matrix::diagonal(diag), &random_invertible(d, &mut rng))
            }
            _ => random_invertible(d, &mut rng),
        };
        unipotent_inputs += usize::from(is_unipotent(&m));
        let outcome = contraction_certificate(&to_float(&m), &search).map_err(|e| e.to_string())?;
        issued += usize::from(outcome.certificate().is_some());
        ensure(corroborate(&m, &outcome), format!("matrix {k}: certificate issued for a unipotent matrix"))?;
    }
    Ok(format!("{issued} certificates issued, all exactly corroborated; {unipotent_inputs} unipotent inputs, 0 false positives"))
}

fn c9_dynamics() -> Check {
    let s = haar_sample(1_000_000, 9, Exec::default());
    let traces: Vec<f64> = s.iter().map(UnitQuaternion::trace).collect();
    let ks_haar = ks_statistic(&traces, haar_trace_cdf);
    let mean_w = s.iter().map(|p| p.w).sum::<f64>() / s.len() as f64;
    ensure(ks_haar < 0.005, format!("(a) Haar KS {ks_haar:.5}"))?;
    ensure(mean_w.abs() < 0.005, format!("(a) mean w {mean_w:.5}"))?;

    let start = haar_tuple(3, 99);
    let walks = nielsen_walks(&start, 100_000, 1_000, &[1, 2, 3, 4, 5], Exec::default()).map_err(|e| e.to_string())?;
    let worst = walks.iter().map(|w| w.ks_distance).fold(0.0, f64::max);
    ensure(worst < 0.05, format!("(b) walk KS {worst:.4}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut hits = 0;
    for _ in 0..20 {
        let start: Vec<_> = (0..3).map(|_| UnitQuaternion::random(&mut rng)).collect();
        let target: Vec<_> = (0..3).map(|_| UnitQuaternion::random(&mut rng)).collect();
        hits += usize::from(minimality_probe(&start, &target, 0.3, 5000).map_err(|e| e.to_string())?.hit);
    }
    ensure(hits >= 18, format!("(c) minimality hits {hits}/20"))?;
    Ok(format!("(a) KS {ks_haar:.5}, mean w {mean_w:+.5}; (b) worst walk KS {worst:.4} over 5 seeds; (c) {hits}/20 hits"))
}

fn c10_obstruction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut vanishing = 0;
    for k in 0..2000 {
        let d = rng.random_range(2..=6);
        let mut lambda: Vec<Q> = (0..d - 1).map(|_| q(rng.random_range(-6..=6), rng.random_range(1..=3))).collect();
        let total = lambda.iter().fold(Q::zero(), |a, b| a + b);
        lambda.push(-total);
        let brute = (1u32..(1 << d) - 1).any(|m| {
            (0..d).filter(|&i| m & (1 << i) != 0).fold(Q::zero(), |a, i| a + &lambda[i]).is_zero()
        });
        let found = vanishing_partial_sum(&lambda);
        ensure(found.is_some() == brute, format!("λ #{k}: checker {found:?}, brute force {brute}"))?;
        if let Some(s) = &found {
            ensure(s.iter().fold(Q::zero(), |a, &i| a + &lambda[i - 1]).is_zero(), "reported subset does not vanish")?;
            vanishing += 1;
        }
    }
    let x = Matrix::from_fn(4, 4, |i, j| if i == (j + 1) % 4 { qi(1) } else { qi(0) });
    let expected = Poly::new(vec![qi(-1), qi(0), qi(0), qi(0), qi(1)]);
    ensure(x.char_poly() == expected, format!("4-cycle char poly {}", x.char_poly()))?;
    ensure(monomial_type_check(&x), "4-cycle fails monomial type check")?;
    Ok(format!("2000 λ (d ≤ 6) agree with brute force ({vanishing} vanishing); 4-cycle char poly t⁴ − 1, monomial type"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "Larsen unipotent coset", Duration::from_secs(1), c1_larsen),
        (2, "semisimple pair", Duration::from_secs(1), c2_semisimple),
        (3, "density certificates", Duration::from_secs(10), c3_density),
        (4, "Kolchin roundtrip", Duration::from_secs(60), c4_kolchin),
        (5, "primitive-unipotent regular desk check", Duration::from_secs(300), c5_pp_regular),
        (6, "order classifier vs brute force", Duration::from_secs(30), c6_orders),
        (7, "Burnside primitive audit", Duration::from_secs(60), c7_burnside),
        (8, "contraction certificate soundness", Duration::from_secs(30), c8_contraction),
        (9, "compact dynamics probes", Duration::from_secs(300), c9_dynamics),
        (10, "one-parameter obstruction", Duration::from_secs(5), c10_obstruction),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let t0 = Instant::now();
        let outcome = run();
        let elapsed = t0.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time budget: {d}")),
            Err(e) => ("FAIL", e),
        };
        failed += usize::from(status == "FAIL");
        println!("{status} criterion {n:>2} {name} [{:.2}s / {}s]: {detail}", elapsed.as_secs_f64(), budget.as_secs());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
