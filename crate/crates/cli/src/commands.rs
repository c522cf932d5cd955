//! One function per subcommand; each returns the report and its exit code.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use autfn::compactdyn::{
    haar_tuple, minimality_probe, nielsen_walk, pair_density_probe, UnitQuaternion, WalkOptions,
};
use autfn::cosets::{
    coset_sample_check, eigenvalue_one_audit, one_param_obstruction, subgroup_words, CosetInstance,
    CosetSamples, CosetVerdict, Subgroup,
};
use autfn::density::{certify_exact, redundancy_scan, DensityVerdict};
use autfn::exactalg::{ExactMatrix, GaussRational, Laurent, Matrix, RingKind, Q};
use autfn::freegroup::enumerate_primitives;
use autfn::paperbench::{build_burnside, burnside_primitive_audit, verify_all as run_examples, PaperError};
use autfn::par::Exec;
use autfn::puscan::{kolchin_triangularize, scan_extended, scan_with, KolchinOutcome, RepresentationTuple, ScanVerdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::io::{
    matrices_json, matrix_json, parse_rationals, read_matrix, read_tuple, unwrap_all, write_atomic, Exact,
    ExactField,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

pub struct Context {
    pub exec: Exec,
    pub output: Option<PathBuf>,
}

pub struct Outcome {
    command: &'static str,
    inputs: Value,
    result: Value,
    verdict: String,
    code: u8,
}

impl Context {
    /// Writes the report and returns the exit code.
    pub fn emit(&self, o: Outcome) -> Result<u8> {
        let report = json!({
            "tool": "autfn",
            "version": env!("CARGO_PKG_VERSION"),
            "command": o.command,
            "parallel": self.exec.is_parallel(),
            "inputs": o.inputs,
            "verdict": o.verdict,
            "exit_code": o.code,
            "result": o.result,
        });
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        match &self.output {
            Some(path) => {
                write_atomic(path, text.as_bytes())?;
                eprintln!("{}: {} (report {})", o.command, o.verdict, path.display());
            }
            None => print!("{text}"),
        }
        Ok(o.code)
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn density(ctx: &Context, input: &Path, word_budget: usize, redundancy: bool) -> Result<Outcome> {
    let mats = read_tuple(input)?;
    let cert = certify_exact(&mats, word_budget)?;
    let mut result = serde_json::to_value(&cert)?;
    if redundancy {
        let subsets = match mats[0].ring() {
            RingKind::Rational => redundancy_scan(&unwrap_all::<Q>(&mats), word_budget, ctx.exec)?,
            RingKind::Gaussian => redundancy_scan(&unwrap_all::<GaussRational>(&mats), word_budget, ctx.exec)?,
            RingKind::Laurent => bail!("redundancy needs rational or Gaussian entries"),
        };
        result["dense_proper_subtuples"] = json!(subsets);
    }
    let code = match cert.verdict {
        DensityVerdict::Dense => EXIT_PASS,
        DensityVerdict::NotDense => EXIT_FAIL,
        DensityVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    Ok(Outcome {
        command: "density",
        inputs: json!({ "input": path_str(input), "matrices": matrices_json(&mats), "word_budget": word_budget, "redundancy": redundancy }),
        result,
        verdict: format!("{:?}", cert.verdict),
        code,
    })
}

fn puscan_ring<R: Exact>(
    mats: &[ExactMatrix],
    max_len: usize,
    budget: usize,
    extended: bool,
    exec: Exec,
) -> Result<(Value, String, u8)>
where
    ExactMatrix: From<Matrix<R>>,
{
    let t = RepresentationTuple::new(unwrap_all::<R>(mats))?;
    let prims = enumerate_primitives(t.rank(), max_len, budget)?;
    let report = if extended {
        let short = enumerate_primitives(t.rank(), 3, budget)?;
        scan_extended(&t, &prims, &short, 2, exec)
    } else {
        scan_with(&t, &prims, exec)
    };
    let mut result = json!({
        "tested": report.tested,
        "primitives": prims.len(),
        "truncated": report.truncated,
        "via_extension": report.via_extension,
    });
    let (verdict, code) = match &report.verdict {
        ScanVerdict::WitnessFound { word, char_poly } => {
            result["witness"] = json!(word.to_string());
            result["char_poly"] = json!(char_poly.to_string());
            if !report.via_extension {
                result["witness_image"] = matrix_json(&t.eval(word));
            }
            ("WitnessFound", EXIT_FAIL)
        }
        ScanVerdict::AllUnipotentUpToBudget => ("AllUnipotentUpToBudget", EXIT_PASS),
    };
    Ok((result, verdict.to_string(), code))
}

pub fn puscan(ctx: &Context, input: &Path, max_len: usize, budget: usize, extended: bool) -> Result<Outcome> {
    let mats = read_tuple(input)?;
    let (result, verdict, code) = match mats[0].ring() {
        RingKind::Rational => puscan_ring::<Q>(&mats, max_len, budget, extended, ctx.exec)?,
        RingKind::Gaussian => puscan_ring::<GaussRational>(&mats, max_len, budget, extended, ctx.exec)?,
        RingKind::Laurent => puscan_ring::<Laurent>(&mats, max_len, budget, extended, ctx.exec)?,
    };
    Ok(Outcome {
        command: "puscan",
        inputs: json!({ "input": path_str(input), "matrices": matrices_json(&mats), "max_len": max_len, "budget": budget, "extended": extended }),
        result,
        verdict,
        code,
    })
}

fn kolchin_ring<F: ExactField>(mats: &[ExactMatrix]) -> Result<(Value, String, u8)>
where
    ExactMatrix: From<Matrix<F>>,
{
    let t = RepresentationTuple::new(unwrap_all::<F>(mats))?;
    Ok(match kolchin_triangularize(&t) {
        KolchinOutcome::Flag(flag) => {
            let pi = flag.basis_change.inverse_field().expect("flag basis is invertible");
            let conj: Vec<Value> = t.mats().iter().map(|a| matrix_json(&pi.mul(a).mul(&flag.basis_change))).collect();
            (
                json!({ "basis_change": matrix_json(&flag.basis_change), "conjugated": conj, "signature": flag.signature }),
                "Flag".into(),
                EXIT_PASS,
            )
        }
        KolchinOutcome::Failure { stage, witness } => (
            json!({ "stage": stage, "witness": witness.map(|w| w.to_string()) }),
            "Failure".into(),
            EXIT_FAIL,
        ),
    })
}

pub fn kolchin(_ctx: &Context, input: &Path) -> Result<Outcome> {
    let mats = read_tuple(input)?;
    let (result, verdict, code) = match mats[0].ring() {
        RingKind::Rational => kolchin_ring::<Q>(&mats)?,
        RingKind::Gaussian => kolchin_ring::<GaussRational>(&mats)?,
        RingKind::Laurent => bail!("kolchin needs rational or Gaussian entries"),
    };
    Ok(Outcome {
        command: "kolchin",
        inputs: json!({ "input": path_str(input), "matrices": matrices_json(&mats) }),
        result,
        verdict,
        code,
    })
}

pub struct CosetRequest {
    pub x: PathBuf,
    pub exponents: Option<Vec<i64>>,
    pub params: String,
    pub h: Option<PathBuf>,
    pub word_len: usize,
    pub depth: u32,
}

fn coset_ring<F: ExactField + Into<Laurent>>(x: &Matrix<F>, req: &CosetRequest) -> Result<(Value, Value, String, u8)>
where
    ExactMatrix: From<Matrix<F>>,
{
    let mut result = json!({});
    let mut inputs = json!({});
    let (inst, samples) = match (&req.exponents, &req.h) {
        (Some(exps), None) => {
            let ts = parse_rationals(&req.params)?;
            inputs["exponents"] = json!(exps);
            inputs["params"] = json!(ts.iter().map(ToString::to_string).collect::<Vec<_>>());
            let inst = CosetInstance::new(x.clone(), Subgroup::OneParameter { exponents: exps.clone() })?;
            let family = inst.family_char_poly().expect("one-parameter family");
            result["family_char_poly"] = json!(family.to_string());
            result["family_char_poly_t_free"] = json!(family.coeffs().iter().all(Laurent::is_constant));
            let lambda: Vec<Q> = exps.iter().map(|&k| Q::from_integer(k.into())).collect();
            result["obstruction"] = match one_param_obstruction(x, &lambda, req.depth) {
                Ok(r) => serde_json::to_value(r)?,
                Err(e) => json!({ "not_applicable": e.to_string() }),
            };
            (inst, CosetSamples::Params(ts))
        }
        (None, Some(hpath)) => {
            let hs = read_tuple(hpath)?;
            let gens: Vec<Matrix<F>> = hs
                .iter()
                .map(|m| F::unwrap(m).cloned().context("H and x must share a ring"))
                .collect::<Result<_>>()?;
            inputs["h"] = json!(path_str(hpath));
            inputs["h_matrices"] = matrices_json(&hs);
            inputs["word_len"] = json!(req.word_len);
            result["eigenvalue_one_audit"] = serde_json::to_value(eigenvalue_one_audit(&gens, req.word_len))?;
            let words: Vec<Matrix<F>> = subgroup_words(&gens, req.word_len).into_iter().map(|(_, m)| m).collect();
            let inst = CosetInstance::new(x.clone(), Subgroup::Generators(gens))?;
            (inst, CosetSamples::Elements(words))
        }
        _ => bail!("give exactly one of --exponents or --h"),
    };
    let (verdict, code) = match coset_sample_check(&inst, &samples)? {
        CosetVerdict::ConsistentUpToSamples { sampled, level } => {
            result["sampled"] = json!(sampled);
            result["level"] = serde_json::to_value(level)?;
            ("ConsistentUpToSamples", EXIT_PASS)
        }
        CosetVerdict::Refuted { sample, witness, reason } => {
            result["sample"] = json!(sample);
            result["witness"] = matrix_json(&witness);
            result["reason"] = serde_json::to_value(reason)?;
            ("Refuted", EXIT_FAIL)
        }
    };
    Ok((inputs, result, verdict.to_string(), code))
}

pub fn coset(_ctx: &Context, req: &CosetRequest) -> Result<Outcome> {
    let x = read_matrix(&req.x)?;
    let (mut inputs, result, verdict, code) = match &x {
        ExactMatrix::Rational(m) => coset_ring(m, req)?,
        ExactMatrix::Gaussian(m) => coset_ring(m, req)?,
        ExactMatrix::Laurent(_) => bail!("x must have rational or Gaussian entries"),
    };
    inputs["x"] = x.to_json();
    inputs["depth"] = json!(req.depth);
    Ok(Outcome { command: "coset", inputs, result, verdict, code })
}

pub struct WalkRequest {
    pub rank: usize,
    pub steps: usize,
    pub seed: u64,
    pub burn_in: usize,
    pub csv: Option<PathBuf>,
    pub max_ks: Option<f64>,
}

fn quaternions_json(t: &[UnitQuaternion]) -> Value {
    json!(t.iter().map(UnitQuaternion::as_array).collect::<Vec<_>>())
}

pub fn walk(_ctx: &Context, req: &WalkRequest) -> Result<Outcome> {
    let start = haar_tuple(req.rank, req.seed);
    let report = nielsen_walk(&start, &WalkOptions { steps: req.steps, burn_in: req.burn_in, seed: req.seed, target: None })?;
    if let Some(path) = &req.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<String> =
            std::iter::once("step".to_string()).chain((1..=req.rank).map(|k| format!("trace{k}"))).collect();
        w.write_record(&header)?;
        for (step, row) in report.traces.iter().enumerate() {
            w.write_record(std::iter::once(step.to_string()).chain(row.iter().map(f64::to_string)))?;
        }
        write_atomic(path, &w.into_inner().context("flushing CSV")?)?;
    }
    let pass = req.max_ks.is_none_or(|m| report.ks_distance <= m);
    Ok(Outcome {
        command: "walk",
        inputs: json!({ "rank": req.rank, "steps": req.steps, "seed": req.seed, "burn_in": req.burn_in,
            "csv": req.csv.as_deref().map(path_str), "max_ks": req.max_ks }),
        result: json!({
            "ks_distance": report.ks_distance,
            "initial": quaternions_json(&start),
            "final": quaternions_json(&report.final_tuple),
            "trace_min": report.trace_samples.iter().copied().fold(f64::INFINITY, f64::min),
            "trace_max": report.trace_samples.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }),
        verdict: if pass { "pass" } else { "fail" }.into(),
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

pub struct ProbeRequest {
    pub pair: bool,
    pub seed: u64,
    pub trials: usize,
    pub epsilon: f64,
    pub word_len: usize,
    pub rank: usize,
    pub move_budget: usize,
}

pub fn probe(ctx: &Context, req: &ProbeRequest) -> Result<Outcome> {
    if !(req.epsilon > 0.0 && req.epsilon.is_finite()) {
        bail!("--epsilon must be a positive number");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let mut trials = Vec::with_capacity(req.trials);
    let mut successes = 0;
    for _ in 0..req.trials {
        if req.pair {
            let (a, b) = (UnitQuaternion::random(&mut rng), UnitQuaternion::random(&mut rng));
            let c = pair_density_probe(a, b, req.word_len, req.epsilon, ctx.exec);
            successes += usize::from(c.fraction == 1.0);
            trials.push(json!({ "a": a.as_array(), "b": b.as_array(), "coverage": c }));
        } else {
            let start: Vec<_> = (0..req.rank).map(|_| UnitQuaternion::random(&mut rng)).collect();
            let target: Vec<_> = (0..req.rank).map(|_| UnitQuaternion::random(&mut rng)).collect();
            let r = minimality_probe(&start, &target, req.epsilon, req.move_budget)?;
            successes += usize::from(r.hit);
            trials.push(json!({ "start": quaternions_json(&start), "target": quaternions_json(&target),
                "distance": r.distance, "hit": r.hit, "moves": r.moves.len() }));
        }
    }
    let pass = successes == req.trials;
    Ok(Outcome {
        command: "probe",
        inputs: json!({ "kind": if req.pair { "pair" } else { "minimality" }, "seed": req.seed, "trials": req.trials,
            "epsilon": req.epsilon, "word_len": req.word_len, "rank": req.rank, "move_budget": req.move_budget }),
        result: json!({ "successes": successes, "rate": successes as f64 / req.trials as f64, "trials": trials }),
        verdict: if pass { "pass" } else { "fail" }.into(),
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

pub fn verify_all(ctx: &Context, audit_len: usize) -> Result<Outcome> {
    let checks = run_examples(audit_len, ctx.exec);
    let pass = checks.iter().all(|c| c.passed);
    Ok(Outcome {
        command: "examples verify-all",
        inputs: json!({ "audit_len": audit_len }),
        result: json!({ "checks": checks }),
        verdict: if pass { "pass" } else { "fail" }.into(),
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

pub fn burnside(ctx: &Context, max_len: usize) -> Result<Outcome> {
    let ex = build_burnside()?;
    let inputs = json!({ "max_len": max_len });
    let translation: Vec<String> = ex.translation.translation.iter().map(ToString::to_string).collect();
    let (result, pass) = match burnside_primitive_audit(&ex, max_len, ctx.exec) {
        Ok(audit) => (
            json!({ "audit": audit, "projection_order": ex.projection.len(), "translation": translation,
                "generators": ex.homogeneous_generators().iter().map(matrix_json).collect::<Vec<_>>() }),
            true,
        ),
        Err(PaperError::InfiniteOrderPrimitive { word }) => (json!({ "infinite_order_primitive": word }), false),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome {
        command: "burnside",
        inputs,
        result,
        verdict: if pass { "pass" } else { "fail" }.into(),
        code: if pass { EXIT_PASS } else { EXIT_FAIL },
    })
}
