//! Floating-point dynamics of Aut(F_n) on SU(2)^n: Haar sampling, random
//! Nielsen walks with trace statistics, and minimality and density probes.
//!
//! Distances are great-circle angles on S³ ≅ SU(2). Probe thresholds are
//! finite-time calibration constants, not consequences of any theorem.

mod probes;
mod quaternion;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::freegroup::{all_moves, FreeGroupError, NielsenMove};
use crate::par::Exec;

pub use probes::{
    minimality_probe, pair_density_probe, pair_density_probe_with, MinimalityReport, Net, PairCoverage,
    PHASE_NODE_LIMIT,
};
pub use quaternion::{haar_trace_cdf, ks_statistic, Su2, UnitQuaternion};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error("tuple rank {rank} below the minimum {min}")]
    RankTooSmall { rank: usize, min: usize },
    #[error("start and target ranks differ ({start} vs {target})")]
    RankMismatch { start: usize, target: usize },
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
}

/// Samples per independently seeded stream in [`haar_sample`].
const HAAR_CHUNK: usize = 1 << 16;

/// `count` Haar-random elements; chunk k uses ChaCha stream k of `seed`, so
/// the output does not depend on the execution mode.
pub fn haar_sample(count: usize, seed: u64, exec: Exec) -> Vec<UnitQuaternion> {
    let chunks = count.div_ceil(HAAR_CHUNK);
    exec.map_range(chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let len = HAAR_CHUNK.min(count - k * HAAR_CHUNK);
        (0..len).map(|_| UnitQuaternion::random(&mut rng)).collect::<Vec<_>>()
    })
    .concat()
}

/// A Haar-random n-tuple.
pub fn haar_tuple(n: usize, seed: u64) -> Vec<UnitQuaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| UnitQuaternion::random(&mut rng)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkReport {
    pub seed: u64,
    pub steps: usize,
    pub burn_in: usize,
    /// tr(g_1) at steps 0..=steps.
    pub trace_samples: Vec<f64>,
    /// All coordinate traces at steps 0..=steps.
    #[serde(skip)]
    pub traces: Vec<Vec<f64>>,
    /// KS distance of trace_samples after burn-in to the Haar trace law.
    pub ks_distance: f64,
    /// Smallest max-coordinate distance to the target seen, if one was given.
    pub min_target_distance: Option<f64>,
    #[serde(skip)]
    pub final_tuple: Vec<UnitQuaternion>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkOptions {
    pub steps: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub target: Option<Vec<UnitQuaternion>>,
}

/// max_k d(a_k, b_k).
pub fn tuple_distance(a: &[UnitQuaternion], b: &[UnitQuaternion]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p.distance(q)).fold(0.0, f64::max)
}

/// Applies uniformly random Nielsen moves and records coordinate traces.
pub fn nielsen_walk(initial: &[UnitQuaternion], opts: &WalkOptions) -> Result<WalkReport, DynamicsError> {
    let n = initial.len();
    if n < 3 {
        return Err(DynamicsError::RankTooSmall { rank: n, min: 3 });
    }
    if let Some(t) = &opts.target {
        if t.len() != n {
            return Err(DynamicsError::RankMismatch { start: n, target: t.len() });
        }
    }
    let moves: Vec<NielsenMove> = all_moves(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut tuple = initial.to_vec();
    let record = |t: &[UnitQuaternion]| t.iter().map(UnitQuaternion::trace).collect::<Vec<f64>>();
    let mut traces = Vec::with_capacity(opts.steps + 1);
    traces.push(record(&tuple));
    let mut best = opts.target.as_ref().map(|t| tuple_distance(&tuple, t));
    for _ in 0..opts.steps {
        let m = *moves.choose(&mut rng).expect("rank ≥ 3 has moves");
        m.apply_in_place(&Su2, &mut tuple);
        traces.push(record(&tuple));
        if let (Some(b), Some(t)) = (best.as_mut(), &opts.target) {
            *b = b.min(tuple_distance(&tuple, t));
        }
    }
    let trace_samples: Vec<f64> = traces.iter().map(|t| t[0]).collect();
    let tail = &trace_samples[opts.burn_in.min(trace_samples.len())..];
    let ks_distance = ks_statistic(tail, haar_trace_cdf);
    Ok(WalkReport {
        seed: opts.seed,
        steps: opts.steps,
        burn_in: opts.burn_in,
        trace_samples,
        traces,
        ks_distance,
        min_target_distance: best,
        final_tuple: tuple,
    })
}

/// Independent walks from the same start, one per seed, in seed order.
pub fn nielsen_walks(
    initial: &[UnitQuaternion],
    steps: usize,
    burn_in: usize,
    seeds: &[u64],
    exec: Exec,
) -> Result<Vec<WalkReport>, DynamicsError> {
    exec.map(seeds, |&seed| nielsen_walk(initial, &WalkOptions { steps, burn_in, seed, target: None }))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests;
