use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{is_unipotent, SpectraError};
use crate::exactalg::{q_to_f64, Matrix, Q};

/// g·B(x, r1) ⊂ B(x, r2) in the Fubini–Study angle metric on P(R^d).
///
/// `r2` already includes `margin`, the Lipschitz slack that extends the
/// sampled bound from the sample points to the whole ball.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionCertificate {
    pub center: Vec<f64>,
    pub r1: f64,
    pub r2: f64,
    pub sample_count: usize,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ContractionOutcome {
    Certificate(ContractionCertificate),
    /// Nothing found within budget; says nothing about unipotence.
    NotFound { centers_tried: usize, radii_tried: usize },
}

impl ContractionOutcome {
    pub fn certificate(&self) -> Option<&ContractionCertificate> {
        match self {
            ContractionOutcome::Certificate(c) => Some(c),
            ContractionOutcome::NotFound { .. } => None,
        }
    }
}

/// Search parameters. The defaults suit d ≤ 6.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionSearch {
    /// Power-iteration steps per starting vector.
    pub budget: usize,
    /// Random starting vectors, in addition to the standard basis.
    pub random_starts: usize,
    /// Candidate r1 values, each in (0, π/2).
    pub radii: Vec<f64>,
    /// Concentric shells sampled inside B(x, r1).
    pub shells: usize,
    /// Directions sampled on each shell when d ≥ 3.
    pub directions: usize,
    pub seed: u64,
}

impl Default for ContractionSearch {
    fn default() -> Self {
        ContractionSearch {
            budget: 500,
            random_starts: 4,
            radii: vec![0.7, 0.5, 0.3, 0.2, 0.1, 0.05, 0.02],
            shells: 16,
            directions: 96,
            seed: 0,
        }
    }
}

/// Angle between the lines spanned by x and y, in [0, π/2].
pub fn projective_distance(x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let (a, b) = (x.normalize(), y.normalize());
    // chordal distance to the nearer representative, then the exact angle
    let c = (&a - &b).norm().min((&a + &b).norm());
    2.0 * (c / 2.0).min(1.0).asin()
}

pub fn to_float(m: &Matrix<Q>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| q_to_f64(&m[(i, j)]))
}

/// Exact check of a floating certificate: a contracting ball forces an
/// eigenvalue off the unit circle, so the exact matrix must not be unipotent.
pub fn corroborate(exact: &Matrix<Q>, outcome: &ContractionOutcome) -> bool {
    outcome.certificate().is_none() || !is_unipotent(exact)
}

fn orthonormal_complement(x: &DVector<f64>) -> Vec<DVector<f64>> {
    let d = x.len();
    let mut basis: Vec<DVector<f64>> = vec![x.normalize()];
    for k in 0..d {
        let mut v = DVector::from_fn(d, |i, _| if i == k { 1.0 } else { 0.0 });
        for b in &basis {
            v -= b * b.dot(&v);
        }
        // second pass keeps the basis orthogonal to working precision
        for b in &basis {
            v -= b * b.dot(&v);
        }
        if v.norm() > 1e-8 {
            basis.push(v.normalize());
        }
        if basis.len() == d {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// Unit tangent directions at x and an estimate of their covering angle.
fn tangent_directions(
    tangent: &[DVector<f64>],
    count: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<DVector<f64>>, f64) {
    let d = tangent.first().map_or(0, |v| v.len());
    if tangent.len() == 1 {
        // the tangent sphere is {±v}, sampled exactly
        return (vec![tangent[0].clone(), -tangent[0].clone()], 0.0);
    }
    let combine = |c: &[f64]| -> DVector<f64> {
        let mut v = DVector::zeros(d);
        for (ci, t) in c.iter().zip(tangent) {
            v += t * *ci;
        }
        v.normalize()
    };
    let mut dirs: Vec<DVector<f64>> = Vec::new();
    for t in tangent {
        dirs.push(t.clone());
        dirs.push(-t.clone());
    }
    let random_dir = |rng: &mut ChaCha8Rng| {
        let c: Vec<f64> = (0..tangent.len()).map(|_| StandardNormal.sample(rng)).collect();
        combine(&c)
    };
    while dirs.len() < count.max(2 * tangent.len()) {
        dirs.push(random_dir(rng));
    }
    // covering angle from random probes, inflated since probes undersample
    let mut worst: f64 = 0.0;
    for _ in 0..4 * dirs.len() {
        let p = random_dir(rng);
        let best = dirs.iter().map(|v| v.dot(&p).clamp(-1.0, 1.0).acos()).fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    (dirs, 1.5 * worst)
}

fn power_iteration(g: &DMatrix<f64>, start: DVector<f64>, steps: usize) -> Option<DVector<f64>> {
    let mut v = start.normalize();
    for _ in 0..steps {
        let w = g * &v;
        let n = w.norm();
        if !n.is_finite() || n == 0.0 {
            return None;
        }
        let w = w / n;
        let moved = projective_distance(&v, &w);
        v = w;
        if moved < 1e-13 {
            break;
        }
    }
    Some(v)
}

/// Sampled radius bound for the image of B(x, r1), or None if the local
/// Lipschitz bound degenerates.
fn image_radius(
    g: &DMatrix<f64>,
    sigma_max: f64,
    x: &DVector<f64>,
    dirs: &[DVector<f64>],
    dir_mesh: f64,
    r1: f64,
    shells: usize,
) -> Option<(f64, f64, usize)> {
    // every point of the ball lies within delta of some sample
    let delta = r1 / (2.0 * shells as f64) + r1.sin() * dir_mesh;
    let mut bound: f64 = 0.0;
    let mut sampled: f64 = 0.0;
    let mut count = 0;
    for k in 0..=shells {
        let r = r1 * k as f64 / shells as f64;
        let ring: &[DVector<f64>] = if k == 0 { &dirs[..1] } else { dirs };
        for v in ring {
            let s = x * r.cos() + v * r.sin();
            let gs = g * &s;
            let floor = gs.norm() - sigma_max * delta;
            if floor <= 0.0 {
                return None;
            }
            let dist = projective_distance(&gs, x);
            sampled = sampled.max(dist);
            bound = bound.max(dist + sigma_max / floor * delta);
            count += 1;
        }
    }
    Some((bound, bound - sampled, count))
}

/// Searches for a ball B(x, r1) that g maps into a strictly smaller
/// concentric ball.
///
/// Centers come from power iteration. For each candidate r1 the ball is
/// sampled on concentric shells; the bound adds, per sample s, the local
/// Lipschitz constant ‖g‖ / (|g s| − ‖g‖δ) times the mesh δ. Success
/// implies g is not unipotent; failure implies nothing.
pub fn contraction_certificate(
    g: &DMatrix<f64>,
    search: &ContractionSearch,
) -> Result<ContractionOutcome, SpectraError> {
    if !g.is_square() {
        return Err(SpectraError::NotSquare);
    }
    let d = g.nrows();
    let sv = g.singular_values();
    let sigma_max = sv.max();
    let sigma_min = sv.min();
    if d < 2 || sigma_min.is_nan() || sigma_min <= 1e-12 * sigma_max {
        return Err(SpectraError::Singular);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut starts: Vec<DVector<f64>> =
        (0..d).map(|k| DVector::from_fn(d, |i, _| if i == k { 1.0 } else { 0.0 })).collect();
    for _ in 0..search.random_starts {
        starts.push(DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng)));
    }

    let mut centers: Vec<DVector<f64>> = Vec::new();
    for s in starts {
        if let Some(c) = power_iteration(g, s, search.budget) {
            if centers.iter().all(|o| projective_distance(o, &c) > 1e-6) {
                centers.push(c);
            }
        }
    }

    let mut best: Option<ContractionCertificate> = None;
    for x in &centers {
        let tangent = orthonormal_complement(x);
        let (dirs, mesh) = tangent_directions(&tangent, search.directions, &mut rng);
        for &r1 in &search.radii {
            let Some((r2, margin, count)) = image_radius(g, sigma_max, x, &dirs, mesh, r1, search.shells)
            else {
                continue;
            };
            if r2 < r1 * (1.0 - 1e-9) && best.as_ref().is_none_or(|b| r2 / r1 < b.r2 / b.r1) {
                let mut center: Vec<f64> = x.iter().copied().collect();
                // sign-normalize: largest entry positive
                let lead = center.iter().copied().fold(0.0, |a: f64, b| if b.abs() > a.abs() { b } else { a });
                if lead < 0.0 {
                    center.iter_mut().for_each(|c| *c = -*c);
                }
                best = Some(ContractionCertificate { center, r1, r2, sample_count: count, margin });
            }
        }
    }
    Ok(match best {
        Some(c) => ContractionOutcome::Certificate(c),
        None => ContractionOutcome::NotFound { centers_tried: centers.len(), radii_tried: search.radii.len() },
    })
}
