use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use serde::Serialize;

use super::quaternion::{Su2, UnitQuaternion};
use super::{haar_sample, tuple_distance, DynamicsError};
use crate::freegroup::{all_moves, NielsenMove, Sign};
use crate::par::Exec;

/// Reduced words examined per coordinate phase of [`minimality_probe`].
pub const PHASE_NODE_LIMIT: usize = 60_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalityReport {
    /// max_k d(g_k, target_k) after replaying `moves` on the start tuple.
    pub distance: f64,
    pub moves: Vec<NielsenMove>,
    pub epsilon: f64,
    pub hit: bool,
}

fn replay(start: &[UnitQuaternion], moves: &[NielsenMove]) -> Vec<UnitQuaternion> {
    let mut t = start.to_vec();
    for m in moves {
        m.apply_in_place(&Su2, &mut t);
    }
    t
}

/// Shortest-first search for a reduced word u in `gens` with d(u, goal)
/// minimal, over at most `node_limit` words of length ≤ `max_len`. Returns
/// u as letters (generator slot, sign), leftmost first.
fn approximate(
    gens: [UnitQuaternion; 2],
    goal: &UnitQuaternion,
    max_len: usize,
    node_limit: usize,
    good_enough: f64,
) -> (f64, Vec<(usize, Sign)>) {
    let letters: [(usize, Sign, UnitQuaternion); 4] = [
        (0, Sign::Plus, gens[0]),
        (0, Sign::Minus, gens[0].conj()),
        (1, Sign::Plus, gens[1]),
        (1, Sign::Minus, gens[1].conj()),
    ];
    // node: (value, letter index, parent); root has letter usize::MAX
    let mut nodes: Vec<(UnitQuaternion, usize, usize)> = vec![(UnitQuaternion::IDENTITY, usize::MAX, 0)];
    let mut level = vec![0usize];
    let mut best = (UnitQuaternion::IDENTITY.distance(goal), 0usize);
    'grow: for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * 3);
        for &n in &level {
            let (value, last, _) = nodes[n];
            for (li, &(_, _, g)) in letters.iter().enumerate() {
                // li ^ 1 is the inverse letter
                if last != usize::MAX && li == last ^ 1 {
                    continue;
                }
                let v = value.mul(&g);
                nodes.push((v, li, n));
                let id = nodes.len() - 1;
                let d = v.distance(goal);
                if d < best.0 {
                    best = (d, id);
                }
                if best.0 <= good_enough || nodes.len() >= node_limit {
                    break 'grow;
                }
                next.push(id);
            }
        }
        level = next;
    }
    let mut word = Vec::new();
    let mut n = best.1;
    while nodes[n].1 != usize::MAX {
        let (slot, sign, _) = letters[nodes[n].1];
        word.push((slot, sign));
        n = nodes[n].2;
    }
    word.reverse();
    (best.0, word)
}

/// Cyclic rotations of (n, …, 1) and their reversals.
fn phase_orders(n: usize) -> Vec<Vec<usize>> {
    let base: Vec<usize> = (1..=n).rev().collect();
    let mut out = Vec::with_capacity(2 * n);
    for r in 0..n {
        let mut o = base.clone();
        o.rotate_left(r);
        out.push(o.clone());
        o.reverse();
        out.push(o);
    }
    out
}

/// Fixes coordinates in `order`, each by left multiplication with a word
/// in two other coordinates.
fn phased_moves(
    start: &[UnitQuaternion],
    target: &[UnitQuaternion],
    order: &[usize],
    epsilon: f64,
    move_budget: usize,
) -> Vec<NielsenMove> {
    let n = start.len();
    let mut tuple = start.to_vec();
    let mut moves: Vec<NielsenMove> = Vec::new();
    for &j in order {
        let remaining = move_budget - moves.len();
        if remaining == 0 {
            break;
        }
        let others: Vec<usize> = (1..=n).filter(|&k| k != j).take(2).collect();
        let goal = target[j - 1].mul(&tuple[j - 1].conj());
        let gens = [tuple[others[0] - 1], tuple[others[1] - 1]];
        let (_, word) = approximate(gens, &goal, remaining, PHASE_NODE_LIMIT, epsilon / 4.0);
        // u = l_1⋯l_m acts as l_m first
        for &(slot, sign) in word.iter().rev() {
            let m = NielsenMove::LeftMultiply { i: others[slot], j, sign };
            m.apply_in_place(&Su2, &mut tuple);
            moves.push(m);
        }
    }
    moves
}

/// Searches Nielsen moves bringing `start` within `epsilon` of `target` in
/// the max-coordinate S³ angle.
///
/// After the start and all single moves, coordinates are fixed one at a
/// time, in several orders until one hits: g_j is replaced by u·g_j for a word u in two other
/// coordinates approximating target_j·g_j⁻¹, realized as left
/// multiplications. A phase only changes g_j, and bi-invariance makes its
/// error exactly d(u, target_j·g_j⁻¹). At most `move_budget` moves are
/// returned; the reported distance is recomputed by replay.
pub fn minimality_probe(
    start: &[UnitQuaternion],
    target: &[UnitQuaternion],
    epsilon: f64,
    move_budget: usize,
) -> Result<MinimalityReport, DynamicsError> {
    let n = start.len();
    if n < 3 {
        return Err(DynamicsError::RankTooSmall { rank: n, min: 3 });
    }
    if target.len() != n {
        return Err(DynamicsError::RankMismatch { start: n, target: target.len() });
    }
    let report = |moves: Vec<NielsenMove>| {
        let distance = tuple_distance(&replay(start, &moves), target);
        MinimalityReport { distance, hit: distance <= epsilon, epsilon, moves }
    };
    let mut best = report(Vec::new());
    if best.hit || move_budget == 0 {
        return Ok(best);
    }
    for m in all_moves(n) {
        let r = report(vec![m]);
        if r.distance < best.distance {
            best = r;
        }
    }
    if best.hit {
        return Ok(best);
    }

    for order in phase_orders(n) {
        let phased = report(phased_moves(start, target, &order, epsilon, move_budget));
        if phased.distance < best.distance {
            best = phased;
        }
        if best.hit {
            break;
        }
    }
    Ok(best)
}

/// Finite point set standing in for an ε-net of SU(2).
#[derive(Debug, Clone, PartialEq)]
pub struct Net {
    pub points: Vec<UnitQuaternion>,
}

/// Size and seed of [`Net::standard`].
const NET_SIZE: usize = 2048;
const NET_SEED: u64 = 0x5eed_2a7e;

impl Net {
    /// Fixed-seed Haar sample.
    pub fn haar(size: usize, seed: u64) -> Self {
        Net { points: haar_sample(size, seed, Exec::Sequential) }
    }

    pub fn standard() -> Self {
        Net::haar(NET_SIZE, NET_SEED)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCoverage {
    pub word_len: usize,
    pub epsilon: f64,
    pub net_size: usize,
    pub covered: usize,
    pub fraction: f64,
    /// Words through the last fully evaluated length.
    pub words_evaluated: usize,
    /// Length at which every net point was covered, if that happened.
    pub complete_at: Option<usize>,
}

/// Uniform grid over [−1,1]⁴ with cells no smaller than the query chord, so
/// a point within chord h of q lies in q's cell or a neighbouring one.
struct Grid {
    m: usize,
    cell: f64,
    start: Vec<u32>,
    order: Vec<u32>,
}

impl Grid {
    const MAX_CELLS_PER_AXIS: usize = 32;

    fn new(points: &[UnitQuaternion], chord: f64) -> Self {
        let m = ((2.0 / chord).floor() as usize).clamp(1, Self::MAX_CELLS_PER_AXIS);
        let cell = 2.0 / m as f64;
        let mut grid = Grid { m, cell, start: Vec::new(), order: Vec::new() };
        let keys: Vec<usize> = points.iter().map(|p| grid.key(&grid.coords(p))).collect();
        let mut counts = vec![0u32; m.pow(4) + 1];
        for &k in &keys {
            counts[k + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut order = vec![0u32; points.len()];
        for (i, &k) in keys.iter().enumerate() {
            order[fill[k] as usize] = i as u32;
            fill[k] += 1;
        }
        grid.start = counts;
        grid.order = order;
        grid
    }

    fn coords(&self, p: &UnitQuaternion) -> [usize; 4] {
        p.as_array().map(|c| (((c + 1.0) / self.cell).floor() as usize).min(self.m - 1))
    }

    fn key(&self, c: &[usize; 4]) -> usize {
        c.iter().fold(0, |acc, &x| acc * self.m + x)
    }

    fn for_neighbours(&self, p: &UnitQuaternion, mut f: impl FnMut(usize)) {
        let c = self.coords(p);
        let span = |x: usize| x.saturating_sub(1)..=(x + 1).min(self.m - 1);
        for a in span(c[0]) {
            for b in span(c[1]) {
                for d in span(c[2]) {
                    for e in span(c[3]) {
                        let k = self.key(&[a, b, d, e]);
                        for &i in &self.order[self.start[k] as usize..self.start[k + 1] as usize] {
                            f(i as usize);
                        }
                    }
                }
            }
        }
    }
}

struct Cover<'a> {
    net: &'a Net,
    grid: Grid,
    chord2: f64,
    flags: Vec<AtomicBool>,
    uncovered: AtomicUsize,
}

impl Cover<'_> {
    fn mark(&self, v: &UnitQuaternion) {
        self.grid.for_neighbours(v, |i| {
            if self.flags[i].load(Ordering::Relaxed) {
                return;
            }
            let p = &self.net.points[i];
            let d2 = (p.w - v.w).powi(2) + (p.x - v.x).powi(2) + (p.y - v.y).powi(2) + (p.z - v.z).powi(2);
            if d2 <= self.chord2 && !self.flags[i].swap(true, Ordering::Relaxed) {
                self.uncovered.fetch_sub(1, Ordering::Relaxed);
            }
        });
    }

    /// Marks every reduced word of exactly `remaining` more letters after
    /// `value`, whose last letter was `last`.
    fn dfs(&self, letters: &[UnitQuaternion; 4], value: UnitQuaternion, last: usize, remaining: usize) {
        if remaining == 0 {
            self.mark(&value);
            return;
        }
        for (li, g) in letters.iter().enumerate() {
            if li == last ^ 1 {
                continue;
            }
            self.dfs(letters, value.mul(g), li, remaining - 1);
        }
    }
}

/// Fraction of `net` within ε of some reduced word in a, b of length at
/// most `word_len`. Words are generated length by length; the search stops
/// after the first length at which the whole net is covered.
pub fn pair_density_probe_with(
    a: UnitQuaternion,
    b: UnitQuaternion,
    word_len: usize,
    epsilon: f64,
    net: &Net,
    exec: Exec,
) -> PairCoverage {
    let chord = 2.0 * (epsilon.clamp(0.0, std::f64::consts::PI) / 2.0).sin();
    let cover = Cover {
        net,
        grid: Grid::new(&net.points, chord.max(1e-9)),
        chord2: chord * chord,
        flags: (0..net.len()).map(|_| AtomicBool::new(false)).collect(),
        uncovered: AtomicUsize::new(net.len()),
    };
    let letters = [a, a.conj(), b, b.conj()];
    cover.mark(&UnitQuaternion::IDENTITY);
    let mut words_evaluated = 1;
    let mut complete_at = (cover.uncovered.load(Ordering::Relaxed) == 0).then_some(0);
    for len in 1..=word_len {
        if complete_at.is_some() {
            break;
        }
        // the 12 reduced two-letter prefixes (or the 4 letters) as tasks
        let prefixes: Vec<(UnitQuaternion, usize)> = if len == 1 {
            (0..4).map(|i| (letters[i], i)).collect()
        } else {
            (0..4)
                .flat_map(|i| (0..4).filter(move |&k| k != i ^ 1).map(move |k| (i, k)))
                .map(|(i, k)| (letters[i].mul(&letters[k]), k))
                .collect()
        };
        let depth = len.saturating_sub(2);
        exec.map(&prefixes, |&(v, last)| cover.dfs(&letters, v, last, depth));
        words_evaluated += 4 * 3usize.pow(len as u32 - 1);
        if cover.uncovered.load(Ordering::Relaxed) == 0 {
            complete_at = Some(len);
        }
    }
    let covered = net.len() - cover.uncovered.load(Ordering::Relaxed);
    PairCoverage {
        word_len,
        epsilon,
        net_size: net.len(),
        covered,
        fraction: if net.is_empty() { 1.0 } else { covered as f64 / net.len() as f64 },
        words_evaluated,
        complete_at,
    }
}

/// [`pair_density_probe_with`] on the standard net.
pub fn pair_density_probe(a: UnitQuaternion, b: UnitQuaternion, word_len: usize, epsilon: f64, exec: Exec) -> PairCoverage {
    pair_density_probe_with(a, b, word_len, epsilon, &Net::standard(), exec)
}
