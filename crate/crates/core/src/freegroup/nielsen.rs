use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::word::{FreeGroup, ReducedWord};
use super::FreeGroupError;
use crate::group::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Elementary Nielsen transformation on an ordered basis (indices 1-based).
///
/// On a tuple (g_1, …, g_n):
/// * `RightMultiply { i, j, sign }`: g_j ← g_j · g_i^sign
/// * `LeftMultiply { i, j, sign }`:  g_j ← g_i^sign · g_j
/// * `Invert { j }`:                 g_j ← g_j⁻¹
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NielsenMove {
    RightMultiply { i: usize, j: usize, sign: Sign },
    LeftMultiply { i: usize, j: usize, sign: Sign },
    Invert { j: usize },
}

impl NielsenMove {
    pub fn inverse(self) -> NielsenMove {
        match self {
            NielsenMove::RightMultiply { i, j, sign } => {
                NielsenMove::RightMultiply { i, j, sign: sign.flip() }
            }
            NielsenMove::LeftMultiply { i, j, sign } => {
                NielsenMove::LeftMultiply { i, j, sign: sign.flip() }
            }
            inv @ NielsenMove::Invert { .. } => inv,
        }
    }

    /// Coordinate changed by the move.
    pub fn target(self) -> usize {
        match self {
            NielsenMove::RightMultiply { j, .. }
            | NielsenMove::LeftMultiply { j, .. }
            | NielsenMove::Invert { j } => j,
        }
    }

    fn check(self, rank: usize) -> Result<(), FreeGroupError> {
        let (i, j) = match self {
            NielsenMove::RightMultiply { i, j, .. } | NielsenMove::LeftMultiply { i, j, .. } => {
                (i, j)
            }
            NielsenMove::Invert { j } => (j, j),
        };
        for k in [i, j] {
            if k == 0 || k > rank {
                return Err(FreeGroupError::IndexOutOfRange { index: k, rank });
            }
        }
        if !matches!(self, NielsenMove::Invert { .. }) && i == j {
            return Err(FreeGroupError::DegenerateMove(self));
        }
        Ok(())
    }

    /// Applies the move to a tuple in place. Indices must already be valid.
    pub fn apply_in_place<G: Group>(self, group: &G, t: &mut [G::Elem]) {
        match self {
            NielsenMove::RightMultiply { i, j, sign } => {
                let gi = match sign {
                    Sign::Plus => t[i - 1].clone(),
                    Sign::Minus => group.inv(&t[i - 1]),
                };
                t[j - 1] = group.mul(&t[j - 1], &gi);
            }
            NielsenMove::LeftMultiply { i, j, sign } => {
                let gi = match sign {
                    Sign::Plus => t[i - 1].clone(),
                    Sign::Minus => group.inv(&t[i - 1]),
                };
                t[j - 1] = group.mul(&gi, &t[j - 1]);
            }
            NielsenMove::Invert { j } => {
                t[j - 1] = group.inv(&t[j - 1]);
            }
        }
    }
}

impl fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |sign: &Sign| if *sign == Sign::Plus { '+' } else { '-' };
        match self {
            NielsenMove::RightMultiply { i, j, sign } => write!(f, "R{}({i},{j})", s(sign)),
            NielsenMove::LeftMultiply { i, j, sign } => write!(f, "L{}({i},{j})", s(sign)),
            NielsenMove::Invert { j } => write!(f, "I({j})"),
        }
    }
}

/// Every legal Nielsen move in rank n: 4·n·(n−1) multiplications and n inversions.
pub fn all_moves(rank: usize) -> Vec<NielsenMove> {
    let mut out = Vec::with_capacity(4 * rank * rank.saturating_sub(1) + rank);
    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(NielsenMove::RightMultiply { i, j, sign });
                out.push(NielsenMove::LeftMultiply { i, j, sign });
            }
        }
    }
    out.extend((1..=rank).map(|j| NielsenMove::Invert { j }));
    out
}

/// An automorphism of F_n presented as a sequence of Nielsen moves applied
/// left to right to the standard basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    rank: usize,
    moves: Vec<NielsenMove>,
}

impl Automorphism {
    pub fn new(rank: usize, moves: Vec<NielsenMove>) -> Result<Self, FreeGroupError> {
        for m in &moves {
            m.check(rank)?;
        }
        Ok(Automorphism { rank, moves })
    }

    pub fn identity(rank: usize) -> Self {
        Automorphism { rank, moves: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moves(&self) -> &[NielsenMove] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Reversed sequence of inverse moves.
    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            rank: self.rank,
            moves: self.moves.iter().rev().map(|m| m.inverse()).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Automorphism) -> Automorphism {
        assert_eq!(self.rank, next.rank, "rank mismatch");
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&next.moves);
        Automorphism { rank: self.rank, moves }
    }

    pub fn push(&mut self, m: NielsenMove) -> Result<(), FreeGroupError> {
        m.check(self.rank)?;
        self.moves.push(m);
        Ok(())
    }

    /// Images of the standard basis x_1, …, x_n.
    pub fn basis_images(&self) -> Vec<ReducedWord> {
        let fg = FreeGroup { rank: self.rank };
        let mut t = fg.standard_basis();
        for m in &self.moves {
            m.apply_in_place(&fg, &mut t);
        }
        t
    }
}

/// Applies the automorphism to a word by basis substitution.
///
/// The moves act left to right on the standard basis; the image of w is w
/// with each x_k replaced by the k-th resulting basis word. Evaluating the
/// image on a tuple t agrees with evaluating w on `act_on_tuple(a, t)`.
pub fn apply_automorphism(a: &Automorphism, w: &ReducedWord) -> Result<ReducedWord, FreeGroupError> {
    if a.rank != w.rank() {
        return Err(FreeGroupError::RankMismatch { expected: a.rank, got: w.rank() });
    }
    Ok(w.substitute(&a.basis_images()))
}

/// Acts on an n-tuple of group elements, one coordinate per move.
pub fn act_on_tuple<G: Group>(
    a: &Automorphism,
    t: &[G::Elem],
    group: &G,
) -> Result<Vec<G::Elem>, FreeGroupError> {
    if t.len() != a.rank {
        return Err(FreeGroupError::RankMismatch { expected: a.rank, got: t.len() });
    }
    let mut out = t.to_vec();
    for m in &a.moves {
        m.apply_in_place(group, &mut out);
    }
    Ok(out)
}

/// Seeded sampler: `length` independent uniform choices among all legal moves.
pub fn random_automorphism(rank: usize, length: usize, seed: u64) -> Automorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_automorphism_with(rank, length, &mut rng)
}

pub fn random_automorphism_with<R: Rng + ?Sized>(rank: usize, length: usize, rng: &mut R) -> Automorphism {
    let moves = all_moves(rank);
    let picked = (0..length).map(|_| moves[rng.random_range(0..moves.len())]).collect();
    Automorphism { rank, moves: picked }
}
