//! Free groups: reduced words, Nielsen moves, automorphisms as move
//! sequences, the induced action on tuples, and primitive enumeration.

mod eval;
mod nielsen;
mod primitives;
mod word;

pub use eval::{evaluate, words_up_to, Evaluator};
pub use nielsen::{
    act_on_tuple, all_moves, apply_automorphism, random_automorphism, random_automorphism_with,
    Automorphism, NielsenMove, Sign,
};
pub use primitives::{enumerate_primitives, PrimitiveSet, PrimitiveWord};
pub use word::{normalize, FreeGroup, Letter, ReducedWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeGroupError {
    #[error("generator index {index} outside 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("rank {rank} too small, need at least {min}")]
    RankTooSmall { rank: usize, min: usize },
    #[error("move {0} multiplies a coordinate by itself")]
    DegenerateMove(NielsenMove),
    #[error("word literal, column {}: {message}", .offset + 1)]
    Parse { offset: usize, message: String },
}
