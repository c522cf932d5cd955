use std::collections::HashMap;

use super::nielsen::{all_moves, Automorphism, NielsenMove, Sign};
use super::word::ReducedWord;
use super::FreeGroupError;

/// A primitive word together with an automorphism sending x_1 to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveWord {
    pub word: ReducedWord,
    pub history: Automorphism,
}

/// Output of [`enumerate_primitives`], sorted shortlex.
#[derive(Debug, Clone)]
pub struct PrimitiveSet {
    pub rank: usize,
    pub max_len: usize,
    pub words: Vec<PrimitiveWord>,
    /// Words queued by the search.
    pub states_visited: usize,
    /// True when the state budget stopped the search early.
    pub truncated: bool,
}

impl PrimitiveSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &ReducedWord) -> bool {
        self.words
            .binary_search_by(|p| p.word.shortlex_key().cmp(&w.shortlex_key()))
            .is_ok()
    }

    pub fn iter_words(&self) -> impl Iterator<Item = &ReducedWord> {
        self.words.iter().map(|p| &p.word)
    }
}

/// Elementary automorphisms used as search steps: every Nielsen move, each
/// transposition of two basis letters, and conjugation of the whole basis by
/// each generator letter.
fn search_steps(rank: usize) -> Vec<Automorphism> {
    let mut steps: Vec<Automorphism> = all_moves(rank)
        .into_iter()
        .map(|m| Automorphism::new(rank, vec![m]).expect("legal move"))
        .collect();
    for k in 1..=rank {
        for j in k + 1..=rank {
            let swap = vec![
                NielsenMove::RightMultiply { i: k, j, sign: Sign::Plus },
                NielsenMove::RightMultiply { i: j, j: k, sign: Sign::Minus },
                NielsenMove::LeftMultiply { i: k, j, sign: Sign::Plus },
                NielsenMove::Invert { j: k },
            ];
            steps.push(Automorphism::new(rank, swap).expect("legal moves"));
        }
        for sign in [Sign::Plus, Sign::Minus] {
            let moves = (1..=rank)
                .filter(|&j| j != k)
                .flat_map(|j| {
                    [
                        NielsenMove::RightMultiply { i: k, j, sign },
                        NielsenMove::LeftMultiply { i: k, j, sign: sign.flip() },
                    ]
                })
                .collect();
            steps.push(Automorphism::new(rank, moves).expect("legal moves"));
        }
    }
    steps
}

/// Sound enumeration of primitive elements of F_n up to length `max_len`.
///
/// Breadth-first search over the orbit of x_1 under elementary
/// automorphisms, never leaving the ball of radius `max_len`. Each found word
/// is φ(p) for an elementary φ and an earlier primitive p = a(x_1), so its
/// history is the moves of φ followed by those of a. Inverses are added with
/// a trailing `Invert(1)`. `budget` caps the number of words queued.
pub fn enumerate_primitives(
    rank: usize,
    max_len: usize,
    budget: usize,
) -> Result<PrimitiveSet, FreeGroupError> {
    if rank < 2 {
        return Err(FreeGroupError::RankTooSmall { rank, min: 2 });
    }
    let steps = search_steps(rank);
    let images: Vec<Vec<ReducedWord>> = steps.iter().map(Automorphism::basis_images).collect();

    // node: (word, parent, step)
    let mut nodes: Vec<(ReducedWord, usize, usize)> = vec![(ReducedWord::generator(rank, 1), 0, usize::MAX)];
    let mut index: HashMap<ReducedWord, usize> = HashMap::new();
    index.insert(nodes[0].0.clone(), 0);
    let mut truncated = false;
    let mut head = 0;
    'bfs: while head < nodes.len() {
        for (s, img) in images.iter().enumerate() {
            let next = nodes[head].0.substitute(img);
            if next.len() > max_len || index.contains_key(&next) {
                continue;
            }
            if nodes.len() >= budget.max(1) {
                truncated = true;
                break 'bfs;
            }
            index.insert(next.clone(), nodes.len());
            nodes.push((next, head, s));
        }
        head += 1;
    }

    let history = |mut n: usize| -> Automorphism {
        let mut moves = Vec::new();
        while nodes[n].2 != usize::MAX {
            moves.extend_from_slice(steps[nodes[n].2].moves());
            n = nodes[n].1;
        }
        Automorphism::new(rank, moves).expect("recorded moves are legal")
    };

    let mut out: HashMap<ReducedWord, Automorphism> = HashMap::new();
    for (n, (w, _, _)) in nodes.iter().enumerate() {
        let aut = history(n);
        let inv_word = w.inverse();
        if !index.contains_key(&inv_word) {
            let mut inv_aut = aut.clone();
            inv_aut.push(NielsenMove::Invert { j: 1 }).expect("legal move");
            out.insert(inv_word, inv_aut);
        }
        out.insert(w.clone(), aut);
    }

    let mut words: Vec<PrimitiveWord> =
        out.into_iter().map(|(word, history)| PrimitiveWord { word, history }).collect();
    words.sort_by_cached_key(|p| p.word.shortlex_key());
    Ok(PrimitiveSet { rank, max_len, words, states_visited: nodes.len(), truncated })
}
