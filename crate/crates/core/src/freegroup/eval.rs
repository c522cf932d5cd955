use std::ops::ControlFlow;

use super::word::ReducedWord;
use crate::group::Group;

/// Evaluates words on a fixed tuple, with generator inverses computed once.
pub struct Evaluator<'a, G: Group> {
    group: &'a G,
    gens: Vec<G::Elem>,
    invs: Vec<G::Elem>,
}

impl<'a, G: Group> Evaluator<'a, G> {
    pub fn new(group: &'a G, tuple: &[G::Elem]) -> Self {
        let invs = tuple.iter().map(|g| group.inv(g)).collect();
        Evaluator { group, gens: tuple.to_vec(), invs }
    }

    pub fn group(&self) -> &G {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    fn letter(&self, l: super::word::Letter) -> &G::Elem {
        if l.is_inverse() {
            &self.invs[l.index() - 1]
        } else {
            &self.gens[l.index() - 1]
        }
    }

    pub fn eval(&self, w: &ReducedWord) -> G::Elem {
        let mut it = w.letters().iter();
        let Some(&first) = it.next() else {
            return self.group.identity();
        };
        it.fold(self.letter(first).clone(), |acc, &l| self.group.mul(&acc, self.letter(l)))
    }

    /// Evaluates a batch, reusing prefix products between consecutive words.
    ///
    /// Shortlex or lexicographically sorted input shares long prefixes, so
    /// most words cost about one multiplication. The callback may stop the
    /// batch early.
    pub fn eval_batch<'w, I, F, B>(&self, words: I, mut f: F) -> Option<B>
    where
        I: IntoIterator<Item = &'w ReducedWord>,
        F: FnMut(usize, &'w ReducedWord, &G::Elem) -> ControlFlow<B>,
    {
        let mut stack: Vec<G::Elem> = vec![self.group.identity()];
        let mut prev: &[super::word::Letter] = &[];
        for (idx, w) in words.into_iter().enumerate() {
            let letters = w.letters();
            let common = prev.iter().zip(letters).take_while(|(a, b)| a == b).count();
            stack.truncate(common + 1);
            for &l in &letters[common..] {
                let top = stack.last().expect("stack holds the identity");
                stack.push(self.group.mul(top, self.letter(l)));
            }
            prev = letters;
            if let ControlFlow::Break(b) = f(idx, w, stack.last().expect("nonempty")) {
                return Some(b);
            }
        }
        None
    }
}

/// Evaluates a word on a tuple: x_k ↦ tuple[k-1].
pub fn evaluate<G: Group>(group: &G, tuple: &[G::Elem], w: &ReducedWord) -> G::Elem {
    Evaluator::new(group, tuple).eval(w)
}

/// All reduced words of length 1..=max_len in `rank` generators, shortlex.
pub fn words_up_to(rank: usize, max_len: usize) -> Vec<ReducedWord> {
    let mut out = Vec::new();
    let mut layer = vec![ReducedWord::identity(rank)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in signed_letters(rank) {
                let g = ReducedWord::from_signed(&[s], rank).expect("valid letter");
                let candidate = w.mul(&g);
                if candidate.len() == w.len() + 1 {
                    next.push(candidate);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort_by_cached_key(ReducedWord::shortlex_key);
    out
}

fn signed_letters(rank: usize) -> impl Iterator<Item = i32> {
    (1..=rank as i32).flat_map(|k| [k, -k])
}
