use std::fmt;

use super::FreeGroupError;
use crate::group::Group;

/// A generator x_k or its inverse, stored as the signed index ±k (k ≥ 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        let k = index as i32;
        Letter(if inverse { -k } else { k })
    }

    /// Generator index in 1..=rank.
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    fn order_rank(self) -> u32 {
        2 * (self.index() as u32 - 1) + u32::from(self.is_inverse())
    }

    fn cancels(self, other: Letter) -> bool {
        self.0 == -other.0
    }
}

/// Freely reduced word in the free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    rank: usize,
    letters: Vec<Letter>,
}

/// Free reduction of a raw letter sequence.
pub fn normalize(letters: &[Letter], rank: usize) -> Result<ReducedWord, FreeGroupError> {
    if let Some(bad) = letters.iter().find(|l| l.index() > rank) {
        return Err(FreeGroupError::IndexOutOfRange { index: bad.index(), rank });
    }
    Ok(ReducedWord { rank, letters: reduce(letters.iter().copied()) })
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last().is_some_and(|&top| top.cancels(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl ReducedWord {
    pub fn identity(rank: usize) -> Self {
        ReducedWord { rank, letters: Vec::new() }
    }

    /// The generator x_index.
    pub fn generator(rank: usize, index: usize) -> Self {
        assert!((1..=rank).contains(&index), "generator index out of range");
        ReducedWord { rank, letters: vec![Letter::new(index, false)] }
    }

    pub fn from_letters(letters: &[Letter], rank: usize) -> Result<Self, FreeGroupError> {
        normalize(letters, rank)
    }

    /// Builds from signed indices, e.g. `[1, -2]` for x1·x2⁻¹.
    pub fn from_signed(signed: &[i32], rank: usize) -> Result<Self, FreeGroupError> {
        if signed.contains(&0) {
            return Err(FreeGroupError::IndexOutOfRange { index: 0, rank });
        }
        let letters: Vec<Letter> = signed.iter().map(|&s| Letter(s)).collect();
        normalize(&letters, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        debug_assert_eq!(self.rank, other.rank);
        // only the junction can cancel
        let mut letters = self.letters.clone();
        let mut rest = other.letters.iter().copied().peekable();
        while let (Some(&a), Some(&b)) = (letters.last(), rest.peek()) {
            if a.cancels(b) {
                letters.pop();
                rest.next();
            } else {
                break;
            }
        }
        letters.extend(rest);
        ReducedWord { rank: self.rank, letters }
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Sort key: shortlex with letters ordered x1 < x1⁻¹ < x2 < x2⁻¹ < ….
    pub fn shortlex_key(&self) -> (usize, Vec<u32>) {
        (self.len(), self.letters.iter().map(|l| l.order_rank()).collect())
    }

    /// True for a nontrivial proper power w = v^k with |k| ≥ 2.
    pub fn is_proper_power(&self) -> bool {
        // cyclically reduce, then look for a nontrivial period of the core
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        let core = &self.letters[lo..hi];
        let n = core.len();
        (1..n).any(|p| n.is_multiple_of(p) && n / p >= 2 && (p..n).all(|i| core[i] == core[i - p]))
    }

    /// Image under the substitution x_k ↦ images[k-1].
    pub fn substitute(&self, images: &[ReducedWord]) -> ReducedWord {
        let rank = images.first().map_or(self.rank, ReducedWord::rank);
        self.letters.iter().fold(ReducedWord::identity(rank), |acc, l| {
            let img = &images[l.index() - 1];
            if l.is_inverse() {
                acc.mul(&img.inverse())
            } else {
                acc.mul(img)
            }
        })
    }

    /// Parses `x1*x2^-1*x1`; `1` or `e` is the empty word and `^k` takes any
    /// integer exponent.
    pub fn parse(s: &str, rank: usize) -> Result<ReducedWord, FreeGroupError> {
        let trimmed = s.trim();
        if trimmed == "1" || trimmed == "e" || trimmed.is_empty() {
            return Ok(ReducedWord::identity(rank));
        }
        let mut letters = Vec::new();
        let mut offset = s.len() - s.trim_start().len();
        for factor in trimmed.split('*') {
            let bad = |msg: &str| FreeGroupError::Parse { offset, message: msg.to_string() };
            let f = factor.trim();
            let body = f.strip_prefix('x').ok_or_else(|| bad("expected 'x<index>'"))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i.trim(), e.trim().parse::<i64>().map_err(|_| bad("bad exponent"))?),
                None => (body, 1),
            };
            let index: usize = idx.parse().map_err(|_| bad("bad generator index"))?;
            if index == 0 || index > rank {
                return Err(FreeGroupError::IndexOutOfRange { index, rank });
            }
            let l = Letter::new(index, exp < 0);
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
            offset += factor.len() + 1;
        }
        normalize(&letters, rank)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if l.is_inverse() {
                write!(f, "x{}^-1", l.index())?;
            } else {
                write!(f, "x{}", l.index())?;
            }
        }
        Ok(())
    }
}

/// The free group itself, as a [`Group`] on reduced words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl Group for FreeGroup {
    type Elem = ReducedWord;

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity(self.rank)
    }
    fn mul(&self, a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
        a.mul(b)
    }
    fn inv(&self, a: &ReducedWord) -> ReducedWord {
        a.inverse()
    }
}

impl FreeGroup {
    pub fn standard_basis(&self) -> Vec<ReducedWord> {
        (1..=self.rank).map(|k| ReducedWord::generator(self.rank, k)).collect()
    }
}

impl serde::Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
