//! `(n-d)`-domino tilings of `[0,2]^n`, twin pairs and flips.

mod enumerate;

pub use enumerate::{all_dominoes, exact_cover_by_cells, CellSet, Region, TilingEnumerator, MAX_REGION_DIM};

use std::fmt;

use thiserror::Error;

use crate::word::{bit_positions, Trit, TritWord, WordError, MAX_LEN};

/// Largest `d` accepted for a tiling (`2^d` words).
pub const MAX_D: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("need 1 <= d <= n <= {MAX_LEN} and d <= {MAX_D}, got n={n} d={d}")]
    BadParameters { n: usize, d: usize },
    #[error("word {word} has length {found}, expected {expected}")]
    WrongLength { word: String, expected: usize, found: usize },
    #[error("expected 2^d = {expected} distinct words, found {found}")]
    Cardinality { expected: usize, found: usize },
    #[error("word {word} has {found} non-star entries, expected {expected}")]
    PropCount { word: TritWord, expected: usize, found: usize },
    #[error("words {0} and {1} are not dichotomous")]
    NotDichotomous(TritWord, TritWord),
    #[error("pair ({0}, {1}) is not in the tiling")]
    PairNotInTiling(TritWord, TritWord),
    #[error("words {0} and {1} do not form a twin pair")]
    NotTwinPair(TritWord, TritWord),
    #[error("malformed flip step: {0}")]
    MalformedFlip(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A set of `2^d` pairwise dichotomous words of length `n`, each with exactly
/// `d` non-star entries. Words are kept sorted, so equal tilings compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominoTiling {
    n: usize,
    d: usize,
    words: Vec<TritWord>,
}

impl fmt::Debug for DominoTiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DominoTiling(n={}, d={}, {{", self.n, self.d)?;
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}})")
    }
}

/// A twin pair of a tiling together with the axis it splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwinPair {
    /// Sorted, `words[0] < words[1]`.
    pub words: [TritWord; 2],
    pub axis: usize,
}

impl TwinPair {
    pub fn new(u: TritWord, q: TritWord) -> Result<TwinPair, TilingError> {
        let axis = u.twin_pair_axis(&q)?.ok_or(TilingError::NotTwinPair(u, q))?;
        let words = if u < q { [u, q] } else { [q, u] };
        Ok(TwinPair { words, axis })
    }

    /// The `(n-(d-1))`-domino `u ∪ q`.
    pub fn glued(&self) -> TritWord {
        self.words[0].with(self.axis, Trit::Star)
    }
}

/// Replacement of one twin pair by another with the same union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipStep {
    pub removed: TwinPair,
    pub inserted: TwinPair,
}

impl FlipStep {
    /// Checks that both pairs glue to the same domino along different axes.
    pub fn new(removed: TwinPair, inserted: TwinPair) -> Result<FlipStep, TilingError> {
        let step = FlipStep { removed, inserted };
        if removed.axis == inserted.axis {
            return Err(TilingError::MalformedFlip(format!("both pairs split axis {}", removed.axis + 1)));
        }
        if removed.glued() != inserted.glued() {
            return Err(TilingError::MalformedFlip(format!(
                "unions differ: {} vs {}",
                removed.glued(),
                inserted.glued()
            )));
        }
        Ok(step)
    }

    pub fn inverse(&self) -> FlipStep {
        FlipStep { removed: self.inserted, inserted: self.removed }
    }

    /// True iff the step removes or inserts `w`.
    pub fn touches(&self, w: &TritWord) -> bool {
        self.removed.words.contains(w) || self.inserted.words.contains(w)
    }
}

/// One factor of a domino box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: u8,
    pub hi: u8,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// The box of `[0,2]^n` named by `w`: `0 -> [0,1]`, `1 -> [1,2]`, `* -> [0,2]`.
pub fn to_box(w: &TritWord) -> Vec<Interval> {
    w.trits()
        .map(|t| match t {
            Trit::Zero => Interval { lo: 0, hi: 1 },
            Trit::One => Interval { lo: 1, hi: 2 },
            Trit::Star => Interval { lo: 0, hi: 2 },
        })
        .collect()
}

/// Checks the tiling invariants and returns the tiling, or the first violation.
///
/// Cardinality `2^d`, exactly `d` non-stars per word, and pairwise dichotomy
/// together force an exact cover: the boxes have disjoint interiors and their
/// volumes `2^(n-d)` add up to `2^n`.
pub fn validate_tiling(words: &[TritWord], n: usize, d: usize) -> Result<DominoTiling, TilingError> {
    if d == 0 || d > n || n > MAX_LEN || d > MAX_D {
        return Err(TilingError::BadParameters { n, d });
    }
    for w in words {
        if w.len() != n {
            return Err(TilingError::WrongLength { word: w.to_string(), expected: n, found: w.len() });
        }
    }
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != 1 << d {
        return Err(TilingError::Cardinality { expected: 1 << d, found: sorted.len() });
    }
    if let Some(w) = sorted.iter().find(|w| w.weight() != d) {
        return Err(TilingError::PropCount { word: *w, expected: d, found: w.weight() });
    }
    for (i, u) in sorted.iter().enumerate() {
        for q in &sorted[i + 1..] {
            if u.dichotomy_mask(q) == 0 {
                return Err(TilingError::NotDichotomous(*u, *q));
            }
        }
    }
    Ok(DominoTiling { n, d, words: sorted })
}

impl DominoTiling {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Words in ascending text order.
    pub fn words(&self) -> &[TritWord] {
        &self.words
    }

    pub fn contains(&self, w: &TritWord) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Union of the non-star masks of all words.
    pub fn support_mask(&self) -> u64 {
        self.words.iter().fold(0, |m, w| m | w.mask())
    }

    /// Columns (0-based) that are `*` in every word.
    pub fn star_columns(&self) -> Vec<usize> {
        let support = self.support_mask();
        (0..self.n).filter(|&j| support >> j & 1 == 0).collect()
    }

    /// All twin pairs, sorted by their word encodings.
    pub fn twin_pairs(&self) -> Vec<TwinPair> {
        let mut pairs = Vec::new();
        for u in &self.words {
            for axis in bit_positions(u.mask()) {
                if u.get(axis) != Trit::Zero {
                    continue;
                }
                let q = u.with(axis, Trit::One);
                if self.contains(&q) {
                    pairs.push(TwinPair { words: [*u, q], axis });
                }
            }
        }
        pairs.sort();
        pairs
    }

    /// The `n-d` flips of the twin pair `{u, q}`, one per star axis of `u ∪ q`
    /// other than the pair's own axis, ascending by axis.
    pub fn flips_of(&self, u: &TritWord, q: &TritWord) -> Result<Vec<FlipStep>, TilingError> {
        let pair = TwinPair::new(*u, *q)?;
        if !self.contains(u) || !self.contains(q) {
            return Err(TilingError::PairNotInTiling(*u, *q));
        }
        let glued = pair.glued();
        let flips = (0..self.n)
            .filter(|&k| k != pair.axis && glued.get(k) == Trit::Star)
            .map(|k| FlipStep {
                removed: pair,
                inserted: TwinPair { words: [glued.with(k, Trit::Zero), glued.with(k, Trit::One)], axis: k },
            })
            .collect();
        Ok(flips)
    }

    /// Every flip of every twin pair.
    pub fn all_flips(&self) -> Vec<FlipStep> {
        self.twin_pairs()
            .iter()
            .flat_map(|p| self.flips_of(&p.words[0], &p.words[1]).expect("pair comes from the tiling"))
            .collect()
    }

    /// `(D \ {A,B}) ∪ {C,D}`.
    pub fn apply_flip(&self, step: &FlipStep) -> Result<DominoTiling, TilingError> {
        FlipStep::new(step.removed, step.inserted)?;
        let [u, q] = step.removed.words;
        if !self.contains(&u) || !self.contains(&q) {
            return Err(TilingError::PairNotInTiling(u, q));
        }
        if step.inserted.words[0].len() != self.n {
            return Err(TilingError::MalformedFlip("inserted words have the wrong length".into()));
        }
        let mut words: Vec<TritWord> = self.words.iter().copied().filter(|w| *w != u && *w != q).collect();
        words.extend(step.inserted.words);
        words.sort();
        let next = DominoTiling { n: self.n, d: self.d, words };
        debug_assert!(validate_tiling(&next.words, next.n, next.d).is_ok());
        Ok(next)
    }

    /// Replays a sequence of flips.
    pub fn apply_flips<'a>(&self, steps: impl IntoIterator<Item = &'a FlipStep>) -> Result<DominoTiling, TilingError> {
        let mut t = self.clone();
        for s in steps {
            t = t.apply_flip(s)?;
        }
        Ok(t)
    }

    /// Deletes every all-star column. Returns the reduced tiling and the removed
    /// column indices (0-based, ascending).
    ///
    /// A tiling with `n = d` has no star columns; the reduction never drops `n`
    /// below `d`.
    pub fn star_reduce(&self) -> (DominoTiling, Vec<usize>) {
        let removed = self.star_columns();
        let mut words = self.words.clone();
        for &j in removed.iter().rev() {
            for w in &mut words {
                *w = w.delete(j).expect("reduced length stays >= d >= 1");
            }
        }
        words.sort();
        (DominoTiling { n: self.n - removed.len(), d: self.d, words }, removed)
    }

    /// Reorders columns: new column `p` is old column `order[p]`.
    pub fn permute_columns(&self, order: &[usize]) -> Result<DominoTiling, TilingError> {
        let mut seen = vec![false; self.n];
        if order.len() != self.n || order.iter().any(|&j| j >= self.n || std::mem::replace(&mut seen[j], true)) {
            return Err(TilingError::MalformedFlip(format!("{order:?} is not a permutation of the columns")));
        }
        let mut words = self.words.iter().map(|w| w.permute(order)).collect::<Result<Vec<_>, _>>()?;
        words.sort();
        Ok(DominoTiling { n: self.n, d: self.d, words })
    }

    /// Inserts an all-star column before position `at` (`at == n` appends).
    pub fn insert_star_column(&self, at: usize) -> Result<DominoTiling, TilingError> {
        if at > self.n || self.n + 1 > MAX_LEN {
            return Err(TilingError::BadParameters { n: self.n + 1, d: self.d });
        }
        let low = (1u64 << at) - 1;
        let spread = |x: u64| (x & low) | ((x & !low) << 1);
        let mut words = self
            .words
            .iter()
            .map(|w| TritWord::from_masks(self.n + 1, spread(w.mask()), spread(w.bits())))
            .collect::<Result<Vec<_>, _>>()?;
        words.sort();
        Ok(DominoTiling { n: self.n + 1, d: self.d, words })
    }
}

/// Free-function form of [`DominoTiling::twin_pairs`].
pub fn find_twin_pairs(t: &DominoTiling) -> Vec<TwinPair> {
    t.twin_pairs()
}

/// Free-function form of [`DominoTiling::flips_of`].
pub fn enumerate_flips(t: &DominoTiling, u: &TritWord, q: &TritWord) -> Result<Vec<FlipStep>, TilingError> {
    t.flips_of(u, q)
}

/// Free-function form of [`DominoTiling::apply_flip`].
pub fn apply_flip(t: &DominoTiling, step: &FlipStep) -> Result<DominoTiling, TilingError> {
    t.apply_flip(step)
}

/// Free-function form of [`DominoTiling::star_reduce`].
pub fn star_reduce(t: &DominoTiling) -> (DominoTiling, Vec<usize>) {
    t.star_reduce()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn words(list: &[&str]) -> Vec<TritWord> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    pub fn tiling(list: &[&str]) -> DominoTiling {
        let ws = words(list);
        let n = ws[0].len();
        let d = ws[0].weight();
        validate_tiling(&ws, n, d).unwrap()
    }

    pub const REGULAR_7D: [&str; 8] =
        ["0*0*0**", "1*1*1**", "*00*1**", "*10*1**", "0*1**1*", "0*1**0*", "1**00**", "1**10**"];

    /// `{*01e, 1*0e, 01*e : e in {0,1}} ∪ {000*, 111*}` read literally. A valid
    /// tiling, but `*010`/`*011` and two more pairs are twins.
    pub const LITERAL_4D: [&str; 8] = ["*010", "*011", "1*00", "1*01", "01*0", "01*1", "000*", "111*"];

    /// `{v, v'}` for `v` in `{*010, 1*00, 01*0, 000*}`: the complement-closed
    /// tiling of `[0,2]^4` with no twin pair.
    pub const TWIN_FREE_4D: [&str; 8] = ["*010", "*101", "1*00", "0*11", "01*0", "10*1", "000*", "111*"];
}
