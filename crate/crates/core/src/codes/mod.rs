//! Cube tiling codes: `2^d` pairwise dichotomous words over an involutive
//! alphabet, their shifts, letter merging and relabeling.

mod census;
mod realize;
mod search;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::tiling::MAX_D;
use crate::word::{CodeWord, Letter};

pub use census::{letter_sum_census, Census, MAX_CENSUS_VERTICES};
pub use realize::{realize, Piece, RationalSet, Realization, RealizeError};
pub use search::{shift_path_search, SearchOptions, ShiftSearch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code length {0} unsupported (need 1..={MAX_D})")]
    BadLength(usize),
    #[error("word {0:?} has length {1}, expected {2}")]
    WrongLength(CodeWord, usize, usize),
    #[error("a cube code of length {d} has {expected} words, got {found}")]
    Cardinality { d: usize, expected: usize, found: usize },
    #[error("words {0:?} and {1:?} are not dichotomous")]
    NotDichotomous(CodeWord, CodeWord),
    #[error("pair {0:?}, {1:?} is not in the code")]
    PairAbsent(CodeWord, CodeWord),
    #[error("{0:?} and {1:?} are not a twin pair")]
    NotTwinPair(CodeWord, CodeWord),
    #[error("malformed shift: {0}")]
    MalformedShift(&'static str),
    #[error("coordinate {0} out of range")]
    BadCoordinate(usize),
    #[error("merge precondition: {0}")]
    MergePrecondition(&'static str),
    #[error("rewriting coordinate {0} does not give a code: {1}")]
    Collision(usize, Box<CodeError>),
}

/// A cube tiling code. Words are kept sorted, so equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubeCode {
    d: usize,
    words: Vec<CodeWord>,
}

impl fmt::Debug for CubeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubeCode").field("d", &self.d).field("words", &self.words).finish()
    }
}

/// Per-coordinate letter sets `S_i`, each sorted and closed under complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterProfile {
    pub sets: Vec<Vec<Letter>>,
}

impl LetterProfile {
    /// `l_i`, the number of complementary pairs at coordinate `i`.
    pub fn l(&self, i: usize) -> usize {
        self.sets[i].len() / 2
    }

    pub fn ls(&self) -> Vec<usize> {
        (0..self.sets.len()).map(|i| self.l(i)).collect()
    }

    pub fn sum(&self) -> usize {
        self.sets.iter().map(|s| s.len() / 2).sum()
    }

    /// Coordinate-wise union, the letters a search restricted to existing pairs may use.
    pub fn union(&self, other: &LetterProfile) -> LetterProfile {
        let sets = self
            .sets
            .iter()
            .zip(&other.sets)
            .map(|(a, b)| a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        LetterProfile { sets }
    }
}

/// Checks that `words` is a cube tiling code of length `d = words[0].len()`.
pub fn validate_cube_code(words: &[CodeWord]) -> Result<CubeCode, CodeError> {
    let d = words.first().map_or(0, CodeWord::len);
    if d == 0 || d > MAX_D {
        return Err(CodeError::BadLength(d));
    }
    if let Some(w) = words.iter().find(|w| w.len() != d) {
        return Err(CodeError::WrongLength(w.clone(), w.len(), d));
    }
    if words.len() != 1 << d {
        return Err(CodeError::Cardinality { d, expected: 1 << d, found: words.len() });
    }
    let mut sorted = words.to_vec();
    sorted.sort();
    for (a, u) in sorted.iter().enumerate() {
        for v in &sorted[a + 1..] {
            if !u.is_dichotomous(v) {
                return Err(CodeError::NotDichotomous(u.clone(), v.clone()));
            }
        }
    }
    Ok(CubeCode { d, words: sorted })
}

/// A shift `{v,w} -> {u,q}` at `axis`. Both pairs are stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftStep {
    pub removed: [CodeWord; 2],
    pub inserted: [CodeWord; 2],
    pub axis: usize,
}

fn sorted_pair(a: CodeWord, b: CodeWord) -> [CodeWord; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

impl ShiftStep {
    pub fn new(v: CodeWord, w: CodeWord, u: CodeWord, q: CodeWord) -> Result<ShiftStep, CodeError> {
        let axis = v.twin_pair_axis(&w).ok_or_else(|| CodeError::NotTwinPair(v.clone(), w.clone()))?;
        if u.twin_pair_axis(&q) != Some(axis) {
            return Err(CodeError::NotTwinPair(u, q));
        }
        if v.get(axis).unprimed() == u.get(axis).unprimed() {
            return Err(CodeError::MalformedShift("inserted pair uses the removed letters"));
        }
        if (0..v.len()).any(|j| j != axis && v.get(j) != u.get(j)) {
            return Err(CodeError::MalformedShift("pairs differ off the shift axis"));
        }
        Ok(ShiftStep { removed: sorted_pair(v, w), inserted: sorted_pair(u, q), axis })
    }

    pub fn inverse(&self) -> ShiftStep {
        ShiftStep { removed: self.inserted.clone(), inserted: self.removed.clone(), axis: self.axis }
    }

    /// Letter of the inserted pair at the axis, unprimed.
    pub fn target_letter(&self) -> Letter {
        self.inserted[0].get(self.axis).unprimed()
    }

    pub fn source_letter(&self) -> Letter {
        self.removed[0].get(self.axis).unprimed()
    }
}

impl CubeCode {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn words(&self) -> &[CodeWord] {
        &self.words
    }

    pub fn contains(&self, w: &CodeWord) -> bool {
        self.words.binary_search(w).is_ok()
    }

    fn from_unsorted_unchecked(d: usize, mut words: Vec<CodeWord>) -> CubeCode {
        words.sort();
        debug_assert!(validate_cube_code(&words).is_ok());
        CubeCode { d, words }
    }

    pub fn letter_profile(&self) -> LetterProfile {
        let sets = (0..self.d)
            .map(|i| self.words.iter().map(|w| w.get(i)).collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        LetterProfile { sets }
    }

    /// True iff every coordinate uses a single complementary pair.
    pub fn is_simple(&self) -> bool {
        (0..self.d).all(|i| self.words.iter().all(|w| w.get(i).unprimed() == self.words[0].get(i).unprimed()))
    }

    /// Twin pairs `(v, w, axis)` with `v < w`, in order of `v` then axis.
    pub fn twin_pairs(&self) -> Vec<(CodeWord, CodeWord, usize)> {
        let mut out = Vec::new();
        for v in &self.words {
            for i in 0..self.d {
                let w = v.with(i, v.get(i).complement());
                if *v < w && self.contains(&w) {
                    out.push((v.clone(), w, i));
                }
            }
        }
        out
    }

    /// Shifts of the twin pair `(v, w)` to every other complementary pair
    /// whose letters occur in `letters`, ordered by letter.
    pub fn enumerate_shifts(&self, v: &CodeWord, w: &CodeWord, letters: &[Letter]) -> Result<Vec<ShiftStep>, CodeError> {
        if !self.contains(v) || !self.contains(w) {
            return Err(CodeError::PairAbsent(v.clone(), w.clone()));
        }
        let axis = v.twin_pair_axis(w).ok_or_else(|| CodeError::NotTwinPair(v.clone(), w.clone()))?;
        let own = v.get(axis).unprimed();
        let targets: BTreeSet<Letter> = letters.iter().map(|l| l.unprimed()).filter(|&l| l != own).collect();
        Ok(targets
            .into_iter()
            .map(|s| ShiftStep {
                removed: sorted_pair(v.clone(), w.clone()),
                inserted: sorted_pair(v.with(axis, s), v.with(axis, s.complement())),
                axis,
            })
            .collect())
    }

    pub fn apply_shift(&self, s: &ShiftStep) -> Result<CubeCode, CodeError> {
        let [v, w] = &s.removed;
        if !self.contains(v) || !self.contains(w) {
            return Err(CodeError::PairAbsent(v.clone(), w.clone()));
        }
        let mut words: Vec<CodeWord> = self.words.iter().filter(|x| *x != v && *x != w).cloned().collect();
        words.extend(s.inserted.iter().cloned());
        Ok(CubeCode::from_unsorted_unchecked(self.d, words))
    }

    pub fn apply_shifts<'a>(&self, steps: impl IntoIterator<Item = &'a ShiftStep>) -> Result<CubeCode, CodeError> {
        let mut code = self.clone();
        for s in steps {
            code = code.apply_shift(s)?;
        }
        Ok(code)
    }

    fn check_coordinate(&self, i: usize) -> Result<(), CodeError> {
        if i < self.d {
            Ok(())
        } else {
            Err(CodeError::BadCoordinate(i))
        }
    }

    /// Rewrites `from -> to` and `from' -> to'` at coordinate `i`, merging two
    /// letter pairs into one.
    pub fn merge_letters(&self, i: usize, from: Letter, to: Letter) -> Result<CubeCode, CodeError> {
        self.check_coordinate(i)?;
        if from.unprimed() == to.unprimed() {
            return Err(CodeError::MergePrecondition("the two letter pairs coincide"));
        }
        let present = |l: Letter| self.words.iter().any(|w| w.get(i).unprimed() == l.unprimed());
        if !present(from) || !present(to) {
            return Err(CodeError::MergePrecondition("both letter pairs must occur at the coordinate"));
        }
        self.rewrite(i, from, to)
    }

    /// Substitutes `l -> s`, `l' -> s'` at coordinate `i`. The identity when
    /// `l` does not occur there.
    pub fn relabel_coordinate(&self, i: usize, l: Letter, s: Letter) -> Result<CubeCode, CodeError> {
        self.check_coordinate(i)?;
        self.rewrite(i, l, s)
    }

    fn rewrite(&self, i: usize, from: Letter, to: Letter) -> Result<CubeCode, CodeError> {
        let words: Vec<CodeWord> = self
            .words
            .iter()
            .map(|w| {
                let x = w.get(i);
                if x == from {
                    w.with(i, to)
                } else if x == from.complement() {
                    w.with(i, to.complement())
                } else {
                    w.clone()
                }
            })
            .collect();
        validate_cube_code(&words).map_err(|e| CodeError::Collision(i, Box::new(e)))
    }

    /// True iff `other` arises from `self` by renaming letters coordinate-wise
    /// (each coordinate's pairs mapped bijectively, primes possibly swapped).
    pub fn is_renaming_of(&self, other: &CubeCode) -> bool {
        if self.d != other.d {
            return false;
        }
        let (p, q) = (self.letter_profile(), other.letter_profile());
        if p.ls() != q.ls() {
            return false;
        }
        let target: HashSet<&CodeWord> = other.words.iter().collect();
        let pairs = |prof: &LetterProfile, i: usize| -> Vec<Letter> {
            prof.sets[i].iter().filter(|l| !l.is_primed()).copied().collect()
        };
        let from: Vec<Vec<Letter>> = (0..self.d).map(|i| pairs(&p, i)).collect();
        let to: Vec<Vec<Letter>> = (0..self.d).map(|i| pairs(&q, i)).collect();
        let mut maps: Vec<Vec<(Letter, Letter)>> = vec![Vec::new(); self.d];
        self.renaming_search(&from, &to, &mut maps, 0, &target)
    }

    fn renaming_search(
        &self,
        from: &[Vec<Letter>],
        to: &[Vec<Letter>],
        maps: &mut Vec<Vec<(Letter, Letter)>>,
        i: usize,
        target: &HashSet<&CodeWord>,
    ) -> bool {
        if i == self.d {
            return self.words.iter().all(|w| {
                let letters = (0..self.d)
                    .map(|c| {
                        let x = w.get(c);
                        let (_, y) = maps[c].iter().find(|(a, _)| *a == x.unprimed()).unwrap();
                        if x.is_primed() {
                            y.complement()
                        } else {
                            *y
                        }
                    })
                    .collect();
                target.contains(&CodeWord::new(letters))
            });
        }
        let k = maps[i].len();
        if k == from[i].len() {
            return self.renaming_search(from, to, maps, i + 1, target);
        }
        for &y in &to[i] {
            if maps[i].iter().any(|(_, z)| z.unprimed() == y) {
                continue;
            }
            for image in [y, y.complement()] {
                maps[i].push((from[i][k], image));
                if self.renaming_search(from, to, maps, i, target) {
                    return true;
                }
                maps[i].pop();
            }
        }
        false
    }
}
