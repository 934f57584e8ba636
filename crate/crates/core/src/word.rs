//! Trit words over `{0, 1, *}` and letters of an involutive alphabet.
//!
//! A [`TritWord`] of length `n` names an `(n-d)`-domino of `[0,2]^n`: entry `0`
//! is the factor `[0,1]`, entry `1` is `[1,2]`, and `*` is the full `[0,2]`.
//! Words are stored as two bitmasks so that dichotomy and twin-pair tests are a
//! handful of word operations.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported word length.
pub const MAX_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("word length {0} outside 1..={MAX_LEN}")]
    BadLength(usize),
    #[error("invalid trit character {0:?}")]
    BadTrit(char),
    #[error("invalid letter token {0:?}")]
    BadLetter(String),
}

/// One entry of a trit word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trit {
    Star,
    Zero,
    One,
}

impl Trit {
    /// `0' = 1`, `1' = 0`, `*' = *`.
    pub fn complement(self) -> Trit {
        match self {
            Trit::Zero => Trit::One,
            Trit::One => Trit::Zero,
            Trit::Star => Trit::Star,
        }
    }

    pub fn from_char(c: char) -> Result<Trit, WordError> {
        match c {
            '0' => Ok(Trit::Zero),
            '1' => Ok(Trit::One),
            '*' => Ok(Trit::Star),
            other => Err(WordError::BadTrit(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::Star => '*',
        }
    }
}

/// A word in `{0,1,*}^n`, `1 <= n <= 64`.
///
/// Bit `p` of `mask` is set when position `p` (0-based) is not a star; bit `p`
/// of `bits` then holds the value. Bits of `bits` outside `mask` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TritWord {
    len: u8,
    mask: u64,
    bits: u64,
}

fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl TritWord {
    /// The all-star word of length `len`.
    pub fn stars(len: usize) -> Result<TritWord, WordError> {
        if len == 0 || len > MAX_LEN {
            return Err(WordError::BadLength(len));
        }
        Ok(TritWord { len: len as u8, mask: 0, bits: 0 })
    }

    /// Builds a word from raw masks. Value bits outside `mask` are dropped.
    pub fn from_masks(len: usize, mask: u64, bits: u64) -> Result<TritWord, WordError> {
        if len == 0 || len > MAX_LEN {
            return Err(WordError::BadLength(len));
        }
        let full = full_mask(len);
        let mask = mask & full;
        Ok(TritWord { len: len as u8, mask, bits: bits & mask })
    }

    pub fn from_trits(trits: &[Trit]) -> Result<TritWord, WordError> {
        let mut w = TritWord::stars(trits.len())?;
        for (p, &t) in trits.iter().enumerate() {
            w = w.with(p, t);
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Non-star positions as a bitmask.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Values on the non-star positions.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, pos: usize) -> Trit {
        debug_assert!(pos < self.len());
        if self.mask >> pos & 1 == 0 {
            Trit::Star
        } else if self.bits >> pos & 1 == 0 {
            Trit::Zero
        } else {
            Trit::One
        }
    }

    /// Copy of `self` with position `pos` set to `t`.
    pub fn with(self, pos: usize, t: Trit) -> TritWord {
        assert!(pos < self.len(), "position {pos} out of range");
        let b = 1u64 << pos;
        let (mask, bits) = match t {
            Trit::Star => (self.mask & !b, self.bits & !b),
            Trit::Zero => (self.mask | b, self.bits & !b),
            Trit::One => (self.mask | b, self.bits | b),
        };
        TritWord { len: self.len, mask, bits }
    }

    pub fn trits(&self) -> impl Iterator<Item = Trit> + '_ {
        (0..self.len()).map(move |p| self.get(p))
    }

    /// `prop(w)`: the non-star positions, ascending.
    pub fn prop(&self) -> Vec<usize> {
        bit_positions(self.mask).collect()
    }

    /// Number of non-star entries.
    pub fn weight(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// True iff some position holds complementary non-star values in both words.
    pub fn is_dichotomous(&self, other: &TritWord) -> Result<bool, WordError> {
        self.check_len(other)?;
        Ok(self.dichotomy_mask(other) != 0)
    }

    /// Positions where the two words carry complementary non-star values.
    pub(crate) fn dichotomy_mask(&self, other: &TritWord) -> u64 {
        self.mask & other.mask & (self.bits ^ other.bits)
    }

    /// The axis along which `self` and `other` form a twin pair, if they do.
    ///
    /// That is the unique position `i` with `{self_i, other_i} = {0, 1}` and
    /// equality everywhere else.
    pub fn twin_pair_axis(&self, other: &TritWord) -> Result<Option<usize>, WordError> {
        self.check_len(other)?;
        Ok(self.twin_axis_unchecked(other))
    }

    pub(crate) fn twin_axis_unchecked(&self, other: &TritWord) -> Option<usize> {
        if self.mask != other.mask {
            return None;
        }
        let diff = self.bits ^ other.bits;
        if diff.count_ones() == 1 {
            Some(diff.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// Word with position `pos` removed; later positions shift down by one.
    pub fn delete(&self, pos: usize) -> Result<TritWord, WordError> {
        assert!(pos < self.len());
        let low = (1u64 << pos) - 1;
        let squeeze = |x: u64| (x & low) | ((x >> 1) & !low);
        TritWord::from_masks(self.len() - 1, squeeze(self.mask), squeeze(self.bits))
    }

    /// Word with `t` prepended at position 0.
    pub fn prepend(&self, t: Trit) -> Result<TritWord, WordError> {
        let w = TritWord::from_masks(self.len() + 1, self.mask << 1, self.bits << 1)?;
        Ok(w.with(0, t))
    }

    /// Reorders positions: the new position `p` takes old position `order[p]`.
    pub fn permute(&self, order: &[usize]) -> Result<TritWord, WordError> {
        let mut w = TritWord::stars(order.len())?;
        for (p, &old) in order.iter().enumerate() {
            w = w.with(p, self.get(old));
        }
        Ok(w)
    }

    /// Restriction to the given positions, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> Result<TritWord, WordError> {
        self.permute(positions)
    }

    /// True iff the unit cell anchored at `cell` (a point of `{0,1}^n`, bit `p`
    /// = coordinate `p`) lies inside this word's box.
    pub fn contains_cell(&self, cell: u64) -> bool {
        (cell ^ self.bits) & self.mask == 0
    }

    fn check_len(&self, other: &TritWord) -> Result<(), WordError> {
        if self.len != other.len {
            Err(WordError::LengthMismatch(self.len(), other.len()))
        } else {
            Ok(())
        }
    }
}

/// Lexicographic on the text encoding, with `* < 0 < 1`.
impl Ord for TritWord {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = (self.mask ^ other.mask) | (self.mask & other.mask & (self.bits ^ other.bits));
        let upto = full_mask(self.len.min(other.len) as usize);
        let diff = diff & upto;
        if diff == 0 {
            return self.len.cmp(&other.len);
        }
        let p = diff.trailing_zeros() as usize;
        self.get(p).cmp(&other.get(p))
    }
}

impl PartialOrd for TritWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TritWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.trits() {
            write!(f, "{}", t.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for TritWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TritWord({self})")
    }
}

impl FromStr for TritWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<TritWord, WordError> {
        let trits = s.chars().map(Trit::from_char).collect::<Result<Vec<_>, _>>()?;
        TritWord::from_trits(&trits)
    }
}

pub(crate) fn bit_positions(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let p = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(p)
        }
    })
}

/// True iff every two distinct words are dichotomous.
///
/// Duplicates collapse before checking, so `{w, w}` is the code `{w}`.
pub fn validate_code(words: &[TritWord]) -> Result<bool, WordError> {
    let mut uniq = words.to_vec();
    uniq.sort();
    uniq.dedup();
    if let Some(first) = uniq.first() {
        for w in &uniq[1..] {
            first.check_len(w)?;
        }
    }
    for (i, u) in uniq.iter().enumerate() {
        for q in &uniq[i + 1..] {
            if u.dichotomy_mask(q) == 0 {
                return Ok(false);
            }
        }
    }
    if let Some(d) = uniq.iter().map(TritWord::weight).min() {
        debug_assert!(d >= 64 || uniq.len() <= 1usize << d);
    }
    Ok(true)
}

/// A letter of an alphabet with fixed-point-free involution `s -> s'`.
///
/// The low bit is the primed flag, so the complement is `xor 1`. The remaining
/// bits index a base name in an [`Alphabet`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(base: u32, primed: bool) -> Letter {
        Letter(base << 1 | primed as u32)
    }

    pub fn base(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_primed(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn complement(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// The unprimed letter of this letter's complementary pair.
    pub fn unprimed(self) -> Letter {
        Letter(self.0 & !1)
    }

    pub fn raw(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}{}", self.base(), if self.is_primed() { "'" } else { "" })
    }
}

/// Interns letter base names. Ids are handed out in first-seen order, so a
/// fixed sequence of `intern` calls always yields the same letters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new() -> Alphabet {
        Alphabet::default()
    }

    /// The unprimed letter named `name`, interning it if new.
    pub fn intern(&mut self, name: &str) -> Letter {
        if let Some(&b) = self.index.get(name) {
            return Letter::new(b, false);
        }
        let b = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), b);
        Letter::new(b, false)
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.index.get(name).map(|&b| Letter::new(b, false))
    }

    pub fn name(&self, letter: Letter) -> Option<&str> {
        self.names.get(letter.base() as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// A base name not yet interned, of the form `{prefix}{k}`.
    pub fn fresh(&mut self, prefix: &str) -> Letter {
        let mut k = self.names.len() + 1;
        loop {
            let name = format!("{prefix}{k}");
            if !self.index.contains_key(&name) {
                return self.intern(&name);
            }
            k += 1;
        }
    }

    /// Parses a token such as `a1` or `a1'`.
    pub fn parse_letter(&mut self, token: &str) -> Result<Letter, WordError> {
        let (base, primed) = match token.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (token, false),
        };
        let mut chars = base.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(WordError::BadLetter(token.to_string()));
        }
        let l = self.intern(base);
        Ok(if primed { l.complement() } else { l })
    }

    pub fn format_letter(&self, letter: Letter) -> String {
        let base = match self.name(letter) {
            Some(name) => name.to_string(),
            None => format!("?{}", letter.base()),
        };
        if letter.is_primed() {
            base + "'"
        } else {
            base
        }
    }

    /// Space-separated letter tokens.
    pub fn format_word(&self, word: &CodeWord) -> String {
        word.letters().iter().map(|&l| self.format_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_word(&mut self, text: &str) -> Result<CodeWord, WordError> {
        let letters = text
            .split_whitespace()
            .map(|tok| self.parse_letter(tok))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CodeWord::new(letters))
    }
}

/// A star-free word of letters, one per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeWord(Vec<Letter>);

impl CodeWord {
    pub fn new(letters: Vec<Letter>) -> CodeWord {
        CodeWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Letter {
        self.0[i]
    }

    pub fn with(&self, i: usize, letter: Letter) -> CodeWord {
        let mut v = self.0.clone();
        v[i] = letter;
        CodeWord(v)
    }

    pub fn is_dichotomous(&self, other: &CodeWord) -> bool {
        self.0.iter().zip(&other.0).any(|(&a, &b)| a == b.complement())
    }

    /// Axis `i` such that the words agree off `i` and are complementary at `i`.
    pub fn twin_pair_axis(&self, other: &CodeWord) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        let mut axis = None;
        for (i, (&a, &b)) in self.0.iter().zip(&other.0).enumerate() {
            if a != b {
                if axis.is_some() || a != b.complement() {
                    return None;
                }
                axis = Some(i);
            }
        }
        axis
    }
}

impl fmt::Debug for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> TritWord {
        s.parse().unwrap()
    }

    #[test]
    fn trit_complement() {
        assert_eq!(Trit::Zero.complement(), Trit::One);
        assert_eq!(Trit::One.complement(), Trit::Zero);
        assert_eq!(Trit::Star.complement(), Trit::Star);
    }

    #[test]
    fn dichotomy_examples() {
        assert!(w("0*0").is_dichotomous(&w("1*0")).unwrap());
        assert!(!w("0*0").is_dichotomous(&w("0*0")).unwrap());
        // *01ε vs 1*0ε from the 4-dimensional twin-pair-free tiling: third position
        assert!(w("*010").is_dichotomous(&w("1*00")).unwrap());
        assert_eq!(w("*010").dichotomy_mask(&w("1*00")), 0b0100);
        assert_eq!(w("0*").is_dichotomous(&w("0*0")), Err(WordError::LengthMismatch(2, 3)));
    }

    #[test]
    fn twin_axis_examples() {
        assert_eq!(w("**0").twin_pair_axis(&w("**1")).unwrap(), Some(2));
        assert_eq!(w("0*0").twin_pair_axis(&w("1*1")).unwrap(), None);
        assert_eq!(w("*00*1**").twin_pair_axis(&w("*10*1**")).unwrap(), Some(1));
        assert_eq!(w("0*").twin_pair_axis(&w("*0")).unwrap(), None);
    }

    #[test]
    fn validate_code_examples() {
        let regular_7d = [
            "0*0*0**", "1*1*1**", "*00*1**", "*10*1**", "0*1**1*", "0*1**0*", "1**00**",
            "1**10**",
        ];
        let words: Vec<_> = regular_7d.iter().map(|s| w(s)).collect();
        assert!(validate_code(&words).unwrap());
        assert!(validate_code(&[w("0*"), w("0*")]).unwrap());
        assert!(validate_code(&[w("00"), w("01")]).unwrap());
        assert!(!validate_code(&[w("00"), w("0*")]).unwrap());
    }

    #[test]
    fn word_editing() {
        assert_eq!(w("0*1*").delete(1).unwrap(), w("01*"));
        assert_eq!(w("0*1*").delete(3).unwrap(), w("0*1"));
        assert_eq!(w("*1").prepend(Trit::One).unwrap(), w("1*1"));
        assert_eq!(w("01*").permute(&[2, 0, 1]).unwrap(), w("*01"));
        assert_eq!(w("0*1").prop(), vec![0, 2]);
    }

    #[test]
    fn ordering_matches_text() {
        let mut v = [w("1*"), w("0*"), w("*1"), w("*0"), w("10"), w("**")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let mut t = s.clone();
        t.sort();
        assert_eq!(s, t);
    }

    #[test]
    fn letters() {
        let mut ab = Alphabet::new();
        let a = ab.parse_letter("a1").unwrap();
        let ap = ab.parse_letter("a1'").unwrap();
        assert_eq!(a.complement(), ap);
        assert_ne!(a, ap);
        assert_eq!(ap.complement().complement(), ap);
        assert_eq!(ab.format_letter(ap), "a1'");
        assert!(ab.parse_letter("1a").is_err());
        assert!(ab.parse_letter("a''").is_err());
        let v = ab.parse_word("a1 a1'").unwrap();
        let u = ab.parse_word("a1 a1").unwrap();
        assert_eq!(v.twin_pair_axis(&u), Some(1));
        assert!(v.is_dichotomous(&u));
    }

    fn trit() -> impl Strategy<Value = Trit> {
        prop_oneof![Just(Trit::Zero), Just(Trit::One), Just(Trit::Star)]
    }

    fn word_pair() -> impl Strategy<Value = (TritWord, TritWord)> {
        (1usize..10).prop_flat_map(|n| {
            (prop::collection::vec(trit(), n), prop::collection::vec(trit(), n)).prop_map(
                |(a, b)| (TritWord::from_trits(&a).unwrap(), TritWord::from_trits(&b).unwrap()),
            )
        })
    }

    proptest! {
        #[test]
        fn dichotomy_symmetric((u, q) in word_pair()) {
            prop_assert_eq!(u.is_dichotomous(&q).unwrap(), q.is_dichotomous(&u).unwrap());
        }

        #[test]
        fn twin_implies_dichotomous((u, q) in word_pair()) {
            if u.twin_pair_axis(&q).unwrap().is_some() {
                prop_assert!(u.is_dichotomous(&q).unwrap());
            }
        }

        #[test]
        fn text_round_trip((u, _q) in word_pair()) {
            let back: TritWord = u.to_string().parse().unwrap();
            prop_assert_eq!(back, u);
        }

        #[test]
        fn dichotomy_by_scan((u, q) in word_pair()) {
            let scan = u.trits().zip(q.trits()).any(|(a, b)| a != Trit::Star && b == a.complement());
            prop_assert_eq!(scan, u.is_dichotomous(&q).unwrap());
        }
    }
}
