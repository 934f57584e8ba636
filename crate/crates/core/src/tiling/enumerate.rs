//! Brute-force tiling enumeration over unit cells.
//!
//! A unit cell of `[0,2]^n` is named by its anchor point in `{0,1}^n`, stored
//! as an integer whose bit `p` is coordinate `p`. These routines are
//! exponential in `n` and exist to check the algebraic machinery.

use std::collections::BTreeSet;

use crate::word::TritWord;

/// Largest dimension a [`Region`] may live in.
pub const MAX_REGION_DIM: usize = 20;

/// A fixed-size bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    len: usize,
    blocks: Vec<u64>,
}

impl CellSet {
    pub fn empty(len: usize) -> CellSet {
        CellSet { len, blocks: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> CellSet {
        let mut s = CellSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &CellSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &CellSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(k, b)| k * 64 + b.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

/// A set of unit cells of `[0,2]^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    n: usize,
    cells: CellSet,
}

impl Region {
    fn check_dim(n: usize) {
        assert!((1..=MAX_REGION_DIM).contains(&n), "region dimension {n} outside 1..={MAX_REGION_DIM}");
    }

    /// All `2^n` cells.
    pub fn full(n: usize) -> Region {
        Region::check_dim(n);
        Region { n, cells: CellSet::full(1 << n) }
    }

    pub fn empty(n: usize) -> Region {
        Region::check_dim(n);
        Region { n, cells: CellSet::empty(1 << n) }
    }

    pub fn from_cells(n: usize, cells: impl IntoIterator<Item = u64>) -> Region {
        let mut r = Region::empty(n);
        for c in cells {
            assert!(c < 1 << n, "cell {c} outside {{0,1}}^{n}");
            r.cells.insert(c as usize);
        }
        r
    }

    /// Cells covered by the union of the given words' boxes.
    pub fn covered_by(n: usize, words: &[TritWord]) -> Region {
        let mut r = Region::empty(n);
        for w in words {
            r.cells.union_with(&word_cells(w));
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.count()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: u64) -> bool {
        self.cells.contains(cell as usize)
    }

    /// Cells in ascending integer order.
    pub fn cells(&self) -> impl Iterator<Item = u64> + '_ {
        self.cells.iter().map(|c| c as u64)
    }

    pub fn complement(&self) -> Region {
        let mut cells = CellSet::full(1 << self.n);
        cells.subtract(&self.cells);
        Region { n: self.n, cells }
    }

    pub fn is_disjoint(&self, other: &Region) -> bool {
        self.n == other.n && self.cells.is_disjoint(&other.cells)
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut cells = self.cells.clone();
        cells.union_with(&other.cells);
        Region { n: self.n, cells }
    }

    /// Enumerates every set of `(n-d)`-dominoes that covers this region exactly.
    pub fn tilings(&self, d: usize) -> TilingEnumerator {
        TilingEnumerator::new(self, d)
    }
}

fn word_cells(w: &TritWord) -> CellSet {
    let n = w.len();
    let mut s = CellSet::empty(1 << n);
    // walk the subcube spanned by the star positions
    let free = !w.mask() & ((1u64 << n) - 1);
    let mut sub = 0u64;
    loop {
        s.insert((w.bits() | sub) as usize);
        if sub == free {
            break;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
    s
}

/// True iff every cell of `[0,2]^n` lies in exactly one of the words' boxes.
pub fn exact_cover_by_cells(words: &[TritWord], n: usize) -> bool {
    assert!(n <= 24, "cell oracle limited to n <= 24");
    if words.iter().any(|w| w.len() != n) {
        return false;
    }
    (0..1u64 << n).all(|c| words.iter().filter(|w| w.contains_cell(c)).count() == 1)
}

struct Piece {
    word: TritWord,
    cells: CellSet,
}

struct Frame {
    cell: usize,
    next: usize,
    placed: Option<usize>,
}

/// Streams the exact covers of a region by `(n-d)`-dominoes.
///
/// Branches on the lexicographically least uncovered cell (coordinate 1 most
/// significant) and tries the dominoes through it in ascending word order, so
/// the stream order is deterministic. Each item is a sorted word list.
pub struct TilingEnumerator {
    n: usize,
    pieces: Vec<Piece>,
    by_cell: Vec<Vec<usize>>,
    uncovered: CellSet,
    frames: Vec<Frame>,
    started: bool,
    done: bool,
}

impl TilingEnumerator {
    fn new(region: &Region, d: usize) -> TilingEnumerator {
        let n = region.n;
        assert!(d <= n, "d={d} exceeds n={n}");
        // internal index k names the cell reverse_bits(k), so ascending index
        // order is lexicographic order on points
        let to_index = |cell: usize| reverse_bits(cell, n);
        let mut uncovered = CellSet::empty(1 << n);
        for c in region.cells.iter() {
            uncovered.insert(to_index(c));
        }
        let mut pieces = Vec::new();
        for star_set in 0u64..1 << n {
            if star_set.count_ones() as usize != n - d {
                continue;
            }
            let mask = !star_set & ((1u64 << n) - 1);
            let mut vals = 0u64;
            loop {
                let word = TritWord::from_masks(n, mask, vals).expect("valid length");
                let cells = word_cells(&word);
                if cells.is_subset(&region.cells) {
                    let mut idx = CellSet::empty(1 << n);
                    for c in cells.iter() {
                        idx.insert(to_index(c));
                    }
                    pieces.push(Piece { word, cells: idx });
                }
                if vals == mask {
                    break;
                }
                vals = vals.wrapping_sub(mask) & mask;
            }
        }
        pieces.sort_by_key(|p| p.word);
        let mut by_cell = vec![Vec::new(); 1 << n];
        for (k, p) in pieces.iter().enumerate() {
            for c in p.cells.iter() {
                by_cell[c].push(k);
            }
        }
        let volume = 1usize << (n - d);
        let done = !uncovered.count().is_multiple_of(volume);
        TilingEnumerator { n, pieces, by_cell, uncovered, frames: Vec::new(), started: false, done }
    }

    fn solution(&self) -> Vec<TritWord> {
        let mut words: Vec<TritWord> =
            self.frames.iter().filter_map(|f| f.placed).map(|p| self.pieces[p].word).collect();
        words.sort();
        words
    }

    /// Dimension of the enumerated tilings.
    pub fn n(&self) -> usize {
        self.n
    }
}

fn reverse_bits(x: usize, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        x.reverse_bits() >> (usize::BITS as usize - n)
    }
}

impl Iterator for TilingEnumerator {
    type Item = Vec<TritWord>;

    fn next(&mut self) -> Option<Vec<TritWord>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            match self.uncovered.first() {
                None => {
                    self.done = true;
                    return Some(Vec::new());
                }
                Some(c) => self.frames.push(Frame { cell: c, next: 0, placed: None }),
            }
        }
        loop {
            let Some(top) = self.frames.last_mut() else {
                self.done = true;
                return None;
            };
            if let Some(p) = top.placed.take() {
                self.uncovered.union_with(&self.pieces[p].cells);
            }
            let candidates = &self.by_cell[top.cell];
            let mut found = None;
            while top.next < candidates.len() {
                let p = candidates[top.next];
                top.next += 1;
                if self.pieces[p].cells.is_subset(&self.uncovered) {
                    found = Some(p);
                    break;
                }
            }
            let Some(p) = found else {
                self.frames.pop();
                continue;
            };
            top.placed = Some(p);
            self.uncovered.subtract(&self.pieces[p].cells);
            match self.uncovered.first() {
                None => return Some(self.solution()),
                Some(c) => self.frames.push(Frame { cell: c, next: 0, placed: None }),
            }
        }
    }
}

/// All words of `{0,1,*}^n` with exactly `d` non-stars, ascending.
pub fn all_dominoes(n: usize, d: usize) -> Vec<TritWord> {
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != d {
            continue;
        }
        let mut vals = 0u64;
        loop {
            out.insert(TritWord::from_masks(n, mask, vals).expect("valid length"));
            if vals == mask {
                break;
            }
            vals = vals.wrapping_sub(mask) & mask;
        }
    }
    out.into_iter().collect()
}
