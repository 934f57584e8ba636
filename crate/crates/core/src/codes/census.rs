//! Exhaustive enumeration of cube tiling codes over a bounded letter supply.
//!
//! Coordinate `i` draws from pairs `0..pairs`; value `c` stands for the
//! letter with base `c / 2`, primed when `c` is odd. A code is a set of `2^d`
//! pairwise dichotomous words, i.e. a `2^d`-clique in the dichotomy graph.
//! Renaming letters within a coordinate maps codes to codes, so every code is
//! equivalent to one containing the all-zero word; only those are listed.

use std::collections::BTreeMap;

use super::{validate_cube_code, CubeCode};
use crate::word::{CodeWord, Letter};

/// Largest vertex count the clique search accepts.
pub const MAX_CENSUS_VERTICES: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Census {
    /// Codes containing the all-zero word, by letter sum.
    pub by_letter_sum: BTreeMap<usize, u64>,
    /// Codes where some letter and its complement occur a different number of
    /// times at a coordinate.
    pub unbalanced: u64,
    /// One code of the largest letter sum found.
    pub witness: Option<CubeCode>,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.by_letter_sum.values().sum()
    }

    pub fn max_letter_sum(&self) -> Option<usize> {
        self.by_letter_sum.keys().next_back().copied()
    }
}

struct Graph {
    d: usize,
    values: usize,
    blocks: usize,
    adj: Vec<Vec<u64>>,
}

impl Graph {
    fn new(d: usize, pairs: usize) -> Graph {
        let values = 2 * pairs;
        let count = values.pow(d as u32);
        let blocks = count.div_ceil(64);
        let digits = |mut v: usize| {
            (0..d)
                .map(|_| {
                    let c = v % values;
                    v /= values;
                    c
                })
                .collect::<Vec<_>>()
        };
        let all: Vec<Vec<usize>> = (0..count).map(digits).collect();
        let mut adj = vec![vec![0u64; blocks]; count];
        for a in 0..count {
            for b in a + 1..count {
                if all[a].iter().zip(&all[b]).any(|(x, y)| x ^ y == 1) {
                    adj[a][b / 64] |= 1 << (b % 64);
                    adj[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        Graph { d, values, blocks, adj }
    }

    fn word(&self, mut v: usize) -> CodeWord {
        CodeWord::new(
            (0..self.d)
                .map(|_| {
                    let c = v % self.values;
                    v /= self.values;
                    Letter::new((c / 2) as u32, c % 2 == 1)
                })
                .collect(),
        )
    }
}

/// Lists every code of length `d` with at most `pairs` letter pairs per
/// coordinate that contains the all-zero word, tallied by letter sum.
///
/// # Panics
/// If `(2 * pairs)^d` exceeds [`MAX_CENSUS_VERTICES`] or `d` is 0.
pub fn letter_sum_census(d: usize, pairs: usize) -> Census {
    assert!(d >= 1 && pairs >= 1);
    let count = (2 * pairs).checked_pow(d as u32).filter(|&c| c <= MAX_CENSUS_VERTICES);
    assert!(count.is_some(), "census over (2*{pairs})^{d} words is too large");
    let g = Graph::new(d, pairs);
    let mut census = Census::default();
    let mut clique = vec![0usize];
    let cand = g.adj[0].clone();
    extend(&g, 1 << d, &mut clique, &cand, &mut census);
    census
}

fn extend(g: &Graph, size: usize, clique: &mut Vec<usize>, cand: &[u64], census: &mut Census) {
    if clique.len() == size {
        record(g, clique, census);
        return;
    }
    let left = size - clique.len();
    if cand.iter().map(|b| b.count_ones() as usize).sum::<usize>() < left {
        return;
    }
    for blk in 0..g.blocks {
        let mut bits = cand[blk];
        while bits != 0 {
            let v = blk * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            // only later vertices, so each clique is built once
            let next: Vec<u64> = (0..g.blocks)
                .map(|k| {
                    let later = match k.cmp(&(v / 64)) {
                        std::cmp::Ordering::Less => 0,
                        std::cmp::Ordering::Equal => !0u64 << (v % 64) << 1,
                        std::cmp::Ordering::Greater => !0,
                    };
                    cand[k] & g.adj[v][k] & later
                })
                .collect();
            clique.push(v);
            extend(g, size, clique, &next, census);
            clique.pop();
        }
    }
}

fn record(g: &Graph, clique: &[usize], census: &mut Census) {
    let words: Vec<CodeWord> = clique.iter().map(|&v| g.word(v)).collect();
    let code = validate_cube_code(&words).expect("cliques of dichotomous words are codes");
    let sum = code.letter_profile().sum();
    let balanced = (0..g.d).all(|i| {
        let mut tally = BTreeMap::<Letter, i64>::new();
        for w in code.words() {
            let l = w.get(i);
            *tally.entry(l.unprimed()).or_default() += if l.is_primed() { -1 } else { 1 };
        }
        tally.values().all(|&t| t == 0)
    });
    if !balanced {
        census.unbalanced += 1;
    }
    if census.max_letter_sum().is_none_or(|m| sum > m) {
        census.witness = Some(code);
    }
    *census.by_letter_sum.entry(sum).or_default() += 1;
}
