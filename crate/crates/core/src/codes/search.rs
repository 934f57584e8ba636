use std::collections::{HashMap, VecDeque};

use super::{CubeCode, ShiftStep};
use crate::word::{CodeWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of distinct codes to discover.
    pub budget: usize,
    /// Words no shift may remove.
    pub frozen: Vec<CodeWord>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 1_000_000, frozen: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftSearch {
    Found(Vec<ShiftStep>),
    /// Every code reachable within the alphabet was seen; the target was not.
    Disconnected { explored: usize },
    BudgetExhausted { explored: usize },
}

impl ShiftSearch {
    pub fn path(&self) -> Option<&[ShiftStep]> {
        match self {
            ShiftSearch::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// Shortest shift path from `v` to `w` by breadth-first search.
///
/// `alphabet[i]` lists the letters a shift may place at coordinate `i`.
/// Codes are deduplicated exactly, so every step of the returned path applies
/// to the code produced by the previous one.
pub fn shift_path_search(v: &CubeCode, w: &CubeCode, alphabet: &[Vec<Letter>], opts: &SearchOptions) -> ShiftSearch {
    if v == w {
        return ShiftSearch::Found(Vec::new());
    }
    if v.d() != w.d() || alphabet.len() != v.d() {
        return ShiftSearch::Disconnected { explored: 0 };
    }
    let bases: Vec<Vec<Letter>> = alphabet
        .iter()
        .map(|ls| {
            let mut b: Vec<Letter> = ls.iter().map(|l| l.unprimed()).collect();
            b.sort();
            b.dedup();
            b
        })
        .collect();

    let mut nodes: Vec<CubeCode> = vec![v.clone()];
    let mut parent: Vec<Option<(usize, ShiftStep)>> = vec![None];
    let mut index: HashMap<CubeCode, usize> = HashMap::from([(v.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);

    while let Some(at) = queue.pop_front() {
        let code = nodes[at].clone();
        for (p, q, axis) in code.twin_pairs() {
            if opts.frozen.contains(&p) || opts.frozen.contains(&q) {
                continue;
            }
            let own = p.get(axis).unprimed();
            for &s in bases[axis].iter().filter(|&&s| s != own) {
                let step = ShiftStep::new(p.clone(), q.clone(), p.with(axis, s), p.with(axis, s.complement()))
                    .expect("well-formed by construction");
                let next = code.apply_shift(&step).expect("pair present");
                if index.contains_key(&next) {
                    continue;
                }
                if next == *w {
                    let mut path = vec![step];
                    let mut cur = at;
                    while let Some((prev, s)) = &parent[cur] {
                        path.push(s.clone());
                        cur = *prev;
                    }
                    path.reverse();
                    return ShiftSearch::Found(path);
                }
                if nodes.len() >= opts.budget {
                    return ShiftSearch::BudgetExhausted { explored: nodes.len() };
                }
                index.insert(next.clone(), nodes.len());
                queue.push_back(nodes.len());
                nodes.push(next);
                parent.push(Some((at, step)));
            }
        }
    }
    ShiftSearch::Disconnected { explored: nodes.len() }
}
