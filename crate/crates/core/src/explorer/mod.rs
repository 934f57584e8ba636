//! Flip graphs: equivalence classes under flips, connecting paths, and paths
//! that keep a simple component fixed.

mod export;
mod family;

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::bridge::{transpile_in_frame, BridgeError, Frame};
use crate::codes::{shift_path_search, CubeCode, SearchOptions, ShiftSearch};
use crate::regularity::{find_regular_partition, simple_components, SimpleComponent};
use crate::tiling::{DominoTiling, FlipStep, TilingError, TwinPair};
use crate::word::{Alphabet, CodeWord, Letter, Trit, TritWord};

pub use export::{tiling_hash, to_dot, to_json};
pub use family::{build_f_c, build_f_c_from_pairs, family_flip_connected, FamilyReport, FcRegion};

/// Default node budget for class and path searches.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Largest `d` for which connections are routed through codes.
pub const MAX_CODE_D: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("tilings differ in shape: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("tiling is not regular")]
    NotRegular,
    #[error("d={0} is above {MAX_CODE_D}, where shift paths are not known to exist")]
    TooManyCoordinates(usize),
    #[error("component is not a simple component of the tiling")]
    NotAComponent,
    #[error("tiling is not simple")]
    NotSimple,
    #[error("column {0} is not a non-star column of the tiling")]
    BadColumn(usize),
    #[error("no shift path keeps the component fixed")]
    NoPath,
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(usize),
    #[error("region has dimension {0}, above the enumeration limit")]
    RegionTooLarge(usize),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub budget: usize,
    /// Worker threads for frontier expansion; 1 runs on the calling thread.
    pub workers: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { budget: DEFAULT_BUDGET, workers: 1 }
    }
}

/// Nodes in discovery order and undirected edges `(a, b, flip a -> b)` with
/// `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipGraph {
    pub nodes: Vec<DominoTiling>,
    pub edges: Vec<(usize, usize, FlipStep)>,
    /// Set when the budget stopped the search before the class was closed.
    pub truncated: bool,
}

impl FlipGraph {
    pub fn index_of(&self, t: &DominoTiling) -> Option<usize> {
        self.nodes.iter().position(|x| x == t)
    }
}

fn neighbours(t: &DominoTiling) -> Vec<(FlipStep, DominoTiling)> {
    t.all_flips()
        .into_iter()
        .map(|f| {
            let next = t.apply_flip(&f).expect("flips of a tiling apply to it");
            (f, next)
        })
        .collect()
}

fn expand_layer(layer: &[DominoTiling], workers: usize) -> Vec<Vec<(FlipStep, DominoTiling)>> {
    if workers <= 1 {
        return layer.iter().map(neighbours).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| layer.par_iter().map(neighbours).collect())
}

/// The flip class of `t`, explored layer by layer.
///
/// Expansion of a layer may run in parallel; results are merged in layer
/// order, so the graph does not depend on the worker count.
pub fn flip_class(t: &DominoTiling, limits: SearchLimits) -> FlipGraph {
    flip_class_with_progress(t, limits, |_, _| {})
}

/// [`flip_class`], calling `progress(layer, nodes)` after each BFS layer.
pub fn flip_class_with_progress(
    t: &DominoTiling,
    limits: SearchLimits,
    mut progress: impl FnMut(usize, usize),
) -> FlipGraph {
    let mut nodes = vec![t.clone()];
    let mut index: HashMap<DominoTiling, usize> = HashMap::from([(t.clone(), 0)]);
    let mut edges = Vec::new();
    let mut truncated = false;
    let mut layer_start = 0;
    let mut depth = 0;
    while layer_start < nodes.len() {
        let layer_end = nodes.len();
        let expanded = expand_layer(&nodes[layer_start..layer_end], limits.workers);
        for (offset, list) in expanded.into_iter().enumerate() {
            let from = layer_start + offset;
            for (flip, next) in list {
                let to = match index.get(&next) {
                    Some(&k) => k,
                    None if nodes.len() < limits.budget => {
                        index.insert(next.clone(), nodes.len());
                        nodes.push(next);
                        nodes.len() - 1
                    }
                    None => {
                        truncated = true;
                        continue;
                    }
                };
                if from < to {
                    edges.push((from, to, flip));
                }
            }
        }
        layer_start = layer_end;
        depth += 1;
        progress(depth, nodes.len());
    }
    FlipGraph { nodes, edges, truncated }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Through codes: shift paths to simple tilings, joined by column swaps.
    ViaCodes,
    /// Bidirectional search on the flip graph.
    FlipSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Connection {
    Found { flips: Vec<FlipStep>, strategy: Strategy },
    /// One side's class was closed without meeting the other tiling.
    ProvenAbsent { explored: usize },
    BudgetExhausted { explored: usize },
}

impl Connection {
    pub fn flips(&self) -> Option<&[FlipStep]> {
        match self {
            Connection::Found { flips, .. } => Some(flips),
            _ => None,
        }
    }
}

/// A flip sequence from `t1` to `t2`.
///
/// When both are regular and `d <= 6`, each is first driven to a simple tiling
/// by transpiled shift paths and the two simple tilings are joined by column
/// swaps. Otherwise, or if that fails within budget, a bidirectional search
/// on the flip graph is run.
pub fn connect(t1: &DominoTiling, t2: &DominoTiling, limits: SearchLimits) -> Result<Connection, ExplorerError> {
    check_shapes(t1, t2)?;
    if t1 == t2 {
        return Ok(Connection::Found { flips: Vec::new(), strategy: Strategy::FlipSearch });
    }
    if let Ok(found @ Connection::Found { .. }) = connect_via_codes(t1, t2, limits.budget) {
        return Ok(found);
    }
    Ok(bidirectional(t1, t2, limits))
}

/// The code route of [`connect`] alone. Both tilings must be regular with
/// `d <= MAX_CODE_D`; the budget bounds each shift path search.
pub fn connect_via_codes(t1: &DominoTiling, t2: &DominoTiling, budget: usize) -> Result<Connection, ExplorerError> {
    check_shapes(t1, t2)?;
    if t1.d() > MAX_CODE_D {
        return Err(ExplorerError::TooManyCoordinates(t1.d()));
    }
    let (a, b) = match (to_simple(t1, budget)?, to_simple(t2, budget)?) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(explored), _) | (_, Err(explored)) => return Ok(Connection::BudgetExhausted { explored }),
    };
    let mut flips = a.flips;
    flips.extend(swap_columns(&a.tiling, &b.tiling));
    flips.extend(b.flips.iter().rev().map(FlipStep::inverse));
    debug_assert_eq!(t1.apply_flips(&flips).as_ref(), Ok(t2));
    Ok(Connection::Found { flips, strategy: Strategy::ViaCodes })
}

fn check_shapes(t1: &DominoTiling, t2: &DominoTiling) -> Result<(), ExplorerError> {
    if (t1.n(), t1.d()) != (t2.n(), t2.d()) {
        return Err(ExplorerError::ShapeMismatch(t1.n(), t1.d(), t2.n(), t2.d()));
    }
    Ok(())
}

struct ToSimple {
    flips: Vec<FlipStep>,
    tiling: DominoTiling,
}

/// Frame, code and per-coordinate alphabet of a regular tiling.
fn encode_regular(t: &DominoTiling) -> Option<(Frame, CubeCode, Vec<Vec<Letter>>)> {
    let c = find_regular_partition(t)?;
    let frame = Frame::from_certificate(t, &c, &mut Alphabet::new()).ok()?;
    let code = frame.encode(t).ok()?;
    let alphabet = code.letter_profile().sets;
    Some((frame, code, alphabet))
}

/// The simple code generated by one word's letters.
fn simple_code_through(w: &CodeWord) -> CubeCode {
    let d = w.len();
    let words: Vec<CodeWord> = (0u32..1 << d)
        .map(|bits| {
            CodeWord::new(
                (0..d)
                    .map(|i| {
                        let l = w.get(i).unprimed();
                        if bits >> i & 1 == 1 {
                            l.complement()
                        } else {
                            l
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    crate::codes::validate_cube_code(&words).expect("simple words form a code")
}

/// Inner `Err` carries the node count of a shift search that ran out.
fn to_simple(t: &DominoTiling, budget: usize) -> Result<Result<ToSimple, usize>, ExplorerError> {
    let (frame, code, alphabet) = encode_regular(t).ok_or(ExplorerError::NotRegular)?;
    let comp = &simple_components(t)[0];
    let target = simple_code_through(&frame.encode_word(&comp.words[0])?);
    let opts = SearchOptions { budget, frozen: Vec::new() };
    let shifts = match shift_path_search(&code, &target, &alphabet, &opts) {
        ShiftSearch::Found(shifts) => shifts,
        ShiftSearch::Disconnected { explored } | ShiftSearch::BudgetExhausted { explored } => return Ok(Err(explored)),
    };
    let out = transpile_in_frame(t, &frame, &shifts)?;
    Ok(Ok(ToSimple { flips: out.flips, tiling: out.tiling }))
}

/// Flips between two simple tilings of the same shape: each column of the
/// first support missing from the second is traded for a new column by
/// flipping all twin pairs along it.
fn swap_columns(from: &DominoTiling, to: &DominoTiling) -> Vec<FlipStep> {
    let (a, b) = (from.support_mask(), to.support_mask());
    let leaving: Vec<usize> = crate::word::bit_positions(a & !b).collect();
    let entering: Vec<usize> = crate::word::bit_positions(b & !a).collect();
    let mut cur = from.clone();
    let mut flips = Vec::new();
    for (&p, &k) in leaving.iter().zip(&entering) {
        let pairs: Vec<TwinPair> = cur.twin_pairs().into_iter().filter(|tp| tp.axis == p).collect();
        for pair in pairs {
            let glued = pair.glued();
            let cut = TwinPair::new(glued.with(k, Trit::Zero), glued.with(k, Trit::One)).expect("twin by construction");
            let step = FlipStep::new(pair, cut).expect("valid flip");
            cur = cur.apply_flip(&step).expect("pair present");
            flips.push(step);
        }
    }
    debug_assert_eq!(&cur, to);
    flips
}

fn bidirectional(t1: &DominoTiling, t2: &DominoTiling, limits: SearchLimits) -> Connection {
    // parent maps: node -> (previous node, flip from previous to node)
    let mut seen: [HashMap<DominoTiling, Option<(DominoTiling, FlipStep)>>; 2] =
        [HashMap::from([(t1.clone(), None)]), HashMap::from([(t2.clone(), None)])];
    let mut frontier = [vec![t1.clone()], vec![t2.clone()]];
    loop {
        let explored = seen[0].len() + seen[1].len();
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return Connection::ProvenAbsent { explored };
        }
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let layer = std::mem::take(&mut frontier[side]);
        let expanded = expand_layer(&layer, limits.workers);
        let mut next = Vec::new();
        for (node, list) in layer.iter().zip(expanded) {
            for (flip, t) in list {
                if seen[side].contains_key(&t) {
                    continue;
                }
                seen[side].insert(t.clone(), Some((node.clone(), flip)));
                if seen[1 - side].contains_key(&t) {
                    return Connection::Found { flips: join_paths(&seen, &t), strategy: Strategy::FlipSearch };
                }
                if seen[0].len() + seen[1].len() >= limits.budget {
                    return Connection::BudgetExhausted { explored: seen[0].len() + seen[1].len() };
                }
                next.push(t);
            }
        }
        frontier[side] = next;
    }
}

type Parents = HashMap<DominoTiling, Option<(DominoTiling, FlipStep)>>;

fn join_paths(seen: &[Parents; 2], meet: &DominoTiling) -> Vec<FlipStep> {
    let walk = |map: &Parents| {
        let mut out = Vec::new();
        let mut cur = meet.clone();
        while let Some(Some((prev, flip))) = map.get(&cur) {
            out.push(*flip);
            cur = prev.clone();
        }
        out
    };
    let mut forward = walk(&seen[0]);
    forward.reverse();
    forward.extend(walk(&seen[1]).iter().map(FlipStep::inverse));
    forward
}

/// Flips from a regular tiling to the simple tiling containing `component`,
/// none of which touches a word of the component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedPath {
    pub flips: Vec<FlipStep>,
    pub target: DominoTiling,
}

pub fn constrained_connect(
    t: &DominoTiling,
    component: &SimpleComponent,
    budget: usize,
) -> Result<ConstrainedPath, ExplorerError> {
    if !simple_components(t).contains(component) {
        return Err(ExplorerError::NotAComponent);
    }
    let (frame, code, alphabet) = encode_regular(t).ok_or(ExplorerError::NotRegular)?;
    let frozen: Vec<CodeWord> =
        component.words.iter().map(|w| frame.encode_word(w)).collect::<Result<_, _>>()?;
    let target = simple_code_through(&frozen[0]);
    let opts = SearchOptions { budget, frozen: frozen.clone() };
    let shifts = match shift_path_search(&code, &target, &alphabet, &opts) {
        ShiftSearch::Found(s) => s,
        ShiftSearch::Disconnected { .. } => return Err(ExplorerError::NoPath),
        ShiftSearch::BudgetExhausted { explored } => return Err(ExplorerError::BudgetExhausted(explored)),
    };
    let out = transpile_in_frame(t, &frame, &shifts)?;
    let mut cur = t.clone();
    for f in &out.flips {
        assert!(component.words.iter().all(|w| !f.touches(w)), "flip touches the fixed component");
        cur = cur.apply_flip(f)?;
        assert!(component.words.iter().all(|w| cur.contains(w)));
    }
    Ok(ConstrainedPath { flips: out.flips, target: out.tiling })
}

/// The simple tiling on the given support columns.
pub fn simple_tiling(n: usize, support: &[usize]) -> Result<DominoTiling, ExplorerError> {
    let mask = support.iter().fold(0u64, |m, &j| m | 1 << j);
    let d = support.len();
    let words: Vec<TritWord> = (0u64..1 << d)
        .map(|bits| {
            let mut v = 0u64;
            for (k, &j) in support.iter().enumerate() {
                v |= (bits >> k & 1) << j;
            }
            TritWord::from_masks(n, mask, v)
        })
        .collect::<Result<_, _>>()
        .map_err(TilingError::from)?;
    Ok(crate::tiling::validate_tiling(&words, n, d)?)
}

/// Breadth-first flip search over the class of `t`, used as a test oracle.
pub fn class_contains(t: &DominoTiling, goal: &DominoTiling, budget: usize) -> Option<bool> {
    let mut seen = std::collections::HashSet::from([t.clone()]);
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(cur) = queue.pop_front() {
        if &cur == goal {
            return Some(true);
        }
        for (_, next) in neighbours(&cur) {
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(false)
}
