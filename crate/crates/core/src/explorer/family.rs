use std::collections::{HashMap, VecDeque};

use super::{neighbours, ExplorerError};
use crate::regularity::{is_simple, SimpleComponent};
use crate::tiling::{validate_tiling, DominoTiling, Region, TwinPair, MAX_REGION_DIM};
use crate::word::TritWord;

/// The part of the box left open by a fixed set of words, with those words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcRegion {
    pub region: Region,
    pub component: Vec<TritWord>,
    /// No pairs were removed, so the region is empty.
    pub degenerate: bool,
}

impl FcRegion {
    /// Region left by a simple component of a tiling.
    pub fn for_component(n: usize, component: &SimpleComponent) -> Result<FcRegion, ExplorerError> {
        if n > MAX_REGION_DIM {
            return Err(ExplorerError::RegionTooLarge(n));
        }
        let region = Region::covered_by(n, &component.words).complement();
        Ok(FcRegion { degenerate: region.is_empty(), region, component: component.words.clone() })
    }
}

/// `C = Q \ (P_i for i in m)` and the cells of the removed pairs, where `P_i`
/// are the twin pairs of the simple tiling `q` along column `i`.
///
/// Every word of a simple tiling lies in a twin pair along each of its
/// columns, so `C` is empty as soon as `m` is nonempty. Use
/// [`build_f_c_from_pairs`] to remove a chosen subfamily of pairs instead.
pub fn build_f_c(q: &DominoTiling, m: &[usize]) -> Result<FcRegion, ExplorerError> {
    if !is_simple(q) {
        return Err(ExplorerError::NotSimple);
    }
    if let Some(&j) = m.iter().find(|&&j| j >= q.n() || q.support_mask() >> j & 1 == 0) {
        return Err(ExplorerError::BadColumn(j));
    }
    let pairs: Vec<TwinPair> = q.twin_pairs().into_iter().filter(|p| m.contains(&p.axis)).collect();
    build_f_c_from_pairs(q, &pairs)
}

/// Removes the words of `pairs` from `q`. The returned region is the union of
/// the removed boxes, checked to be exactly the cells not covered by the rest.
pub fn build_f_c_from_pairs(q: &DominoTiling, pairs: &[TwinPair]) -> Result<FcRegion, ExplorerError> {
    let n = q.n();
    if n > MAX_REGION_DIM {
        return Err(ExplorerError::RegionTooLarge(n));
    }
    let removed: Vec<TritWord> = pairs.iter().flat_map(|p| p.words).collect();
    if let Some(w) = removed.iter().find(|w| !q.contains(w)) {
        return Err(crate::tiling::TilingError::PairNotInTiling(*w, *w).into());
    }
    let component: Vec<TritWord> = q.words().iter().filter(|w| !removed.contains(w)).copied().collect();
    let region = Region::covered_by(n, &removed);
    let rest = Region::covered_by(n, &component);
    assert!(region.is_disjoint(&rest) && region.union(&rest) == Region::full(n));
    Ok(FcRegion { degenerate: pairs.is_empty(), region, component })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    /// Full tilings `F ∪ C` of the admitted fillings, in enumeration order.
    pub members: Vec<DominoTiling>,
    pub connected: bool,
    /// Two members with no flip path inside the family, if disconnected.
    pub unreachable: Option<(DominoTiling, DominoTiling)>,
}

/// Enumerates every tiling `F` of `region` by `(n-d)`-dominoes, keeps those
/// with `accept(F ∪ fixed)`, and decides whether the kept tilings are joined
/// by flips that stay inside the family.
pub fn family_flip_connected(
    region: &Region,
    d: usize,
    fixed: &[TritWord],
    accept: impl Fn(&DominoTiling) -> bool,
    budget: usize,
) -> Result<FamilyReport, ExplorerError> {
    let n = region.n();
    let mut members = Vec::new();
    for (count, filling) in region.tilings(d).enumerate() {
        if count >= budget {
            return Err(ExplorerError::BudgetExhausted(count));
        }
        let mut words = filling;
        words.extend_from_slice(fixed);
        if let Ok(t) = validate_tiling(&words, n, d) {
            if accept(&t) {
                members.push(t);
            }
        }
    }
    let index: HashMap<&DominoTiling, usize> = members.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut reached = vec![false; members.len()];
    if let Some(first) = members.first() {
        reached[0] = true;
        let mut queue = VecDeque::from([first.clone()]);
        while let Some(cur) = queue.pop_front() {
            for (_, next) in neighbours(&cur) {
                if let Some(&k) = index.get(&next) {
                    if !reached[k] {
                        reached[k] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    let unreachable = reached.iter().position(|r| !r).map(|k| (members[0].clone(), members[k].clone()));
    Ok(FamilyReport { connected: unreachable.is_none(), unreachable, members })
}
