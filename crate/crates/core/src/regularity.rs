//! Regularity certificates and simple components.
//!
//! A tiling is regular when its columns split as `N_1 ∪ … ∪ N_d ∪ N*` with
//! `N*` the all-star columns and every word carrying exactly one non-star
//! entry inside each `N_i`, every `(column, value)` of `N_i` being realised by
//! some word.

use serde::{Deserialize, Serialize};

use crate::tiling::DominoTiling;
use crate::word::{bit_positions, Trit, TritWord};

/// The column partition witnessing regularity. Columns are 0-based here;
/// [`RegularityCertificate::to_json`] writes them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularityCertificate {
    groups: Vec<Vec<usize>>,
    stars: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    groups: Vec<Vec<usize>>,
    stars: Vec<usize>,
}

impl RegularityCertificate {
    /// Normalizes each group and the star set to ascending order and orders the
    /// groups by their least element. No check against a tiling is made.
    pub fn new(mut groups: Vec<Vec<usize>>, mut stars: Vec<usize>) -> RegularityCertificate {
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort_by_key(|g| g.first().copied().unwrap_or(usize::MAX));
        stars.sort_unstable();
        RegularityCertificate { groups, stars }
    }

    /// Groups exactly as given, without reordering. Used where group `i` must
    /// stay tied to code coordinate `i`.
    pub(crate) fn in_coordinate_order(groups: Vec<Vec<usize>>, stars: Vec<usize>) -> RegularityCertificate {
        RegularityCertificate { groups, stars }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn stars(&self) -> &[usize] {
        &self.stars
    }

    /// The group holding `column`, if any.
    pub fn group_of(&self, column: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&column))
    }

    /// `{"groups": [[1,2],…], "stars": [7]}` with 1-based columns.
    pub fn to_json(&self) -> String {
        let one_based = CertificateJson {
            groups: self.groups.iter().map(|g| g.iter().map(|j| j + 1).collect()).collect(),
            stars: self.stars.iter().map(|j| j + 1).collect(),
        };
        serde_json::to_string(&one_based).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<RegularityCertificate, serde_json::Error> {
        let raw: CertificateJson = serde_json::from_str(text)?;
        let dec = |v: Vec<usize>| -> Result<Vec<usize>, serde_json::Error> {
            v.into_iter()
                .map(|j| j.checked_sub(1).ok_or_else(|| serde::de::Error::custom("columns are 1-based")))
                .collect()
        };
        let groups = raw.groups.into_iter().map(dec).collect::<Result<Vec<_>, _>>()?;
        Ok(RegularityCertificate { groups, stars: dec(raw.stars)? })
    }

    /// The sets `K_i`: rows of the tiling restricted to each group, ascending.
    pub fn witness_rows(&self, t: &DominoTiling) -> Vec<Vec<TritWord>> {
        self.groups
            .iter()
            .map(|g| {
                let mut rows: Vec<TritWord> =
                    t.words().iter().map(|w| w.restrict(g).expect("nonempty group")).collect();
                rows.sort();
                rows.dedup();
                rows
            })
            .collect()
    }

    /// `K*`: the single all-star row when `N*` is nonempty, else empty.
    pub fn star_rows(&self, t: &DominoTiling) -> Vec<TritWord> {
        let mut rows: Vec<TritWord> =
            t.words().iter().filter_map(|w| w.restrict(&self.stars).ok()).collect();
        rows.sort();
        rows.dedup();
        rows
    }
}

/// Checks every certificate condition against `t`, including the group order.
pub fn check_certificate(t: &DominoTiling, c: &RegularityCertificate) -> bool {
    let ordered = c.groups.windows(2).all(|w| w[0].first() < w[1].first());
    ordered && check_partition(t, &c.groups, &c.stars)
}

/// All conditions except the ordering of the groups.
pub(crate) fn check_partition(t: &DominoTiling, groups: &[Vec<usize>], stars: &[usize]) -> bool {
    let n = t.n();
    if groups.len() != t.d() || groups.iter().any(Vec::is_empty) {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in groups.iter().flatten().chain(stars) {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    if seen.iter().any(|s| !s) || stars != t.star_columns().as_slice() {
        return false;
    }
    let group_masks: Vec<u64> = groups.iter().map(|g| g.iter().fold(0u64, |m, &j| m | 1 << j)).collect();
    for w in t.words() {
        if group_masks.iter().any(|gm| (w.mask() & gm).count_ones() != 1) {
            return false;
        }
    }
    // K_i must hold δ at every position of N_i for both δ.
    for &j in groups.iter().flatten() {
        for value in [Trit::Zero, Trit::One] {
            if !t.words().iter().any(|w| w.get(j) == value) {
                return false;
            }
        }
    }
    true
}

/// Finds the canonical regularity certificate of `t`, if `t` is regular.
///
/// Non-star columns are colored with `d` groups so that the support of every
/// word is rainbow. Columns are scanned ascending and take the least feasible
/// group, opening group `k` only after groups `0..k` exist; the first complete
/// coloring found is the lexicographically least one and already has its
/// groups ordered by first element.
pub fn find_regular_partition(t: &DominoTiling) -> Option<RegularityCertificate> {
    let support = t.support_mask();
    let columns: Vec<usize> = bit_positions(support).collect();
    let mut conflicts = vec![0u64; t.n()];
    for w in t.words() {
        for j in bit_positions(w.mask()) {
            conflicts[j] |= w.mask() & !(1 << j);
        }
    }
    let mut color = vec![usize::MAX; t.n()];
    let mut found = None;
    assign(t, &columns, &conflicts, &mut color, 0, 0, &mut found);
    found
}

fn assign(
    t: &DominoTiling,
    columns: &[usize],
    conflicts: &[u64],
    color: &mut [usize],
    k: usize,
    used: usize,
    found: &mut Option<RegularityCertificate>,
) {
    if found.is_some() {
        return;
    }
    let d = t.d();
    if k == columns.len() {
        let mut groups = vec![Vec::new(); d];
        for &j in columns {
            groups[color[j]].push(j);
        }
        let c = RegularityCertificate { groups, stars: t.star_columns() };
        if check_certificate(t, &c) {
            *found = Some(c);
        }
        return;
    }
    let j = columns[k];
    // columns left must still be able to open the missing groups
    let remaining = columns.len() - k;
    for g in 0..=used.min(d - 1) {
        if bit_positions(conflicts[j]).any(|other| color[other] == g) {
            continue;
        }
        let opened = used.max(g + 1);
        if d - opened > remaining - 1 {
            continue;
        }
        color[j] = g;
        assign(t, columns, conflicts, color, k + 1, opened, found);
        color[j] = usize::MAX;
        if found.is_some() {
            return;
        }
    }
}

/// Words of a tiling sharing one non-star support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleComponent {
    /// Non-star columns, 0-based ascending.
    pub support: Vec<usize>,
    /// Sorted.
    pub words: Vec<TritWord>,
}

impl SimpleComponent {
    pub fn support_mask(&self) -> u64 {
        self.support.iter().fold(0, |m, &j| m | 1 << j)
    }
}

/// Partition of the words by `prop`, ordered by each component's least word.
pub fn simple_components(t: &DominoTiling) -> Vec<SimpleComponent> {
    let mut out: Vec<SimpleComponent> = Vec::new();
    for w in t.words() {
        match out.iter_mut().find(|c| c.support_mask() == w.mask()) {
            Some(c) => c.words.push(*w),
            None => out.push(SimpleComponent { support: w.prop(), words: vec![*w] }),
        }
    }
    out
}

/// True iff all words share one support. Simple tilings are regular.
pub fn is_simple(t: &DominoTiling) -> bool {
    let first = t.words()[0].mask();
    let simple = t.words().iter().all(|w| w.mask() == first);
    debug_assert!(!simple || find_regular_partition(t).is_some());
    simple
}
