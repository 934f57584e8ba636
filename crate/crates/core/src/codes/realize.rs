//! Realizations of codes as minimal partitions of products of rational sets.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use thiserror::Error;

use super::CubeCode;
use crate::word::Letter;

type Q = Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("cannot parse interval set {0:?}")]
    Parse(String),
    #[error("{0} coordinates of assignment for a code of length {1}")]
    Arity(usize, usize),
    #[error("coordinate {coord}: no value for letter {letter:?} or its complement")]
    MissingLetter { coord: usize, letter: Letter },
    #[error("coordinate {coord}: values of {letter:?} and its complement are not complementary")]
    ComplementMismatch { coord: usize, letter: Letter },
    #[error("coordinate {coord}: value of {letter:?} is empty, the whole factor, or outside it")]
    Improper { coord: usize, letter: Letter },
    #[error("boxes {0} and {1} are not dichotomous")]
    NotDichotomous(usize, usize),
    #[error("a point is covered {0} times")]
    Cover(usize),
}

/// An interval with rational endpoints, each end open or closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Piece {
    pub lo: Q,
    pub hi: Q,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Piece {
    pub fn closed(lo: Q, hi: Q) -> Piece {
        Piece { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn half_open(lo: Q, hi: Q) -> Piece {
        Piece { lo, hi, lo_closed: true, hi_closed: false }
    }

    pub fn contains(&self, x: Q) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = (if self.lo_closed { '[' } else { '(' }, if self.hi_closed { ']' } else { ')' });
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

impl FromStr for Piece {
    type Err = RealizeError;

    fn from_str(s: &str) -> Result<Piece, RealizeError> {
        let err = || RealizeError::Parse(s.to_string());
        let t = s.trim();
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(err()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(err()),
        };
        let inner = &t[1..t.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let lo: Q = a.trim().parse().map_err(|_| err())?;
        let hi: Q = b.trim().parse().map_err(|_| err())?;
        if lo > hi {
            return Err(err());
        }
        Ok(Piece { lo, hi, lo_closed, hi_closed })
    }
}

/// A finite union of bounded intervals, kept in a unique normal form: sorted,
/// pairwise disjoint and non-touching, each piece nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalSet {
    pieces: Vec<Piece>,
}

impl RationalSet {
    pub fn empty() -> RationalSet {
        RationalSet::default()
    }

    pub fn from_pieces(pieces: impl IntoIterator<Item = Piece>) -> RationalSet {
        let pieces: Vec<Piece> = pieces.into_iter().collect();
        let grid = grid_of(pieces.iter().flat_map(|p| [p.lo, p.hi]));
        rebuild(&grid, |x| pieces.iter().any(|p| p.contains(x)))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: Q) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    fn endpoints(&self) -> impl Iterator<Item = Q> + '_ {
        self.pieces.iter().flat_map(|p| [p.lo, p.hi])
    }

    pub fn difference(&self, other: &RationalSet) -> RationalSet {
        let grid = grid_of(self.endpoints().chain(other.endpoints()));
        rebuild(&grid, |x| self.contains(x) && !other.contains(x))
    }

    pub fn is_subset(&self, other: &RationalSet) -> bool {
        self.difference(other).is_empty()
    }
}

impl fmt::Display for RationalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.pieces.iter().map(Piece::to_string).collect();
        write!(f, "{}", parts.join(" U "))
    }
}

impl FromStr for RationalSet {
    type Err = RealizeError;

    /// Pieces joined by `U`, e.g. `[0,1/4) U [1/2,1]`.
    fn from_str(s: &str) -> Result<RationalSet, RealizeError> {
        if s.trim() == "{}" {
            return Ok(RationalSet::empty());
        }
        let pieces = s.split('U').map(str::parse).collect::<Result<Vec<Piece>, _>>()?;
        Ok(RationalSet::from_pieces(pieces))
    }
}

fn grid_of(points: impl Iterator<Item = Q>) -> Vec<Q> {
    let mut g: Vec<Q> = points.collect();
    g.sort();
    g.dedup();
    g
}

/// Sample points deciding membership for any set with endpoints in `grid`:
/// the grid points and the midpoints between neighbours.
fn samples(grid: &[Q]) -> Vec<(Q, bool)> {
    let mut out = Vec::with_capacity(grid.len() * 2);
    for (k, &p) in grid.iter().enumerate() {
        out.push((p, true));
        if let Some(&next) = grid.get(k + 1) {
            out.push(((p + next) / 2, false));
        }
    }
    out
}

fn rebuild(grid: &[Q], member: impl Fn(Q) -> bool) -> RationalSet {
    let s = samples(grid);
    let mut pieces = Vec::new();
    let mut open: Option<(Q, bool)> = None;
    for (t, &(x, is_point)) in s.iter().enumerate() {
        let inside = member(x);
        match (open, inside) {
            (None, true) => {
                open = Some(if is_point { (x, true) } else { (s[t - 1].0, false) });
            }
            (Some((lo, lo_closed)), false) => {
                let (hi, hi_closed) = if is_point { (x, false) } else { (s[t - 1].0, true) };
                pieces.push(Piece { lo, hi, lo_closed, hi_closed });
                open = None;
            }
            _ => {}
        }
    }
    if let Some((lo, lo_closed)) = open {
        pieces.push(Piece { lo, hi: *grid.last().unwrap(), lo_closed, hi_closed: true });
    }
    RationalSet { pieces }
}

/// Boxes `f(v)` for the words of a code, in word order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub domain: Vec<RationalSet>,
    pub boxes: Vec<Vec<RationalSet>>,
}

impl Realization {
    /// Pairwise dichotomy and exact cover of the domain, decided on the grid
    /// of all endpoints.
    pub fn verify(&self) -> Result<(), RealizeError> {
        for (a, x) in self.boxes.iter().enumerate() {
            for (b, y) in self.boxes.iter().enumerate().skip(a + 1) {
                let split = (0..self.domain.len()).any(|i| x[i] == self.domain[i].difference(&y[i]));
                if !split {
                    return Err(RealizeError::NotDichotomous(a, b));
                }
            }
        }
        let axes: Vec<Vec<Q>> = (0..self.domain.len())
            .map(|i| {
                let grid = grid_of(
                    self.domain[i].endpoints().chain(self.boxes.iter().flat_map(|bx| bx[i].endpoints())),
                );
                samples(&grid).into_iter().map(|(x, _)| x).filter(|&x| self.domain[i].contains(x)).collect()
            })
            .collect();
        let mut idx = vec![0usize; axes.len()];
        if axes.iter().any(Vec::is_empty) {
            return Ok(());
        }
        loop {
            let covered = self
                .boxes
                .iter()
                .filter(|bx| bx.iter().zip(&idx).enumerate().all(|(i, (s, &k))| s.contains(axes[i][k])))
                .count();
            if covered != 1 {
                return Err(RealizeError::Cover(covered));
            }
            let mut i = 0;
            loop {
                if i == idx.len() {
                    return Ok(());
                }
                idx[i] += 1;
                if idx[i] < axes[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
}

/// Realizes `code` in the product of `domain` sets.
///
/// `values[i]` gives `f_i` on letters of coordinate `i`; a letter may be given
/// directly or through its complement, whose value is the complement in
/// `domain[i]`. The result is checked to be a minimal partition.
pub fn realize(code: &CubeCode, domain: &[RationalSet], values: &[Vec<(Letter, RationalSet)>]) -> Result<Realization, RealizeError> {
    let d = code.d();
    if domain.len() != d || values.len() != d {
        return Err(RealizeError::Arity(values.len().min(domain.len()), d));
    }
    for (coord, vals) in values.iter().enumerate() {
        for (letter, set) in vals {
            if set.is_empty() || !set.is_subset(&domain[coord]) || domain[coord].is_subset(set) {
                return Err(RealizeError::Improper { coord, letter: *letter });
            }
            if let Some((_, other)) = vals.iter().find(|(l, _)| *l == letter.complement()) {
                if *other != domain[coord].difference(set) {
                    return Err(RealizeError::ComplementMismatch { coord, letter: *letter });
                }
            }
        }
    }
    let f = |coord: usize, letter: Letter| -> Result<RationalSet, RealizeError> {
        let vals = &values[coord];
        if let Some((_, s)) = vals.iter().find(|(l, _)| *l == letter) {
            return Ok(s.clone());
        }
        match vals.iter().find(|(l, _)| *l == letter.complement()) {
            Some((_, s)) => Ok(domain[coord].difference(s)),
            None => Err(RealizeError::MissingLetter { coord, letter }),
        }
    };
    let boxes = code
        .words()
        .iter()
        .map(|w| (0..d).map(|i| f(i, w.get(i))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let r = Realization { domain: domain.to_vec(), boxes };
    r.verify()?;
    Ok(r)
}
