//! Named tilings and codes: trivial regular tilings, lifts, codes with the
//! largest letter sum, and regular `*`-irreducible tilings.

use thiserror::Error;

use crate::bridge::code_to_tiling;
use crate::codes::{CodeError, CubeCode};
use crate::regularity::{check_certificate, RegularityCertificate};
use crate::tiling::{validate_tiling, DominoTiling, TilingError, MAX_D};
use crate::word::{Alphabet, CodeWord, Letter, Trit, TritWord};

/// Largest `d` accepted by [`max_letter_code`].
pub const MAX_LETTER_CODE_D: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("need n > d >= 1, got n={n}, d={d}")]
    BadParameters { n: usize, d: usize },
    #[error("d={0} is outside the supported range 1..={MAX_LETTER_CODE_D}")]
    Unsupported(usize),
    #[error("target letter sum {target} outside {lo}..={hi}")]
    TargetOutOfRange { target: usize, lo: usize, hi: usize },
    #[error("certificate does not fit the tiling")]
    BadCertificate,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// `{ε_1…ε_d *^(n-d)}` with its certificate `N_i = {i}`, `N* = {d+1..n}`.
pub fn trivial_regular(n: usize, d: usize) -> Result<(DominoTiling, RegularityCertificate), ConstructionError> {
    if d == 0 || n <= d || d > MAX_D {
        return Err(ConstructionError::BadParameters { n, d });
    }
    let words = (0u64..1 << d)
        .map(|bits| TritWord::from_masks(n, (1 << d) - 1, bits))
        .collect::<Result<Vec<_>, _>>()
        .map_err(TilingError::from)?;
    let t = validate_tiling(&words, n, d)?;
    let c = RegularityCertificate::new((0..d).map(|i| vec![i]).collect(), (d..n).collect());
    Ok((t, c))
}

/// Prepends a column holding 0 and 1 below copies of `t`: dimension and `d`
/// both grow by one, with `N_1 = {1}` and the old groups shifted right.
pub fn lift(t: &DominoTiling, c: &RegularityCertificate) -> Result<(DominoTiling, RegularityCertificate), ConstructionError> {
    if !check_certificate(t, c) {
        return Err(ConstructionError::BadCertificate);
    }
    let mut words = Vec::with_capacity(2 * t.words().len());
    for delta in [Trit::Zero, Trit::One] {
        for w in t.words() {
            words.push(w.prepend(delta).map_err(TilingError::from)?);
        }
    }
    let lifted = validate_tiling(&words, t.n() + 1, t.d() + 1)?;
    let shift = |g: &[usize]| g.iter().map(|j| j + 1).collect::<Vec<_>>();
    let mut groups = vec![vec![0]];
    groups.extend(c.groups().iter().map(|g| shift(g)));
    let cert = RegularityCertificate::new(groups, shift(c.stars()));
    debug_assert!(check_certificate(&lifted, &cert));
    Ok((lifted, cert))
}

/// A cube code of length `d` with letter sum `2^d - 1`.
///
/// Built by doubling: from `U` of length `k`, the words `u·c` and `σ(u)·c'`
/// where `c` is a new letter and `σ` renames every letter of `U` to a fresh
/// one. The sum goes from `s` to `2s + 1`. Letters at coordinate `i` are named
/// `s{i}_{k}` (both 1-based).
pub fn max_letter_code(d: usize, alphabet: &mut Alphabet) -> Result<CubeCode, ConstructionError> {
    if d == 0 || d > MAX_LETTER_CODE_D {
        return Err(ConstructionError::Unsupported(d));
    }
    // words as (pair index, primed) per coordinate
    let mut words: Vec<Vec<(usize, bool)>> = vec![vec![(0, false)], vec![(0, true)]];
    let mut pairs = vec![1usize];
    for _ in 1..d {
        let renamed: Vec<Vec<(usize, bool)>> = words
            .iter()
            .map(|w| w.iter().zip(&pairs).map(|(&(k, p), &count)| (k + count, p)).collect())
            .collect();
        for w in &mut words {
            w.push((0, false));
        }
        for mut w in renamed {
            w.push((0, true));
            words.push(w);
        }
        for p in &mut pairs {
            *p *= 2;
        }
        pairs.push(1);
    }
    let letters: Vec<Vec<Letter>> = pairs
        .iter()
        .enumerate()
        .map(|(i, &count)| (0..count).map(|k| alphabet.intern(&format!("s{}_{}", i + 1, k + 1))).collect())
        .collect();
    let code_words: Vec<CodeWord> = words
        .iter()
        .map(|w| {
            CodeWord::new(
                w.iter()
                    .enumerate()
                    .map(|(i, &(k, p))| if p { letters[i][k].complement() } else { letters[i][k] })
                    .collect(),
            )
        })
        .collect();
    Ok(crate::codes::validate_cube_code(&code_words)?)
}

/// Merges letter pairs until the letter sum is `target`. Each step takes the
/// lowest coordinate with two or more pairs and merges its second smallest
/// pair into its smallest.
pub fn reduce_letter_sum(v: &CubeCode, target: usize) -> Result<CubeCode, ConstructionError> {
    let sum = v.letter_profile().sum();
    if target < v.d() || target > sum {
        return Err(ConstructionError::TargetOutOfRange { target, lo: v.d(), hi: sum });
    }
    let mut cur = v.clone();
    for _ in target..sum {
        let prof = cur.letter_profile();
        let i = (0..cur.d()).find(|&i| prof.l(i) >= 2).expect("sum above d leaves a coordinate with two pairs");
        let mut bases: Vec<Letter> = prof.sets[i].iter().filter(|l| !l.is_primed()).copied().collect();
        bases.sort();
        cur = cur.merge_letters(i, bases[1], bases[0])?;
    }
    Ok(cur)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducible {
    Tiling(DominoTiling),
    /// No regular `*`-irreducible tiling exists: `n` lies outside `d+1..=2^d-1`.
    NoSuchTiling { n: usize, d: usize },
}

/// A regular `*`-irreducible `(n-d)`-domino tiling of `[0,2]^n`, or the
/// verdict that none exists.
pub fn construct_irreducible(n: usize, d: usize) -> Result<Irreducible, ConstructionError> {
    if d == 0 || n <= d {
        return Err(ConstructionError::BadParameters { n, d });
    }
    if d < usize::BITS as usize && n > (1usize << d) - 1 {
        return Ok(Irreducible::NoSuchTiling { n, d });
    }
    let mut alphabet = Alphabet::new();
    let code = reduce_letter_sum(&max_letter_code(d, &mut alphabet)?, n)?;
    let t = code_to_tiling(&code);
    debug_assert_eq!(t.n(), n);
    Ok(Irreducible::Tiling(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures::{code, SHIFT_W};
    use crate::regularity::find_regular_partition;
    use crate::tiling::fixtures::tiling;

    #[test]
    fn trivial_tilings() {
        let (t, c) = trivial_regular(3, 2).unwrap();
        assert_eq!(t, tiling(&["00*", "01*", "10*", "11*"]));
        assert!(check_certificate(&t, &c));
        assert_eq!(find_regular_partition(&t), Some(c));
        assert_eq!(trivial_regular(2, 1).unwrap().0, tiling(&["0*", "1*"]));
        let (t, c) = trivial_regular(7, 3).unwrap();
        assert_eq!(t.words().len(), 8);
        assert!(check_certificate(&t, &c));
        assert!(trivial_regular(3, 3).is_err());
        assert!(trivial_regular(2, 0).is_err());
    }

    #[test]
    fn lifts() {
        let (t, c) = trivial_regular(2, 1).unwrap();
        let (l, lc) = lift(&t, &c).unwrap();
        assert_eq!(l, tiling(&["00*", "01*", "10*", "11*"]));
        assert_eq!((l.n(), l.d()), (3, 2));
        assert!(check_certificate(&l, &lc));
        for (n, d) in [(4, 2), (6, 3)] {
            let (t, c) = trivial_regular(n - 1, d - 1).unwrap();
            assert_eq!(lift(&t, &c).unwrap(), trivial_regular(n, d).unwrap());
        }
        let t3 = tiling(&["0*0", "1*0", "*01", "*11"]);
        let c3 = find_regular_partition(&t3).unwrap();
        let (l, lc) = lift(&t3, &c3).unwrap();
        assert_eq!((l.n(), l.d(), l.words().len()), (4, 3, 8));
        assert_eq!(lc.groups(), &[vec![0], vec![1, 2], vec![3]]);
        assert_eq!(find_regular_partition(&l), Some(lc));
        let bad = RegularityCertificate::new(vec![vec![0, 2], vec![1]], vec![]);
        assert_eq!(lift(&t3, &bad), Err(ConstructionError::BadCertificate));
    }

    #[test]
    fn max_letter_codes() {
        for d in 1..=MAX_LETTER_CODE_D {
            let v = max_letter_code(d, &mut Alphabet::new()).unwrap();
            assert_eq!(v.letter_profile().sum(), (1 << d) - 1);
        }
        let mut a = Alphabet::new();
        let two = max_letter_code(2, &mut a).unwrap();
        assert!(two.is_renaming_of(&code(&mut a, &SHIFT_W)));
        assert_eq!(max_letter_code(1, &mut a).unwrap().words().len(), 2);
        assert_eq!(max_letter_code(0, &mut a), Err(ConstructionError::Unsupported(0)));
        assert_eq!(max_letter_code(7, &mut a), Err(ConstructionError::Unsupported(7)));
    }

    #[test]
    fn reductions() {
        let mut a = Alphabet::new();
        let w = code(&mut a, &SHIFT_W);
        let r = reduce_letter_sum(&w, 2).unwrap();
        assert_eq!(r, code(&mut a, &["c c", "c' c", "c c'", "c' c'"]));
        assert_eq!(reduce_letter_sum(&w, 3).unwrap(), w);
        assert!(matches!(reduce_letter_sum(&w, 1), Err(ConstructionError::TargetOutOfRange { .. })));
        assert!(matches!(reduce_letter_sum(&w, 4), Err(ConstructionError::TargetOutOfRange { .. })));
        let m3 = max_letter_code(3, &mut a).unwrap();
        for target in 3..=7 {
            assert_eq!(reduce_letter_sum(&m3, target).unwrap().letter_profile().sum(), target);
        }
    }

    #[test]
    fn irreducible_tilings() {
        match construct_irreducible(3, 2).unwrap() {
            Irreducible::Tiling(t) => assert_eq!(t, tiling(&["*01", "*11", "0*0", "1*0"])),
            other => panic!("{other:?}"),
        }
        assert_eq!(construct_irreducible(4, 2).unwrap(), Irreducible::NoSuchTiling { n: 4, d: 2 });
        for d in 2..=4 {
            for n in d + 1..=(1 << d) - 1 {
                let Irreducible::Tiling(t) = construct_irreducible(n, d).unwrap() else { panic!() };
                assert_eq!((t.n(), t.d()), (n, d));
                let c = find_regular_partition(&t).unwrap();
                assert!(c.stars().is_empty());
                assert_eq!(c.groups().iter().map(Vec::len).sum::<usize>(), n);
                assert!(t.words().iter().all(|w| w.len() - w.weight() == n - d));
            }
            assert!(matches!(construct_irreducible(1 << d, d).unwrap(), Irreducible::NoSuchTiling { .. }));
        }
        assert!(construct_irreducible(2, 2).is_err());
    }
}
