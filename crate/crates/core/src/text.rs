//! Plain-text file formats for tilings, codes, flip and shift sequences.
//!
//! All axes in text are 1-based. `#` starts a comment; blank lines are skipped.

use thiserror::Error;

use crate::codes::{validate_cube_code, CodeError, CubeCode, ShiftStep};
use crate::tiling::{validate_tiling, DominoTiling, FlipStep, TilingError, TwinPair};
use crate::word::{Alphabet, CodeWord, TritWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Word { line: usize, source: WordError },
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn syntax(line: usize, msg: impl Into<String>) -> TextError {
    TextError::Syntax { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses `n d` followed by `2^d` trit words, and validates the tiling.
pub fn parse_tiling(text: &str) -> Result<DominoTiling, TextError> {
    let (n, d, words) = parse_tiling_rows(text)?;
    Ok(validate_tiling(&words, n, d)?)
}

/// The header and the words of a tiling file in file order, unvalidated.
pub fn parse_tiling_rows(text: &str) -> Result<(usize, usize, Vec<TritWord>), TextError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing \"n d\" header"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|s| s.parse().map_err(|_| syntax(hl, format!("bad number {s:?}"))))
        .collect::<Result<_, _>>()?;
    let [n, d] = nums[..] else {
        return Err(syntax(hl, "header must be \"n d\""));
    };
    let mut words = Vec::new();
    for (line, l) in lines {
        words.push(l.parse::<TritWord>().map_err(|source| TextError::Word { line, source })?);
    }
    Ok((n, d, words))
}

pub fn format_tiling(t: &DominoTiling) -> String {
    let mut out = format!("{} {}\n", t.n(), t.d());
    for w in t.words() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

/// One code word per line, letters separated by whitespace.
pub fn parse_code(text: &str, alphabet: &mut Alphabet) -> Result<CubeCode, TextError> {
    let mut words = Vec::new();
    for (line, l) in content_lines(text) {
        words.push(alphabet.parse_word(l).map_err(|source| TextError::Word { line, source })?);
    }
    Ok(validate_cube_code(&words)?)
}

pub fn format_code(v: &CubeCode, alphabet: &Alphabet) -> String {
    v.words().iter().map(|w| alphabet.format_word(w) + "\n").collect()
}

fn format_pair<T>(pair: &[T; 2], f: impl Fn(&T) -> String) -> String {
    format!("({},{})", f(&pair[0]), f(&pair[1]))
}

/// `FLIP i->k: (u,q) => (u',q')`
pub fn format_flip(f: &FlipStep) -> String {
    format!(
        "FLIP {}->{}: {} => {}",
        f.removed.axis + 1,
        f.inserted.axis + 1,
        format_pair(&f.removed.words, TritWord::to_string),
        format_pair(&f.inserted.words, TritWord::to_string)
    )
}

pub fn format_flips(flips: &[FlipStep]) -> String {
    flips.iter().map(|f| format_flip(f) + "\n").collect()
}

/// `SHIFT i: (v,w) -> (u,q)`
pub fn format_shift(s: &ShiftStep, alphabet: &Alphabet) -> String {
    let fw = |w: &CodeWord| alphabet.format_word(w);
    format!("SHIFT {}: {} -> {}", s.axis + 1, format_pair(&s.removed, fw), format_pair(&s.inserted, fw))
}

pub fn format_shifts(shifts: &[ShiftStep], alphabet: &Alphabet) -> String {
    shifts.iter().map(|s| format_shift(s, alphabet) + "\n").collect()
}

/// Splits `(x,y)` into its two halves.
fn split_pair(line: usize, s: &str) -> Result<[&str; 2], TextError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| syntax(line, format!("expected (x,y), got {s:?}")))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| syntax(line, "pair needs a comma"))?;
    Ok([a.trim(), b.trim()])
}

fn parse_axis(line: usize, s: &str) -> Result<usize, TextError> {
    match s.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k - 1),
        _ => Err(syntax(line, format!("bad axis {s:?}"))),
    }
}

fn parse_twin_pair(line: usize, s: &str) -> Result<TwinPair, TextError> {
    let [a, b] = split_pair(line, s)?;
    let word = |x: &str| x.parse::<TritWord>().map_err(|source| TextError::Word { line, source });
    Ok(TwinPair::new(word(a)?, word(b)?)?)
}

pub fn parse_flips(text: &str) -> Result<Vec<FlipStep>, TextError> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        let rest = l.strip_prefix("FLIP ").ok_or_else(|| syntax(line, "expected FLIP"))?;
        let (axes, pairs) = rest.split_once(':').ok_or_else(|| syntax(line, "missing ':'"))?;
        let (i, k) = axes.split_once("->").ok_or_else(|| syntax(line, "axes must be i->k"))?;
        let (old, new) = pairs.split_once("=>").ok_or_else(|| syntax(line, "missing '=>'"))?;
        let step = FlipStep::new(parse_twin_pair(line, old)?, parse_twin_pair(line, new)?)?;
        if (step.removed.axis, step.inserted.axis) != (parse_axis(line, i)?, parse_axis(line, k)?) {
            return Err(syntax(line, "axes do not match the pairs"));
        }
        out.push(step);
    }
    Ok(out)
}

pub fn parse_shifts(text: &str, alphabet: &mut Alphabet) -> Result<Vec<ShiftStep>, TextError> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        let rest = l.strip_prefix("SHIFT ").ok_or_else(|| syntax(line, "expected SHIFT"))?;
        let (axis, pairs) = rest.split_once(':').ok_or_else(|| syntax(line, "missing ':'"))?;
        let (old, new) = pairs.split_once("->").ok_or_else(|| syntax(line, "missing '->'"))?;
        let mut word = |x: &str| alphabet.parse_word(x).map_err(|source| TextError::Word { line, source });
        let [v, w] = split_pair(line, old)?;
        let [u, q] = split_pair(line, new)?;
        let (v, w, u, q) = (word(v)?, word(w)?, word(u)?, word(q)?);
        let step = ShiftStep::new(v, w, u, q)?;
        if step.axis != parse_axis(line, axis)? {
            return Err(syntax(line, "axis does not match the pairs"));
        }
        out.push(step);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures::{alphabet, code, shift, SHIFT_PATH, SHIFT_V};
    use crate::tiling::fixtures::{tiling, REGULAR_7D};

    #[test]
    fn tiling_round_trip() {
        let t = tiling(&REGULAR_7D);
        let text = format_tiling(&t);
        assert!(text.starts_with("7 3\n"));
        assert_eq!(parse_tiling(&text).unwrap(), t);
        assert_eq!(format_tiling(&parse_tiling(&text).unwrap()), text);
        let commented = "# square\n2 1\n\n1*  # right\n0*\n";
        assert_eq!(parse_tiling(commented).unwrap(), tiling(&["0*", "1*"]));
    }

    #[test]
    fn tiling_errors() {
        assert!(matches!(parse_tiling(""), Err(TextError::Syntax { line: 1, .. })));
        assert!(matches!(parse_tiling("2\n0*\n1*"), Err(TextError::Syntax { .. })));
        assert!(matches!(parse_tiling("2 1\n0*\n1x"), Err(TextError::Word { line: 3, .. })));
        assert!(matches!(parse_tiling("2 1\n0*\n0*"), Err(TextError::Tiling(_))));
        assert!(matches!(parse_tiling("2 1\n0*"), Err(TextError::Tiling(TilingError::Cardinality { .. }))));
    }

    #[test]
    fn code_round_trip() {
        let mut a = alphabet();
        let v = code(&mut a, &SHIFT_V);
        let text = format_code(&v, &a);
        assert_eq!(parse_code(&text, &mut a).unwrap(), v);
        assert_eq!(parse_code("a a # x\n\na a'\na' b\na' b'\n", &mut a).unwrap(), v);
        assert!(matches!(parse_code("a a\na a\n", &mut a), Err(TextError::Code(_))));
        assert!(matches!(parse_code("a 1\n", &mut a), Err(TextError::Word { line: 1, .. })));
    }

    #[test]
    fn flip_lines() {
        let t = tiling(&REGULAR_7D);
        let flips = t.all_flips();
        let text = format_flips(&flips);
        assert_eq!(parse_flips(&text).unwrap(), flips);
        let sq = tiling(&["0*", "1*"]).all_flips();
        assert_eq!(format_flips(&sq), "FLIP 1->2: (0*,1*) => (*0,*1)\n");
        assert!(parse_flips("FLIP 2->1: (0*,1*) => (*0,*1)").is_err());
        assert!(parse_flips("FLIP 1->2: (0*,1*) => (*0,*1").is_err());
        assert!(parse_flips("FLOP 1->2: (0*,1*) => (*0,*1)").is_err());
    }

    #[test]
    fn shift_lines() {
        let mut a = alphabet();
        let shifts: Vec<ShiftStep> = SHIFT_PATH.iter().map(|s| shift(&mut a, s)).collect();
        let text = format_shifts(&shifts, &a);
        assert_eq!(text.lines().next().unwrap(), "SHIFT 2: (a a,a a') -> (a c,a c')");
        assert_eq!(parse_shifts(&text, &mut a).unwrap(), shifts);
        assert!(parse_shifts("SHIFT 1: (a a,a a') -> (a c,a c')", &mut a).is_err());
    }
}
