//! Regular tilings as cube tiling codes, induced tilings, and the translation
//! of shift sequences into flip sequences.

use std::collections::HashMap;

use thiserror::Error;

use crate::codes::{validate_cube_code, CodeError, CubeCode, ShiftStep};
use crate::regularity::{check_partition, find_regular_partition, RegularityCertificate};
use crate::tiling::{validate_tiling, DominoTiling, FlipStep, TilingError, TwinPair};
use crate::word::{Alphabet, CodeWord, Letter, Trit, TritWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("certificate does not fit the tiling")]
    BadCertificate,
    #[error("frame has {0} columns, tiling has {1}")]
    FrameWidth(usize, usize),
    #[error("column {column} has no letter at coordinate {coord}")]
    NoLetter { coord: usize, column: usize },
    #[error("word {0} does not have exactly one non-star entry per coordinate")]
    NotOneHot(TritWord),
    #[error("letter {letter:?} at coordinate {coord} is outside the letters of that coordinate; relabel the shifts first")]
    LetterOutsideAlphabet { coord: usize, letter: Letter },
    #[error("shift {index}: removed pair is not in the current code")]
    ShiftNotApplicable { index: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Correspondence between tiling columns and code letters: column `j` carries
/// letter `letters[j]` at coordinate `home[j]`. Value 0 in column `j` encodes
/// the unprimed letter, 1 the primed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    home: Vec<Option<usize>>,
    letters: Vec<Letter>,
    d: usize,
    by_letter: HashMap<(usize, Letter), usize>,
}

impl Frame {
    /// `letters` must be unprimed and distinct within each coordinate.
    pub fn new(d: usize, home: Vec<Option<usize>>, letters: Vec<Letter>) -> Frame {
        assert_eq!(home.len(), letters.len());
        let mut by_letter = HashMap::new();
        for (j, (h, l)) in home.iter().zip(&letters).enumerate() {
            assert!(!l.is_primed());
            if let Some(i) = h {
                assert!(*i < d);
                let dup = by_letter.insert((*i, *l), j);
                assert!(dup.is_none(), "letter repeated at one coordinate");
            }
        }
        Frame { home, letters, d, by_letter }
    }

    /// Columns of group `i` take coordinate `i` in the given group order, and
    /// column `j` is named `a{j+1}`. Star columns get letters but no home.
    pub fn from_certificate(t: &DominoTiling, c: &RegularityCertificate, alphabet: &mut Alphabet) -> Result<Frame, BridgeError> {
        if !check_partition(t, c.groups(), c.stars()) {
            return Err(BridgeError::BadCertificate);
        }
        let letters: Vec<Letter> = (1..=t.n()).map(|j| alphabet.intern(&format!("a{j}"))).collect();
        let mut home = vec![None; t.n()];
        for (i, g) in c.groups().iter().enumerate() {
            for &j in g {
                home[j] = Some(i);
            }
        }
        Ok(Frame::new(t.d(), home, letters))
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn home(&self, column: usize) -> Option<usize> {
        self.home[column]
    }

    pub fn letter(&self, column: usize) -> Letter {
        self.letters[column]
    }

    pub fn column_of(&self, coord: usize, letter: Letter) -> Option<usize> {
        self.by_letter.get(&(coord, letter.unprimed())).copied()
    }

    /// Lets `column` carry its letter at coordinate `coord`.
    pub fn with_home(mut self, column: usize, coord: usize) -> Frame {
        if let Some(old) = self.home[column] {
            self.by_letter.remove(&(old, self.letters[column]));
        }
        self.home[column] = Some(coord);
        self.by_letter.insert((coord, self.letters[column]), column);
        self
    }

    pub fn encode_word(&self, u: &TritWord) -> Result<CodeWord, BridgeError> {
        let mut out: Vec<Option<Letter>> = vec![None; self.d];
        for j in u.prop() {
            let i = self.home[j].ok_or(BridgeError::NotOneHot(*u))?;
            if out[i].is_some() {
                return Err(BridgeError::NotOneHot(*u));
            }
            let l = self.letters[j];
            out[i] = Some(if u.get(j) == Trit::One { l.complement() } else { l });
        }
        let letters = out.into_iter().collect::<Option<Vec<_>>>().ok_or(BridgeError::NotOneHot(*u))?;
        Ok(CodeWord::new(letters))
    }

    pub fn decode_word(&self, v: &CodeWord) -> Result<TritWord, BridgeError> {
        let mut w = TritWord::stars(self.n()).map_err(TilingError::from)?;
        for (i, &l) in v.letters().iter().enumerate() {
            let j = self.column_of(i, l).ok_or(BridgeError::LetterOutsideAlphabet { coord: i, letter: l })?;
            w = w.with(j, if l.is_primed() { Trit::One } else { Trit::Zero });
        }
        Ok(w)
    }

    pub fn encode(&self, t: &DominoTiling) -> Result<CubeCode, BridgeError> {
        if t.n() != self.n() {
            return Err(BridgeError::FrameWidth(self.n(), t.n()));
        }
        let words = t.words().iter().map(|u| self.encode_word(u)).collect::<Result<Vec<_>, _>>()?;
        Ok(validate_cube_code(&words)?)
    }

    pub fn decode(&self, v: &CubeCode) -> Result<DominoTiling, BridgeError> {
        let words = v.words().iter().map(|w| self.decode_word(w)).collect::<Result<Vec<_>, _>>()?;
        Ok(validate_tiling(&words, self.n(), v.d())?)
    }

    /// The certificate of a tiling encoded in this frame: groups are the homed
    /// non-star columns per coordinate, in coordinate order.
    pub fn certificate_for(&self, t: &DominoTiling) -> RegularityCertificate {
        let support = t.support_mask();
        let mut groups = vec![Vec::new(); self.d];
        let mut stars = Vec::new();
        for j in 0..self.n() {
            match self.home[j] {
                Some(i) if support >> j & 1 == 1 => groups[i].push(j),
                _ => stars.push(j),
            }
        }
        RegularityCertificate::in_coordinate_order(groups, stars)
    }
}

/// The cube tiling code of a regular tiling, with letter `a{j}` for column `j`
/// (1-based). Group `i` of the certificate becomes coordinate `i`.
pub fn tiling_to_code(t: &DominoTiling, c: &RegularityCertificate, alphabet: &mut Alphabet) -> Result<CubeCode, BridgeError> {
    Frame::from_certificate(t, c, alphabet)?.encode(t)
}

/// The tiling induced by a code, with the frame that produced it. Coordinate
/// blocks run left to right; within a block, letter pairs are numbered by first
/// occurrence in the sorted word list.
pub fn induced_tiling(v: &CubeCode) -> (DominoTiling, Frame) {
    let mut home = Vec::new();
    let mut letters = Vec::new();
    for i in 0..v.d() {
        let mut seen: Vec<Letter> = Vec::new();
        for w in v.words() {
            let l = w.get(i).unprimed();
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        home.extend(std::iter::repeat_n(Some(i), seen.len()));
        letters.extend(seen);
    }
    let frame = Frame::new(v.d(), home, letters);
    let t = frame.decode(v).expect("every letter of the code has a column");
    debug_assert!(t.star_columns().is_empty());
    debug_assert!(find_regular_partition(&t).is_some());
    (t, frame)
}

pub fn code_to_tiling(v: &CubeCode) -> DominoTiling {
    induced_tiling(v).0
}

/// Column order `p` such that `star_reduce(t).permute_columns(p)` equals
/// `code_to_tiling(tiling_to_code(t, c))`.
pub fn round_trip_order(t: &DominoTiling, c: &RegularityCertificate) -> Result<Vec<usize>, BridgeError> {
    let mut alphabet = Alphabet::new();
    let frame = Frame::from_certificate(t, c, &mut alphabet)?;
    let code = frame.encode(t)?;
    let (_, induced) = induced_tiling(&code);
    let stars = t.star_columns();
    let reduced_index = |j: usize| j - stars.iter().filter(|&&s| s < j).count();
    Ok((0..induced.n())
        .map(|k| {
            let i = induced.home(k).expect("induced frames home every column");
            reduced_index(frame.column_of(i, induced.letter(k)).expect("letter from this frame"))
        })
        .collect())
}

/// Flips replaying a shift sequence, with the tiling and certificate reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transpiled {
    pub flips: Vec<FlipStep>,
    pub tiling: DominoTiling,
    pub certificate: RegularityCertificate,
}

/// Translates shifts on the code of `t` (in `frame`) into flips of `t`.
///
/// A shift replacing letter pair `a_j` by `a_s` at coordinate `i` becomes the
/// flip that glues the twin pair along column `j` and cuts along `s`. Every
/// inserted letter must already have a column homed at its coordinate.
pub fn transpile_in_frame(t: &DominoTiling, frame: &Frame, shifts: &[ShiftStep]) -> Result<Transpiled, BridgeError> {
    let mut code = frame.encode(t)?;
    let mut tiling = t.clone();
    let mut flips = Vec::with_capacity(shifts.len());
    for (index, s) in shifts.iter().enumerate() {
        if !s.removed.iter().all(|w| code.contains(w)) {
            return Err(BridgeError::ShiftNotApplicable { index });
        }
        let dec = |w: &CodeWord| frame.decode_word(w);
        let removed = TwinPair::new(dec(&s.removed[0])?, dec(&s.removed[1])?)?;
        let inserted = TwinPair::new(dec(&s.inserted[0])?, dec(&s.inserted[1])?)?;
        let step = FlipStep::new(removed, inserted)?;
        tiling = tiling.apply_flip(&step)?;
        code = code.apply_shift(s)?;
        flips.push(step);
        debug_assert_eq!(frame.encode(&tiling).as_ref(), Ok(&code));
    }
    let certificate = frame.certificate_for(&tiling);
    debug_assert!(check_partition(&tiling, certificate.groups(), certificate.stars()));
    Ok(Transpiled { flips, tiling, certificate })
}

/// [`transpile_in_frame`] with the frame of [`tiling_to_code`]: shifts may use
/// only letters `a{j}` with `j` in the group of their coordinate.
pub fn transpile_shifts_to_flips(
    t: &DominoTiling,
    c: &RegularityCertificate,
    shifts: &[ShiftStep],
    alphabet: &mut Alphabet,
) -> Result<Transpiled, BridgeError> {
    let frame = Frame::from_certificate(t, c, alphabet)?;
    transpile_in_frame(t, &frame, shifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures::{code, shift, word, SHIFT_PATH, SHIFT_V, SHIFT_W, REGULAR_7D_CODE};
    use crate::regularity::{check_certificate, find_regular_partition};
    use crate::tiling::fixtures::*;
    use crate::tiling::Region;

    fn a_alphabet() -> Alphabet {
        let mut a = Alphabet::new();
        for j in 1..=7 {
            a.intern(&format!("a{j}"));
        }
        a
    }

    #[test]
    fn regular_7d_code() {
        let t = tiling(&REGULAR_7D);
        let c = find_regular_partition(&t).unwrap();
        let mut a = a_alphabet();
        let v = tiling_to_code(&t, &c, &mut a).unwrap();
        assert_eq!(v, code(&mut a, &REGULAR_7D_CODE));
        // rows map one to one, with the table's rows 5 and 6 paired crosswise
        let frame = Frame::from_certificate(&t, &c, &mut a).unwrap();
        let rows: Vec<String> = REGULAR_7D
            .iter()
            .map(|r| a.format_word(&frame.encode_word(&r.parse().unwrap()).unwrap()))
            .collect();
        let mut expected: Vec<String> = REGULAR_7D_CODE.iter().map(|s| s.to_string()).collect();
        expected.swap(4, 5);
        assert_eq!(rows, expected);
    }

    #[test]
    fn small_codes() {
        let mut a = a_alphabet();
        let t = tiling(&["0*0", "1*0", "*01", "*11"]);
        let c = find_regular_partition(&t).unwrap();
        let v = tiling_to_code(&t, &c, &mut a).unwrap();
        assert_eq!(v, code(&mut a, &["a1 a3", "a1' a3", "a2 a3'", "a2' a3'"]));
        let trivial = tiling(&["00*", "01*", "10*", "11*"]);
        let c = find_regular_partition(&trivial).unwrap();
        let v = tiling_to_code(&trivial, &c, &mut a).unwrap();
        assert!(v.is_simple());
        assert_eq!(v, code(&mut a, &["a1 a2", "a1 a2'", "a1' a2", "a1' a2'"]));
        let bogus = RegularityCertificate::new(vec![vec![0, 2], vec![1]], vec![]);
        assert_eq!(tiling_to_code(&t, &bogus, &mut a), Err(BridgeError::BadCertificate));
    }

    #[test]
    fn induced_tilings() {
        let mut a = a_alphabet();
        let v = code(&mut a, &["a1 a2", "a1 a2'", "a1' a3", "a1' a3'"]);
        assert_eq!(code_to_tiling(&v), tiling(&["00*", "01*", "1*0", "1*1"]));
        let simple = code(&mut a, &["a1 a2", "a1 a2'", "a1' a2", "a1' a2'"]);
        let s = code_to_tiling(&simple);
        assert_eq!((s.n(), s.d()), (2, 2));
        let t1 = code(&mut a, &REGULAR_7D_CODE);
        assert_eq!(code_to_tiling(&t1), tiling(&REGULAR_7D).star_reduce().0);
        let mut b = Alphabet::new();
        let fig = code(&mut b, &SHIFT_V);
        let induced = code_to_tiling(&fig);
        assert_eq!(induced, tiling(&["00*", "01*", "1*0", "1*1"]));
    }

    #[test]
    fn round_trips() {
        let mut cases: Vec<DominoTiling> = vec![tiling(&REGULAR_7D), tiling(&["0*0", "1*0", "*01", "*11"])];
        for (n, d) in [(3, 2), (4, 2), (4, 3)] {
            cases.extend(Region::full(n).tilings(d).map(|w| validate_tiling(&w, n, d).unwrap()));
        }
        let mut checked = 0;
        for t in cases {
            let Some(c) = find_regular_partition(&t) else { continue };
            let v = tiling_to_code(&t, &c, &mut Alphabet::new()).unwrap();
            let order = round_trip_order(&t, &c).unwrap();
            assert_eq!(t.star_reduce().0.permute_columns(&order).unwrap(), code_to_tiling(&v), "{t:?}");
            checked += 1;
        }
        assert!(checked > 50);
    }

    #[test]
    fn regular_7d_transpile() {
        let t = tiling(&REGULAR_7D);
        let c = find_regular_partition(&t).unwrap();
        let mut a = a_alphabet();
        let s = shift(&mut a, &["a2 a3 a5'", "a2' a3 a5'", "a1 a3 a5'", "a1' a3 a5'"]);
        let out = transpile_shifts_to_flips(&t, &c, &[s], &mut a).unwrap();
        assert_eq!(out.flips.len(), 1);
        let f = &out.flips[0];
        assert_eq!(f.removed.words.to_vec(), words(&["*00*1**", "*10*1**"]));
        assert_eq!(f.inserted.words.to_vec(), words(&["0*0*1**", "1*0*1**"]));
        // column 2 lost its only pair and moved to the star set
        assert_eq!(out.certificate.groups()[0], vec![0]);
        assert_eq!(out.certificate.stars(), &[1, 6]);
        assert!(check_partition(&out.tiling, out.certificate.groups(), out.certificate.stars()));
        assert!(check_certificate(&out.tiling, &out.certificate));

        let empty = transpile_shifts_to_flips(&t, &c, &[], &mut a).unwrap();
        assert!(empty.flips.is_empty());
        assert_eq!(empty.tiling, t);
    }

    #[test]
    fn transpile_rejects_foreign_letters() {
        let t = tiling(&REGULAR_7D);
        let c = find_regular_partition(&t).unwrap();
        let mut a = a_alphabet();
        // a3 belongs to coordinate 2, not 1
        let s = shift(&mut a, &["a2 a3 a5'", "a2' a3 a5'", "a3 a3 a5'", "a3' a3 a5'"]);
        assert!(matches!(
            transpile_shifts_to_flips(&t, &c, &[s], &mut a),
            Err(BridgeError::LetterOutsideAlphabet { coord: 0, .. })
        ));
        let gone = shift(&mut a, &["a2 a4 a5'", "a2' a4 a5'", "a1 a4 a5'", "a1' a4 a5'"]);
        assert_eq!(
            transpile_shifts_to_flips(&t, &c, &[gone], &mut a),
            Err(BridgeError::ShiftNotApplicable { index: 0 })
        );
    }

    #[test]
    fn column_reappears() {
        let t = tiling(&REGULAR_7D);
        let c = find_regular_partition(&t).unwrap();
        let mut a = a_alphabet();
        let s = shift(&mut a, &["a2 a3 a5'", "a2' a3 a5'", "a1 a3 a5'", "a1' a3 a5'"]);
        let out = transpile_shifts_to_flips(&t, &c, &[s.clone(), s.inverse()], &mut a).unwrap();
        assert_eq!(out.tiling, t);
        assert_eq!(out.certificate, c);
    }

    #[test]
    fn shift_demo_transpile() {
        let mut a = Alphabet::new();
        let v = code(&mut a, &SHIFT_V);
        let w = code(&mut a, &SHIFT_W);
        let abc: Vec<Letter> = ["a", "b", "c"].iter().map(|n| a.lookup(n).unwrap()).collect();
        let home = (0..6).map(|j| Some(j / 3)).collect();
        let letters = abc.iter().chain(&abc).copied().collect();
        let frame = Frame::new(2, home, letters);
        let start = frame.decode(&v).unwrap();
        assert_eq!(start.n(), 6);
        let shifts: Vec<ShiftStep> = SHIFT_PATH.iter().map(|s| shift(&mut a, s)).collect();
        let out = transpile_in_frame(&start, &frame, &shifts).unwrap();
        assert_eq!(out.flips.len(), 4);
        assert_eq!(start.apply_flips(&out.flips).unwrap(), out.tiling);
        assert_eq!(out.tiling, frame.decode(&w).unwrap());
        let (reduced, _) = out.tiling.star_reduce();
        let induced = code_to_tiling(&w);
        assert_eq!(reduced.n(), induced.n());
        assert_eq!(frame.encode(&out.tiling).unwrap(), w);
        let _ = word(&mut a, "a a");
    }
}
