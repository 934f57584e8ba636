//! Argument parsing and dispatch for the `dominoflip` binary.
//!
//! Exit codes: 0 success, 1 invalid input or refuted property, 2 no path or
//! no such object, 3 budget exhausted, 4 I/O, format or usage error.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use dominoflip::bridge::{code_to_tiling, BridgeError, Frame};
use dominoflip::codes::{shift_path_search, CubeCode, SearchOptions, ShiftSearch};
use dominoflip::constructions::{
    construct_irreducible, max_letter_code, reduce_letter_sum, trivial_regular, ConstructionError, Irreducible,
};
use dominoflip::explorer::{
    build_f_c, connect, connect_via_codes, family_flip_connected, flip_class_with_progress, to_dot, to_json,
    Connection, ExplorerError, FcRegion, FlipGraph, SearchLimits, Strategy, DEFAULT_BUDGET,
};
use dominoflip::regularity::{check_certificate, find_regular_partition, simple_components, RegularityCertificate};
use dominoflip::text::{
    format_code, format_flips, format_shifts, format_tiling, parse_code, parse_flips, parse_shifts, parse_tiling,
    parse_tiling_rows, TextError,
};
use dominoflip::tiling::DominoTiling;
use dominoflip::word::{Alphabet, TritWord};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_NOT_FOUND: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "dominoflip", version, about = "Domino tilings of [0,2]^n, cube tiling codes and flips")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Node budget for searches
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Worker threads for flip-graph expansion
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
}

impl Limits {
    fn search(self) -> SearchLimits {
        SearchLimits { budget: self.budget, workers: self.workers.into() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a tiling file and report its regularity partition
    Validate { file: PathBuf },
    /// Print the regularity partition as JSON (1-based)
    Partition { file: PathBuf },
    /// List the simple components of a tiling
    Components { file: PathBuf },
    /// Encode a regular tiling as a cube tiling code, row by row
    ToCode {
        file: PathBuf,
        /// Partition JSON to use instead of the one found
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Print the tiling induced by a code file
    FromCode { file: PathBuf },
    /// List the flips of a tiling, or of one twin pair
    Flips {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["U", "Q"])]
        pair: Option<Vec<String>>,
    },
    /// Apply a flip file to a tiling and print the result
    Apply { file: PathBuf, flips: PathBuf },
    /// Search a shift path between two codes, or replay a shift file
    #[command(group(ArgGroup::new("goal").required(true).args(["to", "replay"])))]
    Shifts {
        from: PathBuf,
        to: Option<PathBuf>,
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Find a flip sequence between two tilings
    Connect {
        a: PathBuf,
        b: PathBuf,
        /// Only route through cube tiling codes; both tilings must be regular
        #[arg(long)]
        via_codes: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Explore the flip class of a tiling
    Class {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Build a trivial regular tiling, an irreducible one, or a code of largest letter sum
    Construct {
        #[arg(long, required_unless_present = "max_code")]
        n: Option<usize>,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        irreducible: bool,
        #[arg(long, conflicts_with_all = ["irreducible", "n"])]
        max_code: bool,
    },
    /// Merge letters of a code until its letter sum is the target
    Reduce {
        file: PathBuf,
        #[arg(long)]
        target: usize,
    },
    /// The region left by a simple component, and optionally its regular fillings
    Region {
        file: PathBuf,
        /// 1-based index into the `components` listing
        #[arg(long)]
        component: Option<usize>,
        /// For a simple tiling: remove the twin pairs along these columns
        #[arg(long, value_delimiter = ',', conflicts_with = "component")]
        columns: Option<Vec<usize>>,
        /// Enumerate fillings that make the tiling regular and check flip connectivity
        #[arg(long)]
        family: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Write the flip class of a tiling as DOT
    ExportDot {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Display) -> Failure {
    Failure { code, msg: msg.to_string() }
}

type Outcome = Result<u8, Failure>;

/// Runs one invocation. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_IO;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn text_failure(path: &Path, e: TextError) -> Failure {
    let code = match e {
        TextError::Tiling(_) | TextError::Code(_) => EXIT_INVALID,
        TextError::Syntax { .. } | TextError::Word { .. } => EXIT_IO,
    };
    fail(code, format!("{}: {e}", path.display()))
}

fn load_tiling(path: &Path) -> Result<DominoTiling, Failure> {
    parse_tiling(&read(path)?).map_err(|e| text_failure(path, e))
}

fn load_code(path: &Path, alphabet: &mut Alphabet) -> Result<CubeCode, Failure> {
    parse_code(&read(path)?, alphabet).map_err(|e| text_failure(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| fail(EXIT_IO, e))
}

fn explorer_failure(e: ExplorerError) -> Failure {
    match e {
        ExplorerError::BudgetExhausted(_) => fail(EXIT_BUDGET, e),
        _ => fail(EXIT_INVALID, e),
    }
}

fn construction_failure(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::BadParameters { .. }
        | ConstructionError::Unsupported(_)
        | ConstructionError::TargetOutOfRange { .. } => fail(EXIT_IO, e),
        _ => fail(EXIT_INVALID, e),
    }
}

/// `{1,2}` from 0-based columns.
fn column_set(cols: &[usize]) -> String {
    let items: Vec<String> = cols.iter().map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn words_line(words: &[TritWord]) -> String {
    words.iter().map(TritWord::to_string).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => {
            let t = load_tiling(&file)?;
            let mut text = format!(
                "valid: n={} d={}, {} words, {} twin pairs\n",
                t.n(),
                t.d(),
                t.words().len(),
                t.twin_pairs().len()
            );
            match find_regular_partition(&t) {
                Some(c) => {
                    text.push_str("regular\n");
                    for (i, g) in c.groups().iter().enumerate() {
                        text.push_str(&format!("N{} = {}\n", i + 1, column_set(g)));
                    }
                    text.push_str(&format!("N* = {}\n", column_set(c.stars())));
                }
                None => text.push_str("not regular\n"),
            }
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Partition { file } => {
            let t = load_tiling(&file)?;
            let c = find_regular_partition(&t).ok_or_else(|| fail(EXIT_INVALID, "tiling is not regular"))?;
            emit(out, &(c.to_json() + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Components { file } => {
            let t = load_tiling(&file)?;
            let mut text = String::new();
            for (k, comp) in simple_components(&t).iter().enumerate() {
                text.push_str(&format!("{}: columns {}: {}\n", k + 1, column_set(&comp.support), words_line(&comp.words)));
            }
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::ToCode { file, certificate } => {
            let body = read(&file)?;
            let t = parse_tiling(&body).map_err(|e| text_failure(&file, e))?;
            let (_, _, rows) = parse_tiling_rows(&body).map_err(|e| text_failure(&file, e))?;
            let c = match certificate {
                Some(path) => {
                    let c = RegularityCertificate::from_json(&read(&path)?)
                        .map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))?;
                    if !check_certificate(&t, &c) {
                        return Err(fail(EXIT_INVALID, "certificate does not fit the tiling"));
                    }
                    c
                }
                None => find_regular_partition(&t).ok_or_else(|| fail(EXIT_INVALID, "tiling is not regular"))?,
            };
            let mut a = Alphabet::new();
            let frame = Frame::from_certificate(&t, &c, &mut a).map_err(|e| fail(EXIT_INVALID, e))?;
            let mut text = String::new();
            for w in &rows {
                let v = frame.encode_word(w).map_err(|e: BridgeError| fail(EXIT_INVALID, e))?;
                text.push_str(&a.format_word(&v));
                text.push('\n');
            }
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::FromCode { file } => {
            let v = load_code(&file, &mut Alphabet::new())?;
            emit(out, &format_tiling(&code_to_tiling(&v)))?;
            Ok(EXIT_OK)
        }
        Command::Flips { file, pair } => {
            let t = load_tiling(&file)?;
            let flips = match pair {
                Some(p) => {
                    let word = |s: &str| s.parse::<TritWord>().map_err(|e| fail(EXIT_IO, format!("{s:?}: {e}")));
                    t.flips_of(&word(&p[0])?, &word(&p[1])?).map_err(|e| fail(EXIT_INVALID, e))?
                }
                None => t.all_flips(),
            };
            emit(out, &format_flips(&flips))?;
            Ok(EXIT_OK)
        }
        Command::Apply { file, flips } => {
            let mut t = load_tiling(&file)?;
            let steps = parse_flips(&read(&flips)?).map_err(|e| fail(EXIT_IO, format!("{}: {e}", flips.display())))?;
            for (k, f) in steps.iter().enumerate() {
                t = t.apply_flip(f).map_err(|e| fail(EXIT_INVALID, format!("flip {}: {e}", k + 1)))?;
            }
            emit(out, &format_tiling(&t))?;
            Ok(EXIT_OK)
        }
        Command::Shifts { from, to, replay, budget } => {
            let mut a = Alphabet::new();
            let v = load_code(&from, &mut a)?;
            if let Some(path) = replay {
                let shifts = parse_shifts(&read(&path)?, &mut a).map_err(|e| text_failure(&path, e))?;
                let mut cur = v;
                for (k, s) in shifts.iter().enumerate() {
                    cur = cur.apply_shift(s).map_err(|e| fail(EXIT_INVALID, format!("shift {}: {e}", k + 1)))?;
                    let _ = writeln!(err, "shift {}: code ok", k + 1);
                }
                emit(out, &format_code(&cur, &a))?;
                return Ok(EXIT_OK);
            }
            let path = to.expect("clap requires a goal");
            let w = load_code(&path, &mut a)?;
            if v.d() != w.d() {
                return Err(fail(EXIT_INVALID, format!("codes have lengths {} and {}", v.d(), w.d())));
            }
            let letters = v.letter_profile().union(&w.letter_profile()).sets;
            let opts = SearchOptions { budget, frozen: Vec::new() };
            match shift_path_search(&v, &w, &letters, &opts) {
                ShiftSearch::Found(path) => {
                    emit(out, &format_shifts(&path, &a))?;
                    Ok(EXIT_OK)
                }
                ShiftSearch::Disconnected { explored } => {
                    let _ = writeln!(err, "no shift path over the letters of both codes ({explored} codes explored)");
                    Ok(EXIT_NOT_FOUND)
                }
                ShiftSearch::BudgetExhausted { explored } => {
                    let _ = writeln!(err, "budget exhausted after {explored} codes");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Connect { a, b, via_codes, limits } => {
            let (t1, t2) = (load_tiling(&a)?, load_tiling(&b)?);
            let result = if via_codes {
                connect_via_codes(&t1, &t2, limits.budget)
            } else {
                connect(&t1, &t2, limits.search())
            };
            match result.map_err(explorer_failure)? {
                Connection::Found { flips, strategy } => {
                    let how = match strategy {
                        Strategy::ViaCodes => "via codes",
                        Strategy::FlipSearch => "flip search",
                    };
                    let _ = writeln!(err, "{} flips, {how}", flips.len());
                    emit(out, &format_flips(&flips))?;
                    Ok(EXIT_OK)
                }
                Connection::ProvenAbsent { explored } => {
                    let _ = writeln!(err, "no flip path: a flip class closed after {explored} tilings");
                    Ok(EXIT_NOT_FOUND)
                }
                Connection::BudgetExhausted { explored } => {
                    let _ = writeln!(err, "budget exhausted after {explored} nodes");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Class { file, dot, json, limits } => {
            let g = explore(&load_tiling(&file)?, limits, err);
            let text = if dot {
                to_dot(&g)
            } else if json {
                to_json(&g) + "\n"
            } else {
                format!("tilings {}\nflips {}\ntruncated {}\n", g.nodes.len(), g.edges.len(), g.truncated)
            };
            emit(out, &text)?;
            Ok(if g.truncated { EXIT_BUDGET } else { EXIT_OK })
        }
        Command::ExportDot { file, limits } => {
            let g = explore(&load_tiling(&file)?, limits, err);
            emit(out, &to_dot(&g))?;
            Ok(if g.truncated { EXIT_BUDGET } else { EXIT_OK })
        }
        Command::Construct { n, d, irreducible, max_code } => {
            if max_code {
                let mut a = Alphabet::new();
                let v = max_letter_code(d, &mut a).map_err(construction_failure)?;
                emit(out, &format_code(&v, &a))?;
                return Ok(EXIT_OK);
            }
            let n = n.expect("clap requires --n");
            if !irreducible {
                let (t, _) = trivial_regular(n, d).map_err(construction_failure)?;
                emit(out, &format_tiling(&t))?;
                return Ok(EXIT_OK);
            }
            match construct_irreducible(n, d).map_err(construction_failure)? {
                Irreducible::Tiling(t) => {
                    emit(out, &format_tiling(&t))?;
                    Ok(EXIT_OK)
                }
                Irreducible::NoSuchTiling { n, d } => {
                    let _ = writeln!(
                        err,
                        "no regular *-irreducible tiling for n={n}, d={d}: one exists only for d+1 <= n <= 2^d-1"
                    );
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        Command::Reduce { file, target } => {
            let mut a = Alphabet::new();
            let v = load_code(&file, &mut a)?;
            let r = reduce_letter_sum(&v, target).map_err(construction_failure)?;
            emit(out, &format_code(&r, &a))?;
            Ok(EXIT_OK)
        }
        Command::Region { file, component, columns, family, budget } => {
            let t = load_tiling(&file)?;
            let region = match columns {
                Some(cols) => {
                    let cols: Vec<usize> = cols
                        .iter()
                        .map(|&j| j.checked_sub(1).ok_or_else(|| fail(EXIT_IO, "columns are 1-based")))
                        .collect::<Result<_, _>>()?;
                    build_f_c(&t, &cols).map_err(explorer_failure)?
                }
                None => {
                    let k = component.unwrap_or(1);
                    let comps = simple_components(&t);
                    let comp = k
                        .checked_sub(1)
                        .and_then(|i| comps.get(i))
                        .ok_or_else(|| fail(EXIT_IO, format!("component {k} out of 1..={}", comps.len())))?;
                    FcRegion::for_component(t.n(), comp).map_err(explorer_failure)?
                }
            };
            let mut text = format!(
                "fixed: {} words\nregion: {} of {} cells\ndegenerate: {}\n",
                region.component.len(),
                region.region.len(),
                1u64 << t.n(),
                region.degenerate
            );
            let mut code = EXIT_OK;
            if family {
                let accept = |x: &DominoTiling| find_regular_partition(x).is_some();
                let report = family_flip_connected(&region.region, t.d(), &region.component, accept, budget)
                    .map_err(explorer_failure)?;
                text.push_str(&format!("family: {} regular tilings\n", report.members.len()));
                match &report.unreachable {
                    None => text.push_str("connected: yes\n"),
                    Some((x, y)) => {
                        text.push_str("connected: no\n");
                        text.push_str(&format!("unreachable: {}\n         from: {}\n", words_line(y.words()), words_line(x.words())));
                        code = EXIT_INVALID;
                    }
                }
            }
            emit(out, &text)?;
            Ok(code)
        }
    }
}

fn explore(t: &DominoTiling, limits: Limits, err: &mut dyn Write) -> FlipGraph {
    let g = flip_class_with_progress(t, limits.search(), |layer, nodes| {
        let _ = writeln!(err, "layer {layer}: {nodes} tilings");
    });
    if g.truncated {
        let _ = writeln!(err, "budget of {} tilings reached; class truncated", limits.budget);
    }
    g
}
