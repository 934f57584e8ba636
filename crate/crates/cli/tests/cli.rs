use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use dominoflip::text::{parse_code, parse_flips, parse_tiling};
use dominoflip::word::Alphabet;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn dominoflip(args: &[&str]) -> Run {
    let o = Command::new(env!("CARGO_BIN_EXE_dominoflip")).args(args).output().unwrap();
    Run {
        code: o.status.code().unwrap(),
        out: String::from_utf8(o.stdout).unwrap(),
        err: String::from_utf8(o.stderr).unwrap(),
    }
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_reports_partition() {
    let r = dominoflip(&["validate", &fixture("regular_7d.tiling")]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("N1 = {1,2}\nN2 = {3,4}\nN3 = {5,6}\nN* = {7}\n"), "{}", r.out);
    let r = dominoflip(&["validate", &fixture("twin_free_4d.tiling")]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("0 twin pairs") && r.out.ends_with("not regular\n"));
}

#[test]
fn validation_failures_and_format_errors() {
    let dir = TempDir::new().unwrap();
    let overlap = write(&dir, "overlap.tiling", "2 1\n0*\n*0\n");
    assert_eq!(dominoflip(&["validate", &overlap]).code, 1);
    let garbage = write(&dir, "garbage.tiling", "2 1\n0x\n1*\n");
    let r = dominoflip(&["validate", &garbage]);
    assert_eq!(r.code, 4);
    assert!(r.err.contains("line 2"));
    assert_eq!(dominoflip(&["validate", "/nonexistent/file"]).code, 4);
    let r = dominoflip(&["validate", "--frobnicate", &overlap]);
    assert_eq!(r.code, 4);
    assert!(r.err.contains("Usage"));
    assert_eq!(dominoflip(&["partition", &fixture("twin_free_4d.tiling")]).code, 1);
}

#[test]
fn partition_and_components() {
    let r = dominoflip(&["partition", &fixture("regular_7d.tiling")]);
    assert_eq!(r.out, "{\"groups\":[[1,2],[3,4],[5,6]],\"stars\":[7]}\n");
    let r = dominoflip(&["components", &fixture("regular_7d.tiling")]);
    assert_eq!(r.out.lines().count(), 4);
    assert!(r.out.contains("columns {1,3,5}: 0*0*0** 1*1*1**"));
}

#[test]
fn code_conversions_round_trip() {
    let dir = TempDir::new().unwrap();
    let r = dominoflip(&["to-code", &fixture("regular_7d.tiling")]);
    assert_eq!(r.code, 0);
    let mut a = Alphabet::new();
    let expected = parse_code(&fs::read_to_string(fixture("regular_7d.code")).unwrap(), &mut a).unwrap();
    assert_eq!(parse_code(&r.out, &mut a).unwrap(), expected);

    let cert = write(&dir, "cert.json", r#"{"groups":[[1,2],[3,4],[5,6]],"stars":[7]}"#);
    let with = dominoflip(&["to-code", &fixture("regular_7d.tiling"), "--certificate", &cert]);
    assert_eq!(with.out, r.out);
    let bad = write(&dir, "bad.json", r#"{"groups":[[1,3],[2,4],[5,6]],"stars":[7]}"#);
    assert_eq!(dominoflip(&["to-code", &fixture("regular_7d.tiling"), "--certificate", &bad]).code, 1);

    let code = write(&dir, "t.code", &r.out);
    let back = dominoflip(&["from-code", &code]);
    let t = parse_tiling(&back.out).unwrap();
    assert_eq!((t.n(), t.d()), (6, 3));
}

#[test]
fn flips_apply_and_replay() {
    let dir = TempDir::new().unwrap();
    let t = fixture("regular_7d.tiling");
    let all = dominoflip(&["flips", &t]);
    assert_eq!(all.out.lines().count(), 3 * 4);
    let one = dominoflip(&["flips", &t, "--pair", "*00*1**", "*10*1**"]);
    assert_eq!(one.out.lines().count(), 4);
    assert!(one.out.contains("(**001**,**011**)"));
    assert_eq!(dominoflip(&["flips", &t, "--pair", "*00*1**", "1**00**"]).code, 1);

    let first = write(&dir, "one.flips", one.out.lines().next().unwrap());
    let r = dominoflip(&["apply", &t, &first]);
    assert_eq!(r.code, 0);
    let after = parse_tiling(&r.out).unwrap();
    assert_eq!(after.words().len(), 8);
    let twice = write(&dir, "twice.flips", &one.out.lines().take(2).collect::<Vec<_>>().join("\n"));
    let r = dominoflip(&["apply", &t, &twice]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("flip 2"));
}

#[test]
fn shifts_search_and_replay() {
    let (v, w) = (fixture("shift_v.code"), fixture("shift_w.code"));
    let r = dominoflip(&["shifts", &v, &w]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 4);
    let r = dominoflip(&["shifts", &v, "--replay", &fixture("shift_demo.shifts")]);
    assert_eq!(r.code, 0);
    let mut a = Alphabet::new();
    let got = parse_code(&r.out, &mut a).unwrap();
    assert_eq!(got, parse_code(&fs::read_to_string(&w).unwrap(), &mut a).unwrap());
    assert_eq!(dominoflip(&["shifts", &v]).code, 4);
    assert_eq!(dominoflip(&["shifts", &v, &w, "--budget", "2"]).code, 3);
}

#[test]
fn connect_outputs_replayable_sequences() {
    let dir = TempDir::new().unwrap();
    let r = dominoflip(&["connect", &fixture("square.tiling"), &fixture("square_flipped.tiling")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "FLIP 1->2: (0*,1*) => (*0,*1)\n");

    let a = fixture("regular_7d.tiling");
    let b = write(&dir, "b.tiling", &dominoflip(&["construct", "--n", "7", "--d", "3"]).out);
    for extra in [&[][..], &["--via-codes"][..], &["--workers", "4"][..]] {
        let r = dominoflip(&[&["connect", &a, &b][..], extra].concat());
        assert_eq!(r.code, 0, "{}", r.err);
        let flips = parse_flips(&r.out).unwrap();
        let start = parse_tiling(&fs::read_to_string(&a).unwrap()).unwrap();
        let end = parse_tiling(&fs::read_to_string(&b).unwrap()).unwrap();
        assert_eq!(start.apply_flips(&flips).unwrap(), end);
    }

    let q = write(&dir, "q.tiling", &dominoflip(&["construct", "--n", "4", "--d", "3"]).out);
    let tf = fixture("twin_free_4d.tiling");
    assert_eq!(dominoflip(&["connect", &tf, &q]).code, 2);
    assert_eq!(dominoflip(&["connect", &tf, &q, "--via-codes"]).code, 1);
    assert_eq!(dominoflip(&["connect", &q, &a]).code, 1);
}

#[test]
fn class_stats_dot_and_budget() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.tiling", &dominoflip(&["construct", "--n", "3", "--d", "2"]).out);
    let r = dominoflip(&["class", &t]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("truncated false"));
    assert!(r.err.contains("layer 1:"));
    let dot = dominoflip(&["export-dot", &t]);
    assert!(dot.out.starts_with("graph flips {"));
    assert_eq!(dot.out, dominoflip(&["class", &t, "--dot", "--workers", "3"]).out);
    let json = dominoflip(&["class", &t, "--json"]);
    assert!(json.out.contains("\"truncated\": false"));
    let r = dominoflip(&["class", &t, "--budget", "2"]);
    assert_eq!(r.code, 3);
    assert!(r.out.contains("truncated true"));
    assert_eq!(dominoflip(&["class", &t, "--workers", "0"]).code, 4);
}

#[test]
fn constructions() {
    let r = dominoflip(&["construct", "--n", "4", "--d", "2", "--irreducible"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("2^d-1"));
    let r = dominoflip(&["construct", "--n", "7", "--d", "3", "--irreducible"]);
    assert_eq!(r.code, 0);
    let t = parse_tiling(&r.out).unwrap();
    assert!(t.star_columns().is_empty());
    assert_eq!(dominoflip(&["construct", "--n", "2", "--d", "2"]).code, 4);
    let r = dominoflip(&["construct", "--d", "3", "--max-code"]);
    let v = parse_code(&r.out, &mut Alphabet::new()).unwrap();
    assert_eq!(v.letter_profile().sum(), 7);
}

#[test]
fn reduce_letter_sums() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "m.code", &dominoflip(&["construct", "--d", "3", "--max-code"]).out);
    let r = dominoflip(&["reduce", &code, "--target", "5"]);
    assert_eq!(r.code, 0);
    assert_eq!(parse_code(&r.out, &mut Alphabet::new()).unwrap().letter_profile().sum(), 5);
    assert_eq!(dominoflip(&["reduce", &code, "--target", "8"]).code, 4);
}

#[test]
fn regions() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.tiling", &dominoflip(&["construct", "--n", "3", "--d", "2"]).out);
    let r = dominoflip(&["region", &q, "--columns", "1"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("fixed: 0 words\nregion: 8 of 8 cells"));
    assert_eq!(dominoflip(&["region", &q, "--columns", "3"]).code, 1);
    let r = dominoflip(&["region", &q, "--family"]);
    assert!(r.out.contains("degenerate: true") && r.out.contains("connected: yes"), "{}", r.out);
    let t = fixture("regular_7d.tiling");
    let r = dominoflip(&["region", &t, "--component", "2", "--family"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("connected: yes"));
    assert_eq!(dominoflip(&["region", &t, "--component", "9"]).code, 4);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let t = fixture("regular_7d.tiling");
    for args in [&["class", &t, "--json"][..], &["flips", &t][..], &["to-code", &t][..]] {
        let (a, b) = (dominoflip(args), dominoflip(args));
        assert_eq!((a.code, a.out), (b.code, b.out));
    }
}

#[test]
fn emitted_tilings_reparse() {
    let dir = TempDir::new().unwrap();
    for (n, d) in [(3, 2), (5, 3), (6, 3)] {
        let r = dominoflip(&["construct", "--n", &n.to_string(), "--d", &d.to_string(), "--irreducible"]);
        let path = write(&dir, "x.tiling", &r.out);
        assert!(Path::new(&path).exists());
        let again = dominoflip(&["from-code", &write(&dir, "x.code", &dominoflip(&["to-code", &path]).out)]);
        let t = parse_tiling(&again.out).unwrap();
        assert_eq!(dominoflip(&["validate", &write(&dir, "y.tiling", &again.out)]).code, 0);
        assert_eq!((t.n(), t.d()), (n, d));
    }
}
