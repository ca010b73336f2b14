//! End-to-end tests: run the binary on real input files and check the
//! reports, exit codes and determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const EX_LU_TOWER: &str = r#"{
  "n": [1, 3],
  "a": [{"j": 2, "l": 1, "vec": [-2, -2, -2]}],
  "lambda": ["1", "0", "0", "1", "0", "0"]
}"#;

const EX_LU_POLY: &str = r#"{
  "eta": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1],[-1,-2,-2,-2],[0,-1,-1,-1]],
  "kappa": ["0","1","0","0","1","0"]
}"#;

const SURFACE_POLY: &str = r#"{
  "eta": [[1,0],[1,1],[0,1],[-1,1],[-2,1],[-1,0],[0,-1],[1,-2],[1,-1]],
  "kappa": ["6","7","6","6","7","6","6","7","6"]
}"#;

const H1_TOWER: &str = r#"{
  "n": [1, 1],
  "a": [{"j": 2, "l": 1, "vec": [-1]}],
  "lambda": {"zero_form": ["2", "1"]}
}"#;

const H1_BAD_LAMBDA: &str = r#"{
  "n": [1, 1],
  "a": [{"j": 2, "l": 1, "vec": [-1]}],
  "lambda": {"zero_form": ["1", "2"]}
}"#;

const B5_TOWER: &str = r#"{
  "n": [1,1,1,1,2],
  "a": [{"j":2,"l":1,"vec":[-3]},{"j":3,"l":2,"vec":[1]},{"j":4,"l":2,"vec":[-2]},
        {"j":5,"l":2,"vec":[-1,0]},{"j":4,"l":3,"vec":[-4]},{"j":5,"l":4,"vec":[-2,2]}],
  "lambda": {"zero_form": ["200","12","21","3","1"]}
}"#;

const FANO_POLY: &str = r#"{
  "eta": [[1,0,1],[-1,0,0],[0,1,0],[0,0,1],[0,-1,1],[0,-1,0],[0,0,-1],[0,1,-1]],
  "kappa": ["1","1","1","1","1","1","1","1"]
}"#;

const FANO_DIAMOND: &str = r#"{
  "center": ["-1","0","0"],
  "segments": [[["-1","0","0"],["1","0","0"]],
               [["-1","-1","0"],["-1","1","0"]],
               [["-1","0","-1"],["-1","0","1"]]],
  "rho": "2"
}"#;

const OVERSIZED_DIAMOND: &str = r#"{
  "center": ["0","0"],
  "segments": [[["0","0"],["-3","0"]], [["0","0"],["0","-3"]]],
  "rho": "3"
}"#;

/// Triangle whose only normal relation needs a coefficient of 5.
const THIN_TRIANGLE: &str = r#"{
  "eta": [[1,0],[0,1],[-1,-5]],
  "kappa": ["0","0","5"]
}"#;

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-width"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-width"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn width_of_the_tower_input() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex_lu.json", EX_LU_TOWER);
    let out = run(&["width", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("w_G = 1, witness block \u{2113}=2"),
        "got:\n{text}"
    );
    assert!(text.contains("block 2: u(2) = 0, lambda(2) = 1"));
}

#[test]
fn width_recognizes_a_raw_polytope() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex_lu_poly.json", EX_LU_POLY);
    let out = run(&["width", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("recognized as a generalized Bott tower"));
    assert!(text.contains("w_G = 1, witness block \u{2113}=2"));
}

#[test]
fn width_rejects_redundant_offsets() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad_lambda.json", H1_BAD_LAMBDA);
    let out = run(&["width", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("redundant inequality (2,0)"),
        "got: {}",
        stderr(&out)
    );
}

#[test]
fn width_falls_back_to_bounds_on_generic_polytopes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "surface.json", SURFACE_POLY);
    let out = run(&["width", input.to_str().unwrap(), "--cap", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("w_G ="));
    assert!(text.contains("program upper bound (cap 3): 12"));
    assert!(text.contains("n! vol = 141"));
    assert!(text.contains("11.8743"));
    assert!(text.contains("Fano hypothesis not checked"));
}

#[test]
fn width_accepts_a_diamond_certificate() {
    let dir = TempDir::new().unwrap();
    let poly = write(&dir, "fano.json", FANO_POLY);
    let spec = write(&dir, "diamond.json", FANO_DIAMOND);
    let out = run(&[
        "width",
        poly.to_str().unwrap(),
        "--diamond",
        spec.to_str().unwrap(),
        "--cap",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("program upper bound (cap 2): 2"));
    assert!(text.contains("cross-polytope certificate: verified; width >= 2"));
}

#[test]
fn certificate_writes_a_round_trippable_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "b5.json", B5_TOWER);
    let out_path = dir.path().join("cert.json");
    let out = run(&[
        "certificate",
        input.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verification: PASS"));
    assert!(text.contains("chain from (1,1): (1,1) -> (2,1) -> (5,1)"));
    assert!(text.contains("implies: lambda_1 >= lambda_2, lambda_2 >= lambda_5"));
    assert!(text.contains("v(4,1) = (0,0,0,-1,0,-1)"));

    let written = fs::read_to_string(&out_path).unwrap();
    let file: toric_width::formats::CertificateFile = serde_json::from_str(&written).unwrap();
    let (cert, chains) = file.to_certificate().unwrap();
    assert_eq!(cert.lambda, toric_width::lattice::rat(1));
    assert_eq!(cert.points.len(), 6);
    assert!(chains
        .iter()
        .any(|c| c.chain == vec![(0, 1), (1, 1), (4, 1)]));
}

#[test]
fn certificate_translates_general_offsets_first() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex_lu.json", EX_LU_TOWER);
    let out = run(&["certificate", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("translated to standard form by t = (0,-1,0,0)"));
    assert!(text.contains("verification: PASS"));
}

#[test]
fn certificate_needs_a_tower() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "surface.json", SURFACE_POLY);
    let out = run(&["certificate", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("generalized Bott tower"));
}

#[test]
fn lu_reports_value_and_witness() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex_lu_poly.json", EX_LU_POLY);
    let out = run(&["lu", input.to_str().unwrap(), "--cap", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("program upper bound (cap 3): 1"));
    assert!(text.contains("witness a = (0,1,1,1,0,1)"));
}

#[test]
fn lu_exits_3_when_the_cap_is_too_small() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "thin.json", THIN_TRIANGLE);
    let out = run(&["lu", input.to_str().unwrap(), "--cap", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("no witness under cap 4"));

    let out = run(&["lu", input.to_str().unwrap(), "--cap", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("program upper bound (cap 5): 5"));
}

#[test]
fn verify_diamond_both_ways() {
    let dir = TempDir::new().unwrap();
    let fano = write(&dir, "fano.json", FANO_POLY);
    let good = write(&dir, "diamond.json", FANO_DIAMOND);
    let out = run(&[
        "verify-diamond",
        fano.to_str().unwrap(),
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verified: the Gromov width is at least 2"));

    let h1 = write(&dir, "h1.json", H1_TOWER);
    let bad = write(&dir, "big.json", OVERSIZED_DIAMOND);
    let out = run(&[
        "verify-diamond",
        h1.to_str().unwrap(),
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("NOT verified"));
    assert!(text.contains("containment"));
}

#[test]
fn volume_of_the_surface() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "surface.json", SURFACE_POLY);
    let out = run(&["volume", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("volume = 141/2"));
    assert!(text.contains("n! vol = 141"));
}

#[test]
fn intersect_check_passes_on_towers() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h1.json", H1_TOWER);
    let out = run(&["intersect-check", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("block 2: pass"));
    assert!(text.contains("overall: pass"));
    assert!(text.contains("class (0,0,1,1), omega = 1, c1 = 2 -> ok"));
}

#[test]
fn cremona_capacity_and_errors() {
    let out = run(&["cremona", "18;6,6,6,5,5,5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("capacity = 21/2"));
    assert!(text.contains("holds just below"));
    assert!(text.contains("fails just above"));

    let out = run(&["cremona", "x;1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn svg_rendering() {
    let dir = TempDir::new().unwrap();
    let h1 = write(&dir, "h1.json", H1_TOWER);
    let out_path = dir.path().join("h1.svg");
    let out = run(&[
        "svg",
        h1.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = fs::read_to_string(&out_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 4);
    assert!(svg.contains("<polygon"));
    assert!(svg.contains("(2,0)")); // tower facet labels

    let surface = write(&dir, "surface.json", SURFACE_POLY);
    let out_path = dir.path().join("surface.svg");
    let out = run(&[
        "svg",
        surface.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = fs::read_to_string(&out_path).unwrap();
    assert_eq!(svg.matches("<circle").count(), 9);

    let lu = write(&dir, "ex_lu.json", EX_LU_TOWER);
    let out = run(&["svg", lu.to_str().unwrap(), "--out", "x.svg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("SVG supports dimension 2 only"));
}

#[test]
fn info_summaries() {
    let dir = TempDir::new().unwrap();
    let b5 = write(&dir, "b5.json", B5_TOWER);
    let out = run(&["info", b5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kind: generalized Bott tower"));
    assert!(text.contains("vertices: 48"));
    assert!(text.contains("delzant: true"));

    let spec = write(&dir, "diamond.json", FANO_DIAMOND);
    let out = run(&["info", spec.to_str().unwrap()]);
    assert!(stdout(&out).contains("kind: cross-polytope certificate"));

    let missing = dir.path().join("nope.json");
    let out = run(&["info", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    write(&dir, "b5.json", B5_TOWER);
    write(&dir, "surface.json", SURFACE_POLY);
    for args in [
        vec!["width", "b5.json"],
        vec!["width", "surface.json", "--json"],
        vec!["certificate", "b5.json", "--json"],
        vec!["cremona", "18;6,6,6,5,5,5", "--json"],
    ] {
        let a = run_in(dir.path(), &args);
        let b = run_in(dir.path(), &args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(stdout(&a), stdout(&b), "args: {args:?}");
    }
}

#[test]
fn json_reports_parse() {
    let dir = TempDir::new().unwrap();
    let b5 = write(&dir, "b5.json", B5_TOWER);
    for args in [
        vec!["width", b5.to_str().unwrap(), "--json"],
        vec!["info", b5.to_str().unwrap(), "--json"],
        vec!["volume", b5.to_str().unwrap(), "--json"],
        vec!["intersect-check", b5.to_str().unwrap(), "--json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "args: {args:?}");
        let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(value.is_object());
    }
    let out = run(&["width", b5.to_str().unwrap(), "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["width"], "1");
    assert_eq!(value["witness_block"], 5);
}
