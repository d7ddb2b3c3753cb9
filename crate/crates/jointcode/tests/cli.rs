mod common;

use std::fs;
use std::path::{Path, PathBuf};

use common::{bin, fixture, tri};
use jointcode::cli::run;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn jointcode(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("jointcode").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fx(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares with the stored file; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

fn golden(name: &str, args: &[&str], code: i32) {
    let o = jointcode(args);
    assert_eq!(o.code, code, "stderr: {}", o.stderr);
    assert_golden(name, &o.stdout);
}

#[test]
fn minrank_of_third_component() {
    let o = jointcode(&["minrank", &fx("ex1_c3.tri")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("minrank = 2\n"));
    golden("minrank_ex1_c3.txt", &["minrank", &fx("ex1_c3.tri")], 0);
    golden("minrank_ex6_base_kv.txt", &["minrank", &fx("ex6_base.tri"), "--format", "kv"], 0);
}

#[test]
fn minrank_of_identity_pattern_is_its_size() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("id.tri");
    fs::write(&p, "1000\n0100\n0010\n0001\n").unwrap();
    let o = jointcode(&["minrank", p.to_str().unwrap()]);
    assert!(o.stdout.starts_with("minrank = 4\n"));
}

#[test]
fn problem_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cycle.txt");
    fs::write(&p, "m=3\nwants=1 knows=2\nwants=2 knows=3\nwants=3 knows=1\n").unwrap();
    let o = jointcode(&["minrank", p.to_str().unwrap(), "--format", "kv"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("minrank=2\nunknowns=3\n"));
}

#[test]
fn unknown_cap_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("big.tri");
    // Five receivers each knowing the other four: 20 unknowns, plus a
    // sixth message known to five receivers.
    fs::write(&p, "1xxxxx\nx1xxxx\nxx1xxx\nxxx1xx\nxxxx1x\n000001\n").unwrap();
    let o = jointcode(&["minrank", p.to_str().unwrap()]);
    assert_eq!(o.code, 2, "{}", o.stdout);
    assert!(o.stderr.contains("25") && o.stderr.contains("24"), "{}", o.stderr);
    assert_eq!(jointcode(&["minrank", p.to_str().unwrap(), "--max-unknowns", "31"]).code, 1);
}

#[test]
fn parse_errors_exit_with_1_and_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.tri");
    fs::write(&p, "1x0\n01y\n").unwrap();
    let o = jointcode(&["minrank", p.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 2, column 3"), "{}", o.stderr);
    assert_eq!(jointcode(&["minrank", "/nonexistent/file.tri"]).code, 1);
    assert_eq!(jointcode(&["frobnicate"]).code, 1);
}

#[test]
fn triangulability_reports() {
    golden("triangulable_ex4.txt", &["triangulable", &fx("ex4_witness.tri")], 0);
    golden("triangulable_ex6_all.txt", &["triangulable", &fx("ex6_base.tri"), "--all"], 0);
    let o = jointcode(&["triangulable", &fx("ex9_base.tri"), "--format", "kv"]);
    assert_eq!(o.stdout, "triangulable=no\n");
    assert_eq!(jointcode(&["triangulable", &fx("ex6_ext.tri")]).code, 1);
}

#[test]
fn extend_writes_the_extended_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fe.tri");
    let o = jointcode(&["extend", &fx("ex2.manifest"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(jointcode::format::parse_tri(&fs::read_to_string(&out).unwrap()).unwrap(), tri("ex2_ext.tri"));
    golden("extend_ex1.txt", &["extend", &fx("ex1.manifest")], 0);
}

#[test]
fn lower_bound_reports() {
    let o = jointcode(&["lower-bound", &fx("ex1.manifest")]);
    assert!(o.stdout.starts_with("lower bound = 5, cols = {1,3}\n"));
    let o = jointcode(&["lower-bound", &fx("ex2.manifest")]);
    assert!(o.stdout.starts_with("lower bound = 5,"));
    golden("lower_bound_ex6_kv.txt", &["lower-bound", &fx("ex6.manifest"), "--format", "kv"], 0);
    let o = jointcode(&["lower-bound", &fx("ex1.manifest"), "--minranks", "1,1,1"]);
    assert!(o.stdout.starts_with("lower bound = 2,"), "{}", o.stdout);
    assert_eq!(jointcode(&["lower-bound", &fx("ex1.manifest"), "--minranks", "1,1"]).code, 1);
}

#[test]
fn single_component_bound_is_its_minrank() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("b.tri"), "1\n").unwrap();
    fs::copy(fixture("ex6_c1.tri"), dir.path().join("c.tri")).unwrap();
    fs::write(dir.path().join("m.manifest"), "base=b.tri\ncomponent=c.tri\n").unwrap();
    let o = jointcode(&["lower-bound", dir.path().join("m.manifest").to_str().unwrap()]);
    assert!(o.stdout.starts_with("lower bound = 4,"), "{}", o.stdout);
}

#[test]
fn construct_algo1_on_supplied_codes() {
    let dir = tempfile::tempdir().unwrap();
    let enc = dir.path().join("ge.bin");
    let dec = dir.path().join("de.bin");
    let codes: Vec<String> = (1..=5).map(|j| fx(&format!("ex8_g{j}.bin"))).collect();
    let mut args = vec!["construct".to_string(), fx("ex8.manifest"), "--mode".into(), "algo1".into()];
    for c in &codes {
        args.push("--code".into());
        args.push(c.clone());
    }
    args.extend([
        "--base-code".into(),
        fx("ex8_gb.bin"),
        "--base-decoder".into(),
        fx("ex8_db.bin"),
    ]);
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    golden("construct_ex8_algo1.txt", &argv, 0);

    let mut with_files = argv.clone();
    with_files.extend(["--out", enc.to_str().unwrap(), "--decoder-out", dec.to_str().unwrap()]);
    assert_eq!(jointcode(&with_files).code, 0);
    let ge = jointcode::format::parse_bin(&fs::read_to_string(&enc).unwrap()).unwrap();
    assert_eq!(ge, bin("ex8_ge.bin"));
    let de = jointcode::format::parse_bin(&fs::read_to_string(&dec).unwrap()).unwrap();
    assert!(tri("ex8_ext.tri").completed_by(&de.mul(&ge).unwrap()).unwrap());

    let mut bad_sigma = argv.clone();
    bad_sigma.extend(["--sigma", "5,4,3,2,1"]);
    let o = jointcode(&bad_sigma);
    assert_eq!(o.code, 3, "{}", o.stderr);
}

#[test]
fn construct_cycle_is_optimal() {
    golden("construct_ex9_cycle.txt", &["construct", &fx("ex9.manifest"), "--mode", "cycle"], 0);
    let o = jointcode(&["construct", &fx("ex6.manifest"), "--mode", "cycle"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("cycle"), "{}", o.stderr);
}

#[test]
fn construct_lemma2_is_optimal() {
    golden("construct_ex6_lemma2.txt", &["construct", &fx("ex6.manifest"), "--mode", "lemma2"], 0);
    golden(
        "construct_ex6_lemma2_kv.txt",
        &["construct", &fx("ex6.manifest"), "--mode", "lemma2", "--format", "kv"],
        0,
    );
    // A matrix that does not complete the base violates the conditions.
    let dir = tempfile::tempdir().unwrap();
    let zeros = dir.path().join("zeros.bin");
    fs::write(&zeros, "0000\n".repeat(5)).unwrap();
    let o = jointcode(&[
        "construct",
        &fx("ex6.manifest"),
        "--mode",
        "lemma2",
        "--base-completion",
        zeros.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 3, "{}{}", o.stdout, o.stderr);
    assert!(o.stderr.contains("base"), "{}", o.stderr);
}

#[test]
fn verify_reports() {
    golden("verify_ex5.txt", &["verify", &fx("ex5_fhat.bin"), &fx("ex1_ext.tri")], 0);
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.bin");
    fs::write(&zero, "000000000\n").unwrap();
    let o = jointcode(&["verify", zero.to_str().unwrap(), &fx("ex1_ext.tri")]);
    assert_eq!((o.code, o.stdout.as_str()), (4, "INVALID, receiver 1\n"));
    let o = jointcode(&["verify", &fx("ex8_ge.bin"), &fx("ex1_ext.tri")]);
    assert_eq!(o.code, 1, "column mismatch is an input error");
}

#[test]
fn some_single_flip_of_the_synthesized_code_is_rejected() {
    let ge = bin("ex8_ge.bin");
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("flip.bin");
    let mut rejected = 0;
    for r in 0..ge.rows() {
        for c in 0..ge.cols() {
            let mut g = ge.clone();
            g.toggle(r, c);
            fs::write(&p, jointcode::format::emit_bin(&g)).unwrap();
            let o = jointcode(&["verify", p.to_str().unwrap(), &fx("ex8_ext.tri"), "--format", "kv"]);
            if o.code == 4 {
                assert!(o.stdout.starts_with("verdict=INVALID\nreceiver="));
                rejected += 1;
            }
        }
    }
    assert!(rejected > 0);
}

#[test]
fn output_is_stable_across_runs_and_thread_counts() {
    let a = jointcode(&["minrank", &fx("ex7_c4.tri"), "--format", "kv", "--threads", "1"]);
    let b = jointcode(&["minrank", &fx("ex7_c4.tri"), "--format", "kv", "--threads", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let args = ["construct", &fx("ex7.manifest"), "--mode", "lemma2", "--format", "kv", "--seed", "9"];
    assert_eq!(jointcode(&args).stdout, jointcode(&args).stdout);
}
