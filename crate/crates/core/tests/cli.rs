use std::path::{Path, PathBuf};
use std::process::Command as Process;

use clap::Parser;
use shderiv::cli::{fixture_document, run, Cli, Outcome, EXIT_INPUT, EXIT_MATH, EXIT_OK};
use shderiv::fixtures;
use shderiv::graded::MultilinearMap;
use shderiv::homotopy_lie::from_dgla;
use shderiv::io::{self, Document, StructureDocument};
use shderiv::signs::Sign;

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn cli(args: &[&str]) -> Outcome {
    let argv = std::iter::once("shderiv").chain(args.iter().copied());
    run(&Cli::try_parse_from(argv).expect("arguments parse"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs a document-producing command and stores its output in `dir`.
fn produce(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let out = cli(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}{}", out.stdout, out.stderr);
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

fn structure(path: &Path) -> StructureDocument {
    io::read(path).unwrap().into_structure().unwrap()
}

#[test]
fn shipped_fixture_files_match_the_builtin_tables() {
    for f in fixtures::all() {
        let text = std::fs::read_to_string(shipped(f.name)).unwrap();
        assert_eq!(text, io::to_json(&Document::Structure(fixture_document(&f))), "{}", f.name);
        assert_eq!(cli(&["fixture", f.name]).stdout, text);
    }
}

#[test]
fn verify_exit_codes() {
    for (name, kind) in [
        ("dual-numbers", "ainfty"),
        ("exterior-odd", "ainfty"),
        ("square-zero", "ainfty"),
        ("solvable-lie", "linfty"),
        ("sl2", "linfty"),
        ("empty", "ainfty"),
    ] {
        let out = cli(&["verify", path_str(&shipped(name)), "--kind", kind]);
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stdout);
    }
    let bad = cli(&["verify", path_str(&shipped("dual-numbers-corrupted")), "--kind", "ainfty"]);
    assert_eq!(bad.code, EXIT_MATH);
    assert!(bad.stdout.contains("first failing arity: 3"), "{}", bad.stdout);
    assert!(bad.stdout.contains("basis tuple: (eps, 1, 1)"), "{}", bad.stdout);

    let wrong_kind = cli(&["verify", path_str(&shipped("sl2")), "--kind", "ainfty"]);
    assert_eq!(wrong_kind.code, EXIT_INPUT);
    let missing = cli(&["verify", "/nonexistent/file.json", "--kind", "ainfty"]);
    assert_eq!(missing.code, EXIT_INPUT);
    assert!(missing.stderr.starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"basis\": 3}").unwrap();
    assert_eq!(cli(&["verify", path_str(&garbage), "--kind", "ainfty"]).code, EXIT_INPUT);
}

#[test]
fn binary_reports_exit_status_and_honours_the_environment() {
    let exe = env!("CARGO_BIN_EXE_shderiv");
    let corrupted = shipped("dual-numbers-corrupted");
    let status = |max: Option<&str>| {
        let mut cmd = Process::new(exe);
        cmd.args(["verify", path_str(&corrupted), "--kind", "ainfty"]);
        cmd.env_remove("SHD_MAX_ARITY");
        if let Some(m) = max {
            cmd.env("SHD_MAX_ARITY", m);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(status(None), Some(1));
    // The corruption first shows up in arity three.
    assert_eq!(status(Some("2")), Some(0));
    let usage = Process::new(exe).args(["verify"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn derive_modes() {
    let dir = tempfile::tempdir().unwrap();
    let dual = shipped("dual-numbers");

    let zero = produce(dir.path(), "zero.json", &["derive", path_str(&dual), "--mode", "inner", "--k", "0"]);
    let doc = structure(&zero);
    let d = doc.derivation.as_ref().unwrap();
    assert_eq!(d.degree, 1);
    assert!(d.maps.iter().all(MultilinearMap::is_zero));

    let taut = produce(dir.path(), "taut.json", &["derive", path_str(&dual), "--mode", "tautological"]);
    let doc = structure(&taut);
    let d = doc.derivation.as_ref().unwrap();
    assert_eq!(d.degree, 1);
    assert_eq!(d.maps, doc.operations);

    for (name, seed) in [("dual-numbers", "1"), ("square-zero", "2"), ("sl2", "3")] {
        let file = format!("reservoir-{name}.json");
        let r = produce(
            dir.path(),
            &file,
            &["derive", path_str(&shipped(name)), "--mode", "reservoir", "--seed", seed, "--k", "0"],
        );
        assert_eq!(structure(&r).derivation.unwrap().degree, 0);
        let out = cli(&["verify", path_str(&r), "--kind", "sh-derivation"]);
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stdout);
    }

    // `t` has a nonzero differential in the square-zero extension.
    let open = cli(&["derive", path_str(&shipped("square-zero")), "--mode", "inner", "--element", "t=1"]);
    assert_eq!(open.code, EXIT_MATH);
    assert!(open.stdout.contains("m1(a) != 0"), "{}", open.stdout);

    let mismatch = cli(&["derive", path_str(&dual), "--mode", "inner", "--element", "eps=1", "--k", "3"]);
    assert_eq!(mismatch.code, EXIT_INPUT);
    let unverified = cli(&["derive", path_str(&shipped("dual-numbers-corrupted")), "--mode", "tautological"]);
    assert_eq!(unverified.code, EXIT_MATH);
}

/// `[a, b] = μ(a, b) − (−1)^{|a||b|} μ(b, a)` on the unsuspended space.
fn commutator(mu: &MultilinearMap) -> MultilinearMap {
    let space = mu.space();
    MultilinearMap::from_fn(space, 2, 0, |t| {
        let swapped = mu.value(&[t[1], t[0]]);
        let mut out = mu.value(t);
        out.sub_assign(&swapped.signed(Sign::pow(space.degree(t[0]) * space.degree(t[1]))));
        out
    })
    .unwrap()
}

#[test]
fn symmetrize_command() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["dual-numbers", "exterior-odd", "square-zero"] {
        let f = fixtures::by_name(name).unwrap();
        let out = produce(dir.path(), &format!("{name}-sym.json"), &["symmetrize", path_str(&shipped(name))]);
        let l = structure(&out).linfty().unwrap();
        let (_, reference) = from_dgla(&commutator(&f.operation), &f.differential).unwrap();
        for n in 1..=3 {
            assert_eq!(l.l(n), reference.l(n).signed(Sign::MINUS), "{name}, arity {n}");
        }
        assert_eq!(cli(&["verify", path_str(&out), "--kind", "linfty"]).code, EXIT_OK);
    }

    let zero = produce(dir.path(), "empty-sym.json", &["symmetrize", path_str(&shipped("empty"))]);
    assert!(structure(&zero).operations.is_empty());

    let inner = produce(
        dir.path(),
        "inner.json",
        &["derive", path_str(&shipped("square-zero")), "--mode", "inner", "--element", "u=1"],
    );
    let sym = produce(dir.path(), "inner-sym.json", &["symmetrize", path_str(&inner)]);
    let out = cli(&["verify", path_str(&sym), "--kind", "sh-derivation"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);

    let rejected = cli(&["symmetrize", path_str(&shipped("dual-numbers-corrupted"))]);
    assert_eq!(rejected.code, EXIT_MATH);
    assert_eq!(cli(&["symmetrize", path_str(&shipped("sl2"))]).code, EXIT_INPUT);
}

#[test]
fn bracket_command() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = shipped("sl2");
    let e = produce(dir.path(), "e.json", &["derive", path_str(&sl2), "--mode", "inner", "--element", "e=1"]);
    let f = produce(dir.path(), "f.json", &["derive", path_str(&sl2), "--mode", "inner", "--element", "f=1"]);
    let ef = produce(dir.path(), "ef.json", &["bracket", path_str(&e), path_str(&f)]);
    assert_eq!(cli(&["verify", path_str(&ef), "--kind", "sh-derivation"]).code, EXIT_OK);
    assert!(structure(&ef).derivation.unwrap().maps.iter().any(|m| !m.is_zero()));

    // Θ = m is odd with Θ² = 0, so [Θ, Θ] = 2Θ² vanishes.
    let dual = shipped("square-zero");
    let taut = produce(dir.path(), "taut.json", &["derive", path_str(&dual), "--mode", "tautological"]);
    let tt = produce(dir.path(), "tt.json", &["bracket", path_str(&taut), path_str(&taut)]);
    assert!(structure(&tt).derivation.unwrap().maps.iter().all(MultilinearMap::is_zero));

    let zero = produce(dir.path(), "zero.json", &["derive", path_str(&dual), "--mode", "inner", "--k", "1"]);
    let t0 = produce(dir.path(), "t0.json", &["bracket", path_str(&taut), path_str(&zero)]);
    let d = structure(&t0).derivation.unwrap();
    assert_eq!(d.degree, 3);
    assert!(d.maps.iter().all(MultilinearMap::is_zero));

    assert_eq!(cli(&["bracket", path_str(&e), path_str(&taut)]).code, EXIT_INPUT);
}

#[test]
fn operad_command() {
    let diff = cli(&["operad", "ass", "--print-diff", "3", "--k", "1"]);
    assert_eq!(diff.code, EXIT_OK);
    assert!(diff.stdout.contains("d(x^3) = x^{2}\\circ_{1}x^{2} - x^{2}\\circ_{2}x^{2}\n"), "{}", diff.stdout);
    let text = cli(&["operad", "ass", "--print-diff", "3", "--k", "1", "--format", "text"]);
    assert!(text.stdout.contains("d(x^3) = x^2 o_1 x^2 - x^2 o_2 x^2\n"), "{}", text.stdout);
    let window = cli(&["operad", "lie", "--print-diff", "2"]);
    assert_eq!(window.stdout.matches("preset lie").count(), 4);

    for (preset, k) in [("ass", "1"), ("lie", "2")] {
        let out = cli(&["operad", preset, "--check-d2", "--k", k, "--max-arity", "4"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.ends_with("PASS\n"), "{}", out.stdout);
        assert!(!out.stdout.contains("residue"));
    }
    assert_eq!(cli(&["operad", "ass", "--print-diff", "1"]).code, EXIT_INPUT);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = shipped("sl2");
    let args = ["derive", path_str(&sl2), "--mode", "reservoir", "--seed", "11"];
    assert_eq!(cli(&args), cli(&args));
    let check = ["operad", "lie", "--check-d2", "--max-arity", "4"];
    assert_eq!(cli(&check), cli(&check));

    let target = dir.path().join("out.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path_str(&target)]);
    let out = cli(&with_out);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), cli(&args).stdout);
}
