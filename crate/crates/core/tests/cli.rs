use std::path::{Path, PathBuf};

use paraneg::cli::{dispatch, Outcome};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Outcome {
    dispatch(std::iter::once("paraneg").chain(args.iter().copied()))
}

fn path(rel: &str) -> String {
    root().join(rel).display().to_string()
}

#[test]
fn exit_code_matrix() {
    let nefq = path("proofs/nefq.prf");
    let red12 = path("proofs/red12_1.prf");
    let triv = path("models/b2_triv.toml");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["parse", "A -> ~A"], 0),
        (vec!["parse", "A -> ("], 2),
        (vec!["check", &nefq], 0),
        (vec!["check", &red12], 1),
        (vec!["check", "/nonexistent.prf"], 2),
        (vec!["valid", "A -> A", "--model", "builtin:CHAIN3"], 0),
        (vec!["valid", "~~A -> A", "--model", "builtin:CHAIN3"], 1),
        (vec!["valid", "A | ~A", "--model", "builtin:NOPE"], 2),
        (vec!["entails", "A,~A", "B", "--model", &triv], 1),
        (vec!["entails", "A,A -> B", "B", "--model", &triv], 0),
        (vec!["classify", "--model", "builtin:B2_CLASSICAL"], 0),
        (vec!["search", "A -> A"], 1),
        (vec!["search", "A | ~A", "--max-lattice", "3"], 0),
        (vec!["search", "A", "--max-lattice", "99"], 2),
        (vec!["frame", "builtin:FRAME_FULL_R"], 0),
        (vec!["bogus"], 2),
        (vec!["valid", "A", "--system", "nope"], 2),
    ];
    for (args, code) in cases {
        let out = run(&args);
        assert_eq!(out.code, code, "{args:?}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn check_reports_failing_line() {
    let out = run(&["check", &path("proofs/red12_1.prf"), "--format", "records"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("status=rejected"), "{}", out.stdout);
}

#[test]
fn corpus_dir_matches_builtin_verdicts() {
    let a = run(&["corpus", "--format", "records"]);
    let b = run(&["corpus", "--dir", &path("proofs"), "--format", "records"]);
    assert_eq!(a.code, b.code);
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| l.split('\t').filter(|f| !f.starts_with("ms=")).collect::<Vec<_>>().join("\t"))
            .collect()
    };
    let (mut x, mut y) = (strip(&a.stdout), strip(&b.stdout));
    x.sort();
    y.sort();
    assert_eq!(x, y);
}
