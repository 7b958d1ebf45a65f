use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn frobcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobcalc"))
        .args(args)
        .env_remove("FROBCALC_PRECISION")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Runs `args` into a file, re-runs its echoed request, and compares bytes.
fn assert_round_trip(dir: &Path, name: &str, args: &[&str]) {
    let first = dir.join(format!("{name}.json"));
    let second = dir.join(format!("{name}.again.json"));
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--output", first.to_str().unwrap()]);
    let out = frobcalc(&full);
    assert!(
        out.status.success(),
        "{name}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = frobcalc(&[
        "--request",
        first.to_str().unwrap(),
        "--output",
        second.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{name}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap(),
        "{name} does not reproduce"
    );
}

#[test]
fn cusp_locus_example() {
    let r = report(&frobcalc(&[
        "fpure-locus",
        "--ring",
        "GF(2)[x,y]",
        "--ideal",
        "y^2+x^3",
    ]));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["result"]["locus_ideal"], serde_json::json!(["y", "x"]));
    assert_eq!(r["request"]["command"], "fpure-locus");
}

#[test]
fn filtration_example() {
    let r = report(&frobcalc(&[
        "filtration-check",
        "--c",
        "2",
        "--b",
        "3",
        "--p",
        "3",
    ]));
    assert_eq!(r["result"]["all_pass"], true);
    assert_eq!(r["result"]["step_count"], 9);
    assert_eq!(r["result"]["steps"].as_array().unwrap().len(), 9);
}

#[test]
fn exit_codes_by_error_class() {
    // Parse: malformed polynomial, malformed flags, malformed request file.
    assert_eq!(
        code(&frobcalc(&[
            "gb",
            "--ring",
            "GF(5)[x,y]",
            "--ideal",
            "y^2+*x"
        ])),
        3
    );
    assert_eq!(code(&frobcalc(&["gb", "--ring", "GF(5)[x,y]"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"command\": \"gb\", \"bogus\": 1}").unwrap();
    assert_eq!(code(&frobcalc(&["--request", bad.to_str().unwrap()])), 3);
    // Domain: point off the variety, non-prime modulus.
    let off = frobcalc(&[
        "fedder",
        "--ring",
        "GF(3)[x,y]",
        "--ideal",
        "x",
        "--point",
        "1,0",
    ]);
    assert_eq!(code(&off), 1);
    assert!(String::from_utf8_lossy(&off.stderr).contains("not on V(I)"));
    assert_eq!(
        code(&frobcalc(&["gb", "--ring", "GF(4)[x]", "--ideal", "x"])),
        1
    );
    // Precision / cap: exponent search cap, vanishing divisor.
    assert_eq!(
        code(&frobcalc(&[
            "uniform-e",
            "--ring",
            "GF(2)[x]",
            "--f",
            "x^7",
            "--cap",
            "2"
        ])),
        2
    );
    assert_eq!(
        code(&frobcalc(&[
            "t1-div",
            "--p",
            "2",
            "--f",
            "X1",
            "--g",
            "O(deg 3; t^4)"
        ])),
        2
    );
    // Help is not an error.
    assert_eq!(code(&frobcalc(&["--help"])), 0);
}

#[test]
fn every_subcommand_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let ring = ["--ring", "GF(3)[x,y]"];
    let with = |rest: &[&'static str]| -> Vec<&'static str> {
        let mut v = rest[..1].to_vec();
        v.extend(ring);
        v.extend(&rest[1..]);
        v
    };
    assert_round_trip(
        d,
        "gb",
        &with(&["gb", "--ideal", "y^2 - x^3; x*y", "--order", "lex"]),
    );
    assert_round_trip(
        d,
        "colon",
        &with(&["colon", "--ideal", "x^2; y^2; x*y", "--by", "x*y"]),
    );
    assert_round_trip(
        d,
        "intersect",
        &with(&[
            "intersect",
            "--ideal",
            "x; y^2",
            "--with",
            "x^2; y",
            "--flatness-e",
            "1",
        ]),
    );
    assert_round_trip(
        d,
        "bracket",
        &with(&["bracket", "--ideal", "x + y^2", "--e", "2"]),
    );
    assert_round_trip(
        d,
        "frobroot",
        &with(&["frobroot", "--ideal", "x^4*y + y^7"]),
    );
    assert_round_trip(
        d,
        "trace",
        &with(&["trace", "--ideal", "x^4*y + y^7", "--enumerate"]),
    );
    assert_round_trip(
        d,
        "fedder",
        &with(&["fedder", "--ideal", "x*y", "--point", "0,0"]),
    );
    assert_round_trip(
        d,
        "locus",
        &with(&["fpure-locus", "--ideal", "y^2 - x^3", "--points"]),
    );
    assert_round_trip(
        d,
        "split",
        &with(&["split-test", "--ideal", "x*y", "--r", "x + y"]),
    );
    assert_round_trip(
        d,
        "filtration",
        &["filtration-check", "--c", "2", "--b", "2", "--p", "2"],
    );
    assert_round_trip(d, "uniform", &with(&["uniform-e", "--f", "x^5 + y^4"]));
    assert_round_trip(
        d,
        "gauss",
        &[
            "gauss-norm",
            "--p",
            "2",
            "--f",
            "t*(X1 + X2^3)",
            "--g",
            "1 + t^(1/2)*X1 + O(deg 4; t^10)",
        ],
    );
    assert_round_trip(
        d,
        "div",
        &[
            "t1-div",
            "--p",
            "2",
            "--f",
            "X1 + O(deg 6; t^10)",
            "--g",
            "1 + t*X1",
        ],
    );
    assert_round_trip(
        d,
        "split-approx",
        &[
            "tate-split",
            "--p",
            "2",
            "--d",
            "2",
            "--f",
            "(1 + t^(1/2))*X1 + t^(1/2)*X2 + O(deg 3; t^12)",
            "--w",
            "1",
        ],
    );
    assert_round_trip(d, "selftest", &["selftest", "--count", "5", "--seed", "7"]);
}

#[test]
fn split_certificate_and_approximant() {
    let r = report(&frobcalc(&[
        "split-test",
        "--ring",
        "GF(2)[x,y]",
        "--ideal",
        "x*y",
    ]));
    assert_eq!(r["result"]["splits"], true);
    assert!(!r["result"]["certificate"]["terms"]
        .as_array()
        .unwrap()
        .is_empty());

    let r = report(&frobcalc(&[
        "tate-split",
        "--p",
        "2",
        "--f",
        "t^(1/2)*X1",
        "--w",
        "1",
    ]));
    assert_eq!(r["result"]["approximant"], "t^(1/2)*X1 + O(deg 1)");
    assert_eq!(r["result"]["error_valuation"], "+inf");
    assert_eq!(r["result"]["bound_holds"], true);
}

#[test]
fn precision_from_environment_is_echoed_and_pinned() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let args = [
        "t1-div",
        "--p",
        "3",
        "--f",
        "X1 + O(deg 5; t^40)",
        "--g",
        "1 + X1 + t*X1^2",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_frobcalc"))
        .args(args)
        .args(["--output", first.to_str().unwrap()])
        .env("FROBCALC_PRECISION", "12")
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&std::fs::read(&first).unwrap()).unwrap();
    assert_eq!(r["request"]["precision"], 12);
    // The echoed precision wins over a different environment on re-run.
    let again = Command::new(env!("CARGO_BIN_EXE_frobcalc"))
        .args(["--request", first.to_str().unwrap()])
        .env("FROBCALC_PRECISION", "40")
        .output()
        .unwrap();
    assert_eq!(again.stdout, std::fs::read(&first).unwrap());
}

#[test]
fn seed_changes_selftest_only_through_the_request() {
    let a = report(&frobcalc(&["selftest", "--count", "3", "--seed", "1"]));
    let b = report(&frobcalc(&["selftest", "--count", "3", "--seed", "1"]));
    assert_eq!(a, b);
    assert_eq!(a["result"]["all_pass"], true);
    assert_eq!(a["request"]["seed"], 1);
}

#[test]
fn bundled_requests_run_and_reproduce() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("requests");
    let dir = tempfile::tempdir().unwrap();
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_owned();
        let first = frobcalc(&["--request", path.to_str().unwrap()]);
        let r = report(&first);
        assert_ne!(r["result"]["all_pass"], false, "{name}");
        assert_ne!(r["result"]["identity_holds"], false, "{name}");
        assert_ne!(r["result"]["bound_holds"], false, "{name}");
        let echoed = dir.path().join(format!("{name}.json"));
        std::fs::write(&echoed, &first.stdout).unwrap();
        let again = frobcalc(&["--request", echoed.to_str().unwrap()]);
        assert_eq!(first.stdout, again.stdout, "{name}");
        seen += 1;
    }
    assert!(seen >= 15);
}
