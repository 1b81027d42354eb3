//! End-to-end checks of the command-line surface: every subcommand, both
//! output modes, and the exit-code contract (0 success, 1 domain, 2 usage).

use serde_json::Value;

fn run_cli(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = hilburch_cli::run(
        std::iter::once("hilburch").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run_cli(args);
    assert_eq!(code, 0, "args {args:?} failed: {err}");
    out
}

fn ok_json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn dim_prints_the_cell_dimension() {
    assert_eq!(ok(&["dim", "--staircase", "0,1,3,5"]), "6\n");
    let j = ok_json(&["dim", "--staircase", "0,1,3,5", "--json"]);
    assert_eq!(j["dimension"], 6);
    assert_eq!(j["staircase"]["m"], serde_json::json!([0, 1, 3, 5]));
}

#[test]
fn lt_prints_the_leading_term_staircase() {
    let out = ok(&[
        "lt",
        "--field",
        "q",
        "--gens",
        "x^4+x^3*y; y^2+x^3+x^2*y",
    ]);
    assert_eq!(out, "t=4; m=0,2,2,2,2\n");
    let j = ok_json(&["lt", "--gens", "x^4+x^3*y; y^2+x^3+x^2*y", "--json"]);
    assert_eq!(j["t"], 4);
    assert_eq!(j["m"], serde_json::json!([0, 2, 2, 2, 2]));
}

#[test]
fn stratify_lists_every_cell_for_a_colength() {
    let out = ok(&["stratify", "--colength", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("staircase"));
    assert!(lines[1].contains("t=1; m=0,3") && lines[1].contains("{1,1,1}"));
    assert!(lines[2].contains("t=2; m=0,1,2") && lines[2].contains("{1,2}"));
    assert!(lines[3].contains("t=3; m=0,1,1,1") && lines[3].contains("{1,1,1}"));

    let j = ok_json(&["stratify", "--colength", "3", "--json"]);
    let cells = j.as_array().unwrap();
    assert_eq!(cells.len(), 3);
    assert_eq!(cells[0]["generators"], "x,y^3");
    assert_eq!(cells[1]["generators"], "x^2,xy,y^2");
    assert_eq!(cells[2]["generators"], "x^3,y");
}

#[test]
fn info_reports_numerical_invariants() {
    let out = ok(&["info", "--staircase", "0,1,3,5"]);
    for line in [
        "staircase: t=3; m=0,1,3,5",
        "generators: x^3,x^2y,xy^3,y^5",
        "colength: 9",
        "socle degree: 4",
        "hilbert function: 1,2,3,2,1",
        "cell dimension: 6",
        "lex segment: yes",
        "chart condition: yes",
        "gorenstein admissible: yes",
    ] {
        assert!(out.contains(line), "missing {line:?} in:\n{out}");
    }
}

#[test]
fn basis_prints_the_reduced_standard_basis() {
    let out = ok(&["basis", "--gens", "x^4+x^3*y; y^2+x^3+x^2*y"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        [
            "x^4+x^3y",
            "x^3y^2",
            "x^2y^2",
            "xy^2",
            "x^3+x^2y+y^2"
        ]
    );
    let j = ok_json(&["basis", "--gens", "x^4+x^3*y; y^2+x^3+x^2*y", "--json"]);
    assert_eq!(j["elements"].as_array().unwrap().len(), 5);
    assert_eq!(j["staircase"]["m"], serde_json::json!([0, 2, 2, 2, 2]));
}

#[test]
fn phi_prints_signed_minors() {
    let out = ok(&["phi", "--staircase", "0,1,3,5", "--point", "1,0,0,1,0,0"]);
    assert_eq!(out, "x^3-2xy^2\nx^2y-y^3\nxy^3\ny^5\n");
    let origin = ok(&["phi", "--staircase", "0,1,3,5"]);
    assert_eq!(origin, "x^3\nx^2y\nxy^3\ny^5\n");
}

#[test]
fn canonical_recovers_a_cell_point() {
    let out = ok(&[
        "canonical",
        "--gens",
        "x^3-2*x*y^2; x^2*y-y^3; x*y^3; y^5",
    ]);
    assert!(out.contains("point: (1,0,0,1,0,0)"), "{out}");
    assert!(out.contains("[  y     0     0 ]"), "{out}");
}

#[test]
fn canonical_reports_chartless_staircases() {
    let out = ok(&["canonical", "--gens", "x^6; x*y^2-y^5; y^8"]);
    assert!(out.contains("-x+y^3"), "{out}");
    assert!(out.contains("point: unavailable"), "{out}");

    let j = ok_json(&["canonical", "--gens", "x^6; x*y^2-y^5; y^8", "--json"]);
    assert_eq!(j["point"], Value::Null);
    assert_eq!(j["matrix"]["entries"][6][5], "y^3");
}

#[test]
fn probe_reports_image_and_cell_counts() {
    let out = ok(&["probe", "--staircase", "0,2,2,2,2", "--prime", "3"]);
    for line in [
        "degree template slots: 4",
        "image ideals: 81",
        "cell ideals: 81",
        "injective: yes",
        "pass: yes",
    ] {
        assert!(out.contains(line), "missing {line:?} in:\n{out}");
    }
    let j = ok_json(&["probe", "--staircase", "0,2,2,2,2", "--prime", "3", "--json"]);
    assert_eq!(j["d_template"], 4);
    assert_eq!(j["image_count"], 81);
    assert_eq!(j["cell_count"], 81);
    assert_eq!(j["pass"], true);
}

#[test]
fn gorenstein_accepts_generators_or_a_point() {
    let by_gens = ok(&["gorenstein", "--gens", "x^2*y-y^3; x^3-2*x*y^2"]);
    assert!(by_gens.contains("mu: 2"));
    assert!(by_gens.contains("gorenstein: yes"));

    let by_point = ok(&[
        "gorenstein",
        "--staircase",
        "0,1,3,5",
        "--point",
        "1,0,0,1,0,0",
    ]);
    assert!(by_point.contains("mu: 2"));
    assert!(by_point.contains("gorenstein: yes"));

    let origin = ok(&[
        "gorenstein",
        "--staircase",
        "0,1,3,5",
        "--point",
        "0,0,0,0,0,0",
    ]);
    assert!(origin.contains("gorenstein: no"));

    let (code, _, err) = run_cli(&["gorenstein"]);
    assert_eq!(code, 2);
    assert!(err.contains("--gens") && err.contains("--staircase"));

    let (code, _, err) = run_cli(&["gorenstein", "--staircase", "0,1,3,5"]);
    assert_eq!(code, 2);
    assert!(err.contains("--point"), "{err}");
}

#[test]
fn cover_finds_the_quintic_witness() {
    let args = [
        "cover",
        "--target",
        "x^3-2*x*y^2; x^2*y-2*y^3; y^3",
        "--staircase",
        "0,1,3,5",
        "--point",
        "1,0,0,1,0,0",
        "--samples",
        "40",
        "--bound",
        "5",
        "--seed",
        "11",
    ];
    let out = ok(&args);
    assert!(out.contains("cover: x^3-2xy^2, x^2y-y^3"), "{out}");
    assert!(out.contains("gap: 2"), "{out}");
    assert!(out.contains("point: (1,0,0,1,0,0)"), "{out}");

    let mut json_args = args.to_vec();
    json_args.push("--json");
    let j = ok_json(&json_args);
    let covers = j.as_array().unwrap();
    assert!(!covers.is_empty());
    assert_eq!(covers[0]["gap"], 2);
    assert_eq!(covers[0]["gorenstein"], true);
}

#[test]
fn gcl_is_exact_under_an_exhaustive_search() {
    let out = ok(&[
        "gcl",
        "--target",
        "x^3-2*x*y^2; x^2*y-2*y^3; y^3",
        "--field",
        "p=5",
        "--budget",
        "100000",
        "--point",
        "0,1,3,5:1,0,0,1,0,0",
    ]);
    assert!(out.contains("target colength: 7"), "{out}");
    assert!(out.contains("gcl = 2 (exact)"), "{out}");
    assert!(out.contains("witness (gap 2):"), "{out}");

    let rational = ok(&[
        "gcl",
        "--target",
        "x^3-2*x*y^2; x^2*y-2*y^3; y^3",
        "--point",
        "0,1,3,5:1,0,0,1,0,0",
        "--seed",
        "5",
    ]);
    assert!(rational.contains("gcl <= 2"), "{rational}");
}

#[test]
fn gin_is_deterministic_for_a_seed() {
    let a = ok(&["gin", "--gens", "y-x^2; x^3", "--seed", "7"]);
    let b = ok(&["gin", "--gens", "y-x^2; x^3", "--seed", "7"]);
    assert_eq!(a, "t=1; m=0,3\n");
    assert_eq!(a, b);
    let j = ok_json(&["gin", "--gens", "y-x^2; x^3", "--seed", "7", "--json"]);
    assert_eq!(j["staircase"]["m"], serde_json::json!([0, 3]));
    assert_eq!(j["seed"], 7);
}

#[test]
fn domain_errors_exit_with_one() {
    let (code, out, err) = run_cli(&["canonical", "--gens", "y-x^2; x^3"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error: "), "{err}");

    let (code, _, err) = run_cli(&[
        "cover",
        "--target",
        "x^3-2*x*y^2; x^2*y-2*y^3; y^3",
        "--staircase",
        "0,1,3,5",
        "--field",
        "p=3",
        "--budget",
        "4",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    let (code, _, err) = run_cli(&["dim", "--staircase", "1,0"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("usage error: --staircase"), "{err}");

    let (code, _, err) = run_cli(&["lt", "--gens", "x +", "--field", "q"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("usage error: --gens"), "{err}");

    let (code, _, _) = run_cli(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn randomized_json_output_requires_a_seed() {
    for args in [
        vec!["gin", "--gens", "x; y", "--json"],
        vec![
            "cover",
            "--target",
            "x; y",
            "--staircase",
            "0,1",
            "--json",
        ],
        vec!["gcl", "--target", "x; y", "--json"],
    ] {
        let (code, _, err) = run_cli(&args);
        assert_eq!(code, 2, "expected usage failure for {args:?}");
        assert!(err.contains("--seed"), "{err}");
    }
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Gröbner cells"));
    for sub in [
        "info", "lt", "basis", "phi", "canonical", "dim", "stratify", "probe",
        "gorenstein", "cover", "gcl", "gin",
    ] {
        assert!(out.contains(sub), "help does not mention {sub}");
    }
}
