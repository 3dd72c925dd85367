use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use hilbcheck_cli::cases;
use hilbcheck_cli::report::{AnalysisReport, Status, VerifyReport};
use hilbcheck_cli::schema::validate;

fn hilbcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbcheck"))
        .args(args)
        .env_remove("HILBCHECK_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

/// Validates against the schema and checks that parsing and re-encoding is lossless.
fn round_trip_analysis(o: &Output) -> AnalysisReport {
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    validate(&v).unwrap();
    let r: AnalysisReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), v);
    r
}

fn round_trip_verify(o: &Output) -> VerifyReport {
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    validate(&v).unwrap();
    let r: VerifyReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), v);
    r
}

#[test]
fn documented_examples() {
    let o = hilbcheck(&["hf", &fixture("x2y2z2.ideal")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(1,3,3,1)\n");
    assert_eq!(
        stdout(&hilbcheck(&["tangent", &fixture("j_d4.ideal")])),
        "25\n"
    );
    assert_eq!(
        stdout(&hilbcheck(&["smoothable", &fixture("j_d4.ideal")])),
        "NotSmoothable (Pfaffian ≠ 0)\n"
    );
}

#[test]
fn bundled_names_resolve_without_a_path() {
    assert_eq!(stdout(&hilbcheck(&["colength", "x2y2z2xyz.ideal"])), "7\n");
}

#[test]
fn graded_tangent_split() {
    let o = hilbcheck(&["tangent", "--graded", "j_d4.ideal"]);
    assert_eq!(stdout(&o), "25\n  degree -1: 4\n  degree 0: 21\n");
    let o = hilbcheck(&["tangent", "--graded", "u_point.ideal"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not homogeneous"));
}

#[test]
fn parse_errors_carry_positions() {
    let f = scratch("broken.ideal", "field Q\nvars x y\nideal:\nx^2\n  y^^2\n");
    let o = hilbcheck(&["hf", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 5, column"), "{err}");
}

#[test]
fn precondition_errors_use_library_text() {
    let o = hilbcheck(&["pfaffian", "x2y2z2.ideal"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("the Pfaffian needs 4 variables"));
}

#[test]
fn points_ideal_from_dimension_or_context() {
    let pts = scratch("three.pts", "# three points\n0,0\n1,0\n0,1/2\n");
    let by_d = hilbcheck(&["points-ideal", "-d", "2", &pts]);
    assert!(by_d.status.success());
    let ctx = scratch("plane.ideal", "field Q\nvars x1 x2\nideal:\n");
    let by_ctx = hilbcheck(&["points-ideal", "--ring", &ctx, &pts]);
    assert_eq!(stdout(&by_d), stdout(&by_ctx));
    let ideal = scratch("three.ideal", &stdout(&by_d));
    assert_eq!(stdout(&hilbcheck(&["colength", &ideal])), "3\n");
    let bad = scratch("bad.pts", "0,0\n1,zz\n");
    let o = hilbcheck(&["points-ideal", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 3"));
}

#[test]
fn eight_points_are_smoothable() {
    let pts = hilbcheck(&["points-ideal", &fixture("eight_points.pts")]);
    let ideal = scratch("eight.ideal", &stdout(&pts));
    assert_eq!(stdout(&hilbcheck(&["smoothable", &ideal])), "Smoothable\n");
}

#[test]
fn census_lists_functions() {
    let o = hilbcheck(&["census", "-d", "2", "-n", "4"]);
    assert_eq!(stdout(&o), "(1,1,1,1)\n(1,2,1)\n");
}

#[test]
fn every_json_report_matches_the_schema() {
    let pts = fixture("eight_points.pts");
    let runs: Vec<Vec<&str>> = vec![
        vec!["colength", "j_d4.ideal"],
        vec!["hf", "x2y2z2.ideal"],
        vec!["tangent", "x2y2z2xyz.ideal"],
        vec!["tangent", "--graded", "j_d4.ideal"],
        vec!["initial", "-w", "7,5,3", "u_point.ideal"],
        vec!["pfaffian", "j_d4.ideal"],
        vec!["smoothable", "j_d4.ideal"],
        vec!["smoothable", "z_point.ideal"],
        vec!["points-ideal", &pts],
        vec!["census", "-d", "3", "-n", "6"],
    ];
    for args in runs {
        let mut full = vec!["--json"];
        full.extend(&args);
        let o = hilbcheck(&full);
        assert!(o.status.success(), "{args:?}");
        let r = round_trip_analysis(&o);
        assert_eq!(r.command, args[0]);
    }
}

#[test]
fn curve_case_reports_sixteen() {
    let o = hilbcheck(&["verify-paper", "--case", "curve16"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("hilbcheck verify-paper (seed 20240601)\n"));
    assert!(text.contains("PASS          curve16"));
    assert!(text.contains("valuation = 16"));
    let j = hilbcheck(&["--json", "verify-paper", "--case", "curve16"]);
    let r = round_trip_verify(&j);
    assert_eq!(r.cases.len(), 1);
    assert_eq!(r.cases[0].values["valuation"], 16);
}

#[test]
fn seeds_come_from_flag_then_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_hilbcheck"));
        c.args(args).env_remove("HILBCHECK_SEED");
        if let Some(s) = env {
            c.env("HILBCHECK_SEED", s);
        }
        stdout(&c.output().unwrap())
    };
    let args = ["verify-paper", "--case", "formulas"];
    assert!(run(Some("7"), &args).starts_with("hilbcheck verify-paper (seed 7)"));
    let mut with_flag = vec!["--seed", "9"];
    with_flag.extend(args);
    assert!(run(Some("7"), &with_flag).starts_with("hilbcheck verify-paper (seed 9)"));
}

#[test]
fn text_reports_are_byte_identical() {
    let args = ["verify-paper", "--case", "degeneration"];
    let a = hilbcheck(&args);
    let b = hilbcheck(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn exit_status_follows_case_status() {
    for case in ["degeneration", "formulas", "table1"] {
        let o = hilbcheck(&["--json", "verify-paper", "--case", case]);
        let r = round_trip_verify(&o);
        let want = if r.status == Status::Pass { 0 } else { 1 };
        assert_eq!(o.status.code(), Some(want), "{case}");
        assert_eq!(
            r.status == Status::Pass,
            r.cases.iter().all(|c| c.status == Status::Pass)
        );
    }
    assert_eq!(
        hilbcheck(&["verify-paper", "--case", "no-such-case"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn full_suite_runs_in_canonical_order() {
    let o = hilbcheck(&["--json", "verify-paper"]);
    let r = round_trip_verify(&o);
    let got: Vec<String> = r.cases.iter().map(|c| c.name.clone()).collect();
    assert_eq!(got, cases::names());
    assert_eq!(
        o.status.code(),
        Some(if r.status == Status::Pass { 0 } else { 1 })
    );
    for name in [
        "tangent",
        "curve16",
        "hom-vanishing",
        "pfaffian",
        "classifier",
        "formulas",
    ] {
        let c = r.cases.iter().find(|c| c.name == name).unwrap();
        assert_eq!(c.status, Status::Pass, "{name}: {:?}", c.checks);
    }
}
