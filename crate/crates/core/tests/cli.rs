use std::path::PathBuf;
use std::process::Command as Process;

use lmokit::cli::{run, Command, Format, Input, RunConfig, EXIT_ERROR, EXIT_OK};
use lmokit::tangles::parse::hopf;
use serde_json::Value;

fn config(command: Command, preset: &str) -> RunConfig {
    RunConfig { command, input: Input::Preset(preset.into()), level: 1, budget: None, format: Format::Json, tilde: false }
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn omega_of_a_lens_space_matches_the_golden_report() {
    let out = run(&config(Command::Omega, "unknot f=3"));
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.output, golden("omega_unknot_3.json"));
    let v = json(&out.output);
    assert_eq!(v["result"]["epsilon"], "3");
    assert_eq!(v["metadata"]["n"], 1);
    assert_eq!(v["metadata"]["components"], 1);
}

#[test]
fn linking_of_the_hopf_link_matches_the_golden_report() {
    let out = run(&config(Command::Linking, "hopf f1=0 f2=0"));
    assert_eq!(out.output, golden("linking_hopf_0_0.json"));
    let v = json(&out.output);
    assert_eq!(v["result"]["matrix"], json("[[0,1],[1,0]]"));
    assert_eq!(v["result"]["sigma"], json(r#"{"plus":1,"minus":1,"zero":0}"#));
}

#[test]
fn rescaled_series_of_the_stabilization_unknot() {
    let mut c = config(Command::Zlmo, "u+");
    c.budget = Some(1);
    c.tilde = true;
    let out = run(&c);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.output, golden("zlmo_u_plus_tilde.json"));
    let terms = &json(&out.output)["result"]["terms"];
    assert_eq!(terms, &json(r#"[{"coefficient":"1","diagram":"X^0||"}]"#));
}

#[test]
fn skeleton_of_a_closed_link() {
    let out = run(&config(Command::Skeleton, "hopf f1=1 f2=2"));
    assert_eq!(out.output, golden("skeleton_hopf_1_2.json"));
}

#[test]
fn non_regular_input_yields_a_structured_error() {
    let out = run(&config(Command::Aarhus, "unknot f=0"));
    assert_eq!(out.status, EXIT_ERROR);
    assert_eq!(out.output, golden("aarhus_unknot_0_error.json"));
    assert_eq!(json(&out.output)["error"]["code"], "non_regular");
}

#[test]
fn every_error_path_carries_a_code() {
    let mut cases = vec![
        (config(Command::Omega, "figure eight"), "parse_error"),
        (RunConfig { budget: Some(4), ..config(Command::Omega, "u+") }, "budget_exceeded"),
        (RunConfig { input: Input::None, ..config(Command::Linking, "") }, "invalid_argument"),
        (RunConfig { input: Input::File("/nonexistent/link.txt".into()), ..config(Command::Linking, "") }, "invalid_argument"),
    ];
    let mut big = config(Command::Z, "u+");
    big.budget = Some(9);
    cases.push((big, "budget_exceeded"));
    let mut tilde = config(Command::Zlmo, "unknot f=0");
    tilde.tilde = true;
    tilde.budget = Some(1);
    cases.push((tilde, "non_regular"));
    let mut level = config(Command::Omega, "u+");
    level.level = 0;
    cases.push((level, "invalid_argument"));
    for (c, code) in cases {
        let out = run(&c);
        assert_eq!(out.status, EXIT_ERROR, "{c:?}");
        assert_eq!(json(&out.output)["error"]["code"], code, "{c:?}: {}", out.output);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (cmd, p) in [(Command::Omega, "hopf f1=1 f2=2"), (Command::Z, "unknot f=-2"), (Command::Aarhus, "hopf f1=0 f2=0")] {
        for format in [Format::Json, Format::Text] {
            let c = RunConfig { format, ..config(cmd, p) };
            assert_eq!(run(&c), run(&c));
        }
    }
}

#[test]
fn coefficients_are_reduced_fractions() {
    let v = json(&run(&config(Command::Z, "hopf f1=0 f2=1")).output);
    for t in v["result"]["terms"].as_array().unwrap() {
        let s = t["coefficient"].as_str().unwrap();
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
        assert!(q > 0);
        assert_eq!(num::integer::gcd(p, q), 1, "{s}");
        if q == 1 {
            assert!(!s.contains('/'));
        }
    }
}

#[test]
fn file_input_agrees_with_the_preset() {
    let dir = std::env::temp_dir().join(format!("lmokit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hopf.txt");
    std::fs::write(&path, hopf(1, 2).to_dsl()).unwrap();
    let from_file = json(&run(&RunConfig { input: Input::File(path), ..config(Command::Omega, "") }).output);
    let from_preset = json(&run(&config(Command::Omega, "hopf f1=1 f2=2")).output);
    assert_eq!(from_file["result"], from_preset["result"]);
    assert_eq!(from_file["metadata"], from_preset["metadata"]);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_lmokit");
    let ok = Process::new(exe).args(["omega", "--preset", "unknot f=3", "--n", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), golden("omega_unknot_3.json"));
    let err = Process::new(exe).args(["aarhus", "--preset", "unknot f=0"]).output().unwrap();
    assert_eq!(err.status.code(), Some(EXIT_ERROR));
    let usage = Process::new(exe).args(["omega", "--format", "yaml"]).output().unwrap();
    assert_ne!(usage.status.code(), Some(EXIT_OK));
}
