//! Behavior of the installed binary: seeding rules, exit codes, output
//! formats, and the plain-text reports.

use std::process::{Command, Output};

use boolfun::textfmt::parse_restriction;

fn boolfun_cmd(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_boolfun"));
    cmd.args(args).env_remove("BOOLFUN_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    boolfun_cmd(args).output().expect("binary should launch")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn junta_experiment_output_is_frozen() {
    let out = run(&["junta-exp", "--family", "dictator:n=4", "--trials", "2000", "--seed", "7"]);
    let expected = "\
experiment,family,n,d,p,tau_eps,estimate,ci_radius,trials,seed
junta-exp,\"dictator:n=4\",4,1,0,0.01,1,0.000958523640626467,2000,7
junta-size-0,\"dictator:n=4\",4,1,0,0.01,1,0.000958523640626467,2000,7
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn seed_env_var_matches_flag_and_flag_wins() {
    let args = ["junta-exp", "--family", "tribes:w=2,t=2", "--trials", "200"];
    let flagged = run(&["junta-exp", "--family", "tribes:w=2,t=2", "--trials", "200", "--seed", "12"]);
    let from_env = boolfun_cmd(&args)
        .env("BOOLFUN_SEED", "12")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&flagged), stdout_of(&from_env));

    let overridden = boolfun_cmd(&["junta-exp", "--family", "tribes:w=2,t=2", "--trials", "200", "--seed", "12"])
        .env("BOOLFUN_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&flagged), stdout_of(&overridden));

    let bad_env = boolfun_cmd(&args).env("BOOLFUN_SEED", "not-a-number").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn worker_count_does_not_change_bytes() {
    let one = run(&[
        "junta-exp", "--family", "tribes:w=2,t=2", "--trials", "400", "--seed", "3",
        "--workers", "1",
    ]);
    let four = run(&[
        "junta-exp", "--family", "tribes:w=2,t=2", "--trials", "400", "--seed", "3",
        "--workers", "4",
    ]);
    assert_eq!(stdout_of(&one), stdout_of(&four));
}

#[test]
fn verify_reports_suites_and_exit_codes() {
    let clean = run(&["verify", "--scope", "transform", "--scope", "nodes"]);
    let text = stdout_of(&clean);
    assert!(text.contains("ok transform"));
    assert!(text.contains("ok nodes"));
    assert!(text.contains("verify: 2 of 2 suites passed"));

    let faulty = run(&["verify", "--scope", "transform", "--inject-fault"]);
    assert_eq!(faulty.status.code(), Some(1));
    let text = String::from_utf8(faulty.stdout).unwrap();
    assert!(text.contains("FAIL transform"));
}

#[test]
fn analyze_prints_spectral_summary() {
    let out = run(&["analyze", "--family", "tribes:w=2,t=2"]);
    let text = stdout_of(&out);
    for line in [
        "source: tribes:w=2,t=2",
        "n: 4",
        "degree: 4",
        "mean: 0.4375",
        "variance: 0.24609375",
        "total_influence: 0.375",
        "influences: 0.09375 0.09375 0.09375 0.09375",
        "terms: 16",
        "f -0.0625",
    ] {
        assert!(text.contains(line), "missing {line:?} in:\n{text}");
    }
}

#[test]
fn tree_report_is_stable() {
    let out = run(&["tree", "--family", "recursive_maj3:levels=1"]);
    let expected = "\
source: recursive_maj3:levels=1
tree: (q=0 + (q=1 + leaf(1) - (q=2 + leaf(1) - leaf(0))) - (q=1 + (q=2 + leaf(1) - leaf(0)) - leaf(0)))
depth: 3
leaves: 6
error: 0
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn restriction_logs_parse_back() {
    let out = run(&[
        "junta-exp", "--family", "tribes:w=2,t=2", "--trials", "8", "--seed", "5",
        "--log-restrictions",
    ]);
    stdout_of(&out);
    let stderr = String::from_utf8(out.stderr).unwrap();
    let logged: Vec<_> = stderr
        .lines()
        .filter(|l| l.starts_with("restriction "))
        .collect();
    assert_eq!(logged.len(), 8);
    for line in logged {
        let r = parse_restriction(line).expect("log line should parse");
        assert!(r.alive().fits(4));
    }
}

#[test]
fn json_output_carries_duration() {
    let out = run(&[
        "aa-exp", "--family", "and_or_tree:depth=2", "--trials", "50", "--seed", "3",
        "--out", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(value["duration_seconds"].as_f64().unwrap() >= 0.0);
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["experiment"], "aa-exp-max-influence");
    assert_eq!(rows[2]["experiment"], "aa-exp-bound-value");

    let csv = stdout_of(&run(&[
        "aa-exp", "--family", "and_or_tree:depth=2", "--trials", "50", "--seed", "3",
    ]));
    assert!(!csv.contains("duration_seconds"));
}

#[test]
fn bad_family_is_a_usage_error() {
    let out = run(&["junta-exp", "--family", "nosuch:x=1"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("unknown family"));
}
