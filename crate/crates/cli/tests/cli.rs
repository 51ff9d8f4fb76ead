use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qsym_cli::{parse_config, render_jsonl, run_suite};

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qsym-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn repo_root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
}

#[test]
fn suite_is_independent_of_parallelism() {
    let mut cfg = parse_config("max_dim = 5\nseeds = 2\n").unwrap();
    cfg.parallelism = 1;
    let serial = render_jsonl(&run_suite(&cfg));
    cfg.parallelism = 6;
    let parallel = render_jsonl(&run_suite(&cfg));
    assert_eq!(serial, parallel);
    assert_eq!(serial, render_jsonl(&run_suite(&cfg)));
}

#[test]
fn default_suite_matches_the_golden_file() {
    let cfg = repo_root().join("configs/default.conf");
    let o = qsym(&["golden", "diff", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn golden_drift_exits_1_with_a_pointer() {
    let dir = scratch("drift");
    let cfg = dir.join("c.conf");
    fs::write(&cfg, "checks = ybe\nmax_dim = 3\ngolden = g.jsonl\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(code(&qsym(&["golden", "bless", "--config", c])), 0);
    assert_eq!(code(&qsym(&["golden", "diff", "--config", c])), 0);
    let g = dir.join("g.jsonl");
    let text = fs::read_to_string(&g).unwrap().replacen("PASS", "FAIL", 1);
    fs::write(&g, text).unwrap();
    let o = qsym(&["golden", "diff", "--config", c]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("g.jsonl:1: drift"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let ok = qsym(&["verify", "ybe", "--algebra", "gl(1|2)"]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"status\":\"PASS\""));

    let dir = scratch("codes");
    let bad = dir.join("bad.json");
    fs::write(&bad, r#"{"lambda": "1", "offdiag": {"1": "1", "3": "2"}}"#).unwrap();
    let o = qsym(&[
        "verify",
        "re",
        "--algebra",
        "osp(1|2)",
        "--kind",
        "A",
        "--block",
        "1",
        "--params",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);

    let o = qsym(&["verify", "re", "--algebra", "gl(1|2)", "--kind", "C"]);
    assert_eq!(code(&o), 4, "sampling C on gl is a usage error");
    let o = qsym(&[
        "verify",
        "commutant",
        "--algebra",
        "osp(1|4)",
        "--kind",
        "A",
        "--block",
        "3",
    ]);
    assert_eq!(code(&o), 4);

    let cfg = dir.join("broken.conf");
    fs::write(&cfg, "checks = ybe\n[k a]\nalgebra = osp(1|2)\nlambda = q^\n").unwrap();
    let o = qsym(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4, field `lambda`"));
    assert_eq!(code(&qsym(&["no-such-command"])), 4);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn precondition_failures_exit_3() {
    let dir = scratch("pre");
    // B needs m >= 2: the explicit K is caught at load time, a suite job is not
    let p = dir.join("p.json");
    fs::write(&p, r#"{"lambda": "1"}"#).unwrap();
    let o = qsym(&[
        "verify",
        "re",
        "--algebra",
        "osp(1|2)",
        "--kind",
        "B",
        "--block",
        "1",
        "--params",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PRECONDITION-FAIL"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn conjecture_failures_only_count_when_strict() {
    let dir = scratch("strict");
    let cfg = dir.join("c.conf");
    fs::write(&cfg, "checks = conjectures\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = qsym(&["run", "--config", c]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("CONJECTURE-FAIL"));
    assert_eq!(code(&qsym(&["--strict-conjectures", "run", "--config", c])), 2);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn solve_mixture_reports_closed_form_agreement() {
    let dir = scratch("solve");
    let p = dir.join("p.json");
    fs::write(&p, r#"{"lambda": "1", "offdiag": {"1": "1", "3": "-q"}}"#).unwrap();
    let o = qsym(&[
        "solve",
        "mixture",
        "--family",
        "osp-odd",
        "--bn",
        "0",
        "--bm",
        "1",
        "--kind",
        "A",
        "--block",
        "1",
        "--params",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let line: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(line["alpha"], 1);
    assert_eq!(line["c"], "(-1)/(q)");
    assert_eq!(line["matches_paper"], true);

    let scalar = qsym(&[
        "verify",
        "commutant",
        "--algebra",
        "osp(1|2)",
        "--kind",
        "A",
        "--block",
        "1",
        "--params",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&scalar), 0);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn enumerate_and_dump() {
    let o = qsym(&["enumerate", "satake", "--algebra", "gl(1|2)", "--format", "ascii"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("[o]-[o] tau:(1 2)")), "{text}");

    let o = qsym(&["enumerate", "satake", "--algebra", "osp(1|2)"]);
    for line in String::from_utf8(o.stdout).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["piL"].is_array() && v["tau"].is_array());
    }

    let o = qsym(&["dump", "rmatrix", "--algebra", "gl(1|2)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["order"], 2);
    let entries = v["entries"].as_array().unwrap();
    let keys: Vec<Vec<u64>> = entries
        .iter()
        .map(|e| e.as_array().unwrap()[..4].iter().map(|x| x.as_u64().unwrap()).collect())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
