use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_entropy-lab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("ENTROPY_LAB_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in\n{out}"))
        .to_string()
}

#[test]
fn tsallis_rel_of_the_worked_pair() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "P.json", r#"{"alphabet":2,"probs":[0.7,0.3]}"#);
    let q = write(&dir, "Q.json", r#"{"alphabet":2,"probs":[0.5,0.5]}"#);
    let o = run(&["compute", "tsallis-rel", "--alpha", "2", s(&p), s(&q)]);
    assert_eq!(code(&o), 0);
    // Σ p²/q − 1 = 0.98 + 0.18 − 1
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.16).abs() < 1e-12, "{v}");
}

#[test]
fn disjoint_supports_print_infinity() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "P.json", r#"{"alphabet":2,"probs":[1,0]}"#);
    let q = write(&dir, "Q.json", r#"{"alphabet":2,"probs":[0,1]}"#);
    let o = run(&["compute", "tsallis-rel", "--alpha", "2", s(&p), s(&q)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "+inf");
}

#[test]
fn trace_distance_to_itself_is_zero() {
    let dir = TempDir::new().unwrap();
    let rho = write(&dir, "rho.json", r#"{"dim":2,"re":[[0.5,0.25],[0.25,0.5]],"im":[[0,0.1],[-0.1,0]]}"#);
    let o = run(&["compute", "trace-distance", s(&rho), s(&rho)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn csv_row_inputs_are_accepted() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.csv", "0.25,0.25,0.5\n");
    let o = run(&["compute", "tsallis", "--alpha", "2", s(&p)]);
    assert_eq!(code(&o), 0);
    // 1 − (1/16 + 1/16 + 1/4)
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.625).abs() < 1e-15);
}

#[test]
fn printed_value_round_trips() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "P.json", r#"{"alphabet":3,"probs":[0.2,0.3,0.5]}"#);
    let o = run(&["compute", "renyi", "--alpha", "0.3", s(&p)]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    let expect = (0.2f64.powf(0.3) + 0.3f64.powf(0.3) + 0.5f64.powf(0.3)).ln() / 0.7;
    assert!((v - expect).abs() < 1e-14);
}

#[test]
fn fannes_outside_its_range_is_not_applicable() {
    let o = run(&["check", "fannes", "--alpha", "2", "--tau", "0.95", "--dim", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "in_domain"), "false");
}

#[test]
fn fannes_in_range_has_a_value() {
    let o = run(&["check", "fannes", "--alpha", "0.5", "--tau", "0.125", "--dim", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(field(&out, "in_domain"), "true");
    // 2√τ − τ + √τ·2(√2 − 1)
    let t: f64 = 0.125;
    let expect = 2.0 * t.sqrt() - t + t.sqrt() * 2.0 * (2f64.sqrt() - 1.0);
    let v: f64 = field(&out, "bound").parse().unwrap();
    assert!((v - expect).abs() < 1e-14);
}

#[test]
fn thm3_on_equal_pair_is_tight_at_zero() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "P.json", r#"{"alphabet":3,"probs":[0.2,0.3,0.5]}"#);
    let o = run(&["check", "thm3-upper", "--alpha", "2", s(&p), s(&p)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for key in ["measured", "bound", "slack"] {
        assert_eq!(field(&out, key), "0", "{key}");
    }
    assert_eq!(field(&out, "satisfied"), "true");
}

#[test]
fn pinsker_is_satisfied_on_a_valid_pair() {
    let dir = TempDir::new().unwrap();
    let rho = write(&dir, "rho.json", r#"{"dim":2,"re":[[0.5,0.5],[0.5,0.5]],"im":[[0,0],[0,0]]}"#);
    let sigma = write(&dir, "sigma.json", r#"{"dim":2,"re":[[0.9,0],[0,0.1]],"im":[[0,0],[0,0]]}"#);
    let o = run(&["check", "pinsker", "--alpha", "0.5", s(&rho), s(&sigma)]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "satisfied"), "true");
}

#[test]
fn check_csv_has_the_report_header() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "J.json", r#"{"alphabet":2,"joint":[[0.4,0.1],[0.1,0.4]]}"#);
    let o = run(&["check", "fano", "--alpha", "2", "--format", "csv", s(&j)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("kind,alpha,params,measured,bound,slack,in_domain"));
    assert!(lines.next().unwrap().starts_with("fano,2,"));
}

#[test]
fn zero_trials_is_a_config_error() {
    let o = run(&["fuzz", "--trials", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_config_file_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "bad.toml", "seed = 3\nflavour = \"x\"\n");
    assert_eq!(code(&run(&["fuzz", "--config", s(&cfg)])), 2);
}

#[test]
fn small_fuzz_run_is_clean_and_echoes_seed() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "cfg.toml", "seed = 42\ndims = [2, 3]\nalphas = [0.5, 2.0]\ntrials = 3\ntolerance = 1e-9\n");
    let viol = dir.path().join("v.csv");
    let o = run(&["fuzz", "--config", s(&cfg), "--violations", s(&viol)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("# seed=42\n"));
    let v = fs::read_to_string(&viol).unwrap();
    assert_eq!(v.lines().count(), 1);
}

#[test]
fn seed_comes_from_the_environment() {
    let o = Command::new(BIN)
        .args(["fuzz", "--trials", "1", "--property", "lemma1"])
        .env("ENTROPY_LAB_SEED", "777")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("# seed=777\n"));
}

#[test]
fn unknown_property_is_a_usage_error() {
    assert_eq!(code(&run(&["fuzz", "--property", "no-such-thing"])), 2);
}

#[test]
fn fannes_comparison_scan_table() {
    let o = run(&["scan", "fannes-comparison", "--dim", "2", "--alpha", "0.5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("tau,fannes,yanagi,relative_difference"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|t| t.parse().unwrap()).collect();
    assert!(first[0] <= 1e-6);
    assert!((first[3] - (2f64.sqrt() - 1.0)).abs() < 1e-3);
}

#[test]
fn empty_grid_gives_header_only() {
    let o = run(&["scan", "fannes-comparison", "--tau-grid", ""]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "tau,fannes,yanagi,relative_difference\n");
}

#[test]
fn alpha_limit_scan_error_shrinks() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "P.json", r#"{"alphabet":3,"probs":[0.2,0.3,0.5]}"#);
    let q = write(&dir, "Q.json", r#"{"alphabet":3,"probs":[0.4,0.4,0.2]}"#);
    let o = run(&["scan", "alpha-limit", "--quantity", "tsallis-rel", "--k-max", "5", s(&p), s(&q)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let errors: Vec<f64> = out.lines().skip(1).map(|l| l.split(',').nth(5).unwrap().parse().unwrap()).collect();
    assert_eq!(errors.len(), 5);
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn oracle_reaches_the_bound() {
    let o = run(&["oracle", "--q0", "0.2", "--tau", "0.1", "--alpha", "2", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let oracle: f64 = field(&out, "oracle").parse().unwrap();
    let bound: f64 = field(&out, "bound").parse().unwrap();
    assert!((oracle - bound).abs() < 1e-12);
    assert_eq!(field(&out, "extremal_attains"), "true");
}

#[test]
fn exit_code_matrix() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "P.json", r#"{"alphabet":2,"probs":[0.7,0.3]}"#);
    let bad = write(&dir, "bad.json", r#"{"alphabet":2,"probs":[0.7,0.7]}"#);
    let junk = write(&dir, "junk.json", "{not json");
    let missing = dir.path().join("missing.json");
    let cases: &[(&[&str], i32)] = &[
        (&["compute", "tsallis", "--alpha", "2", s(&p)], 0),
        (&["compute", "tsallis", "--alpha", "2", s(&bad)], 2),
        (&["compute", "tsallis", "--alpha", "2", s(&junk)], 2),
        (&["compute", "tsallis", "--alpha", "2", s(&missing)], 2),
        (&["compute", "tsallis", "--alpha", "-1", s(&p)], 2),
        (&["compute", "tsallis", s(&p)], 2),
        (&["compute", "tsallis-rel", "--alpha", "2", s(&p)], 2),
        (&["compute", "no-such-quantity", s(&p)], 2),
        (&["check", "fano", "--alpha", "2", "--pe", "0.5", "--dim", "1"], 3),
        (&["check", "pinsker", "--alpha", "2", "--tau", "0.1"], 3),
        (&["oracle", "--q0", "0.2", "--tau", "0.1", "--alpha", "0.5", "--n", "4"], 3),
    ];
    for (args, want) in cases {
        let o = run(args);
        assert_eq!(code(&o), *want, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
