use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use umemura::codec::{decode, encode};
use umemura::families::{gen_umemura, noou_u, toda_t};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_umemura"));
    c.env_remove("UMEMURA_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn goldens() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for n in 0..=4u32 {
        for m in 0..=4 - n {
            for k in 0..=n {
                out.push((format!("gen_sum_{n}_{m}_{k}.json"), encode(&gen_umemura(n, m, k))));
            }
        }
    }
    for n in 0..=5 {
        out.push((format!("toda_t_{n}.json"), encode(&toda_t(n).unwrap())));
        out.push((format!("noou_u_{n}.json"), encode(&noou_u(n))));
    }
    out
}

#[test]
fn gen_example_prints_canonical_json() {
    let o = run(&["compute", "gen", "--n", "0", "--m", "1", "--k", "0"]);
    assert_eq!(code(&o), 0);
    let p = decode(std::str::from_utf8(&o.stdout).unwrap().trim()).unwrap();
    assert_eq!(p.to_text(), "w^2*b + w^2 - z^2*a - z^2");
    assert!(String::from_utf8_lossy(&o.stderr).contains("GEN_SUM(0,1,0)"));
}

#[test]
fn text_format_orders_by_w_then_z() {
    let o = run(&["--format", "text", "compute", "gen", "--n", "0", "--m", "1"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "w^2*b + w^2 - z^2*a - z^2");
}

#[test]
fn det_route_agrees_with_the_swapped_sum() {
    let o = run(&["compute", "gen", "--n", "0", "--m", "1", "--route", "det"]);
    assert_eq!(code(&o), 0);
    let p = decode(std::str::from_utf8(&o.stdout).unwrap().trim()).unwrap();
    assert_eq!(p.to_text(), "w^2*a + w^2 - z^2*b - z^2");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["verify", "--id", "THM1", "--params", "0,1", "--mode", "symbolic"])), 0);
    let bad = run(&["verify", "--id", "THM1", "--params", "0,0"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("m >= 1"));
    assert_eq!(code(&run(&["verify", "--id", "THM1", "--params", "0,1", "--frobnicate"])), 2);
    assert_eq!(code(&run(&["verify", "--id", "NOPE", "--params", "1"])), 2);
    assert_eq!(code(&run(&["verify", "--id", "THM1", "--params", "0,1", "--mode", "psychic"])), 2);
    assert_eq!(code(&run(&["painleve", "--check", "evi_h0m", "--m", "1", "--digits", "10"])), 2);
    assert_eq!(code(&run(&["painleve", "--check", "evi_h0m", "--m", "1", "--t-grid", "1/2,2"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn failing_numeric_control_exits_one() {
    let ok = run(&["painleve", "--check", "evi_h0m", "--m", "1", "--t-grid", "3/2,2"]);
    assert_eq!(code(&ok), 0);
    let bad = run(&["painleve", "--check", "evi_h0m", "--m", "1", "--t-grid", "3/2,2", "--unsquared"]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stdout).contains("\"status\":\"fail\""));
}

#[test]
fn painleve_report_is_deterministic() {
    let args = ["painleve", "--check", "pvi_qm", "--m", "1", "--tuple", "negated-third", "--t-grid", "6/5,3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn golden_files_match_library() {
    for (name, text) in goldens() {
        let on_disk = fs::read_to_string(golden_dir().join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, text + "\n", "{name}");
    }
}

#[test]
fn golden_files_match_binary() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("gen_sum_2_2_1.json", vec!["gen", "--n", "2", "--m", "2", "--k", "1"]),
        ("toda_t_5.json", vec!["toda", "--n", "5"]),
        ("noou_u_4.json", vec!["noou", "--n", "4"]),
    ] {
        let out = dir.path().join(name);
        let mut full = vec!["compute"];
        full.extend(args);
        full.extend(["--out", out.to_str().unwrap()]);
        assert_eq!(code(&run(&full)), 0);
        assert_eq!(fs::read(&out).unwrap(), fs::read(golden_dir().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn catalog_is_byte_identical_across_runs_and_modes() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..3).map(|i| dir.path().join(format!("c{i}.jsonl"))).collect();
    let p = |i: usize| paths[i].to_str().unwrap().to_string();
    assert_eq!(code(&run(&["catalog", "--budget", "3", "--seed", "7", "--out", &p(0)])), 0);
    assert_eq!(code(&run(&["catalog", "--budget", "3", "--seed", "7", "--out", &p(1)])), 0);
    assert_eq!(code(&run(&["catalog", "--budget", "3", "--seed", "7", "--sequential", "--out", &p(2)])), 0);
    let first = fs::read(&paths[0]).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, fs::read(&paths[1]).unwrap());
    assert_eq!(first, fs::read(&paths[2]).unwrap());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["compute", "gen", "--n", "1", "--m", "2", "--k", "1", "--cache-dir", d]);
    let second = run(&["compute", "gen", "--n", "1", "--m", "2", "--k", "1", "--cache-dir", d]);
    assert_eq!(first.stdout, second.stdout);
    let stats = run(&["cache", "stats", "--dir", d]);
    assert!(String::from_utf8_lossy(&stats.stdout).contains("\"entries\":1"));
    let clear = run(&["cache", "clear", "--dir", d]);
    assert!(String::from_utf8_lossy(&clear.stdout).contains("\"removed\":1"));
    let stats = bin().args(["cache", "stats"]).env("UMEMURA_CACHE", d).output().unwrap();
    assert!(String::from_utf8_lossy(&stats.stdout).contains("\"entries\":0"));
}
