use std::path::Path;
use std::process::{Command, Output};

use mdecc::array::BitArray;
use mdecc::config::{CodeConfig, Construction};
use mdecc::{Dims, LinearCode};

fn mdecc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdecc")).args(args).env_remove("MDECC_JOBS").output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn build_auto_m() {
    let out = mdecc(&["build", "--construction", "A", "--dims", "4,4", "--auto-m"]);
    assert_eq!(out.status.code(), Some(0));
    let desc = json(&out);
    assert_eq!(desc["m"], 5);
    assert_eq!(desc["r"], 7);
    assert_eq!(desc["config"]["construction"], "A");
}

#[test]
fn build_rejects_bad_parameters() {
    let out = mdecc(&["build", "--construction", "A", "--dims", "1,4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = mdecc(&["build", "--construction", "coloring-semicross", "--dims", "4,4,4", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even dimension"));
    let out = mdecc(&["build", "--construction", "coloring-semicross", "--dims", "4,4,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("experimental"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(mdecc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(mdecc(&["build", "--construction", "Q", "--dims", "4,4"]).status.code(), Some(1));
    assert_eq!(mdecc(&["build"]).status.code(), Some(1));
    assert_eq!(mdecc(&["--help"]).status.code(), Some(0));
    assert_eq!(mdecc(&["--version"]).status.code(), Some(0));
}

#[test]
fn export_is_deterministic_and_matches_descriptor() {
    let dir = tempfile::tempdir().unwrap();
    let desc = dir.path().join("c.json");
    let h1 = dir.path().join("h1.txt");
    let out = mdecc(&["build", "--construction", "B", "--dims", "5,5", "--out", path(&desc), "--export-h", path(&h1)]);
    assert_eq!(out.status.code(), Some(0));
    let out = mdecc(&["export-h", "--code", path(&desc)]);
    assert_eq!(out.status.code(), Some(0));
    let h1_text = std::fs::read_to_string(&h1).unwrap();
    assert_eq!(stdout(&out), h1_text);
    let imported = mdecc::export::import_h(&h1_text).unwrap();
    let code = CodeConfig::new(Construction::B, vec![5, 5]).build().unwrap().code;
    assert_eq!(imported.columns.len(), 25);
    for (cell, col) in imported.columns.iter().enumerate() {
        assert_eq!(col, &code.column(cell), "cell {cell}");
    }
}

#[test]
fn verify_reports_pass() {
    let out = mdecc(&["verify", "--construction", "A", "--dims", "4,4,4", "--exhaustive", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["failure_count"], 0);
    assert_eq!(report["injective"], true);
    assert!(report["redundancy"]["excess"].is_i64());
    assert!(report["class_size"].as_u64().unwrap() > 1);
}

#[test]
fn verify_reads_jobs_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_mdecc"))
        .args(["verify", "--construction", "E", "--dims", "3,3"])
        .env("MDECC_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_mdecc"))
        .args(["verify", "--construction", "E", "--dims", "3,3"])
        .env("MDECC_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn inject_then_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let desc = dir.path().join("c.json");
    assert_eq!(mdecc(&["build", "--construction", "coloring-semicross", "--dims", "6,6", "--out", path(&desc)]).status.code(), Some(0));
    for seed in ["1", "2", "99"] {
        let corrupted = dir.path().join(format!("x{seed}.txt"));
        let fixed = dir.path().join(format!("y{seed}.txt"));
        let out = mdecc(&["inject", "--code", path(&desc), "--seed", seed, "--out", path(&corrupted)]);
        assert_eq!(out.status.code(), Some(0));
        let injected = String::from_utf8_lossy(&out.stderr).trim().strip_prefix("injected ").unwrap().to_string();
        // same seed, same file
        let again = mdecc(&["inject", "--code", path(&desc), "--seed", seed]);
        assert_eq!(stdout(&again), std::fs::read_to_string(&corrupted).unwrap());

        let out = mdecc(&["decode", "--code", path(&desc), "--input", path(&corrupted), "--out", path(&fixed)]);
        assert_eq!(out.status.code(), Some(0));
        let result = json(&out);
        assert_eq!(result["status"], "corrected");
        assert_eq!(result["pattern"], injected.as_str());
        assert!(BitArray::parse(&std::fs::read_to_string(&fixed).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn decode_clean_array() {
    let dir = tempfile::tempdir().unwrap();
    let clean = dir.path().join("clean.txt");
    std::fs::write(&clean, BitArray::zeros(&Dims::new(vec![4, 4]).unwrap()).to_text()).unwrap();
    let out = mdecc(&["decode", "--construction", "A", "--dims", "4,4", "--input", path(&clean)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "no-error");
}

#[test]
fn decode_out_of_model_is_uncorrectable() {
    let config = CodeConfig::new(Construction::A, vec![6, 6]);
    let code = config.build().unwrap().code;
    let dims = code.dims().clone();
    // two separated 2-bursts: outside the class; pick one the decoder rejects
    let array = (0..36)
        .flat_map(|a| (a + 2..36).map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut x = BitArray::zeros(&dims);
            for c in [a, a + 1, b] {
                if c < 36 {
                    x.flip(c);
                }
            }
            x
        })
        .find(|x| code.decode_syndrome(&code.syndrome_of_array(x)).is_err())
        .expect("some out-of-model pattern is rejected");
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.txt");
    std::fs::write(&input, array.to_text()).unwrap();
    let out = mdecc(&["decode", "--construction", "A", "--dims", "6,6", "--input", path(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "uncorrectable");
}

#[test]
fn inject_explicit_pattern() {
    let out = mdecc(&["inject", "--construction", "A", "--dims", "4,4", "--pattern", "1,2;2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "dims 4,4\n0000\n0010\n0010\n0000\n");
    let out = mdecc(&["inject", "--construction", "A", "--dims", "4,4", "--pattern", "4,4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = mdecc(&["inject", "--construction", "A", "--dims", "4,4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn redundancy_table_rows() {
    let out = mdecc(&["redundancy-table", "--constructions", "B,D,coloring-semicross", "--ranks", "2,4", "--edges", "4", "--arms", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        let r: i64 = row[col("r")].parse().unwrap();
        let ceil: i64 = row[col("ceil_log_n")].parse().unwrap();
        assert_eq!(row[col("excess")].parse::<i64>().unwrap(), r - ceil);
        match row[col("construction")] {
            "B" => {
                let d = row[col("dims")].split(',').count() as u64;
                let expected = 2 * mdecc::gf2::ceil_log2(d + 1) as i64 + 2;
                assert_eq!(row[col("construction_excess")].parse::<i64>().unwrap(), expected);
            }
            "D" => {
                assert!(row[col("bound")].contains("4t + 1"));
                assert!(row[col("bound")].contains("4 ceil(log D + log R) + 5"));
            }
            _ => assert_eq!(row[col("bound_holds")], "true"),
        }
    }
    // D = 2, R = 1: 4t + 1 = 13 against 9
    assert!(rows.iter().any(|r| r[col("construction")] == "D" && r[col("flag")] == "discrepancy"));
}
