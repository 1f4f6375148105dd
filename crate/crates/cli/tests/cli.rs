use std::process::{Command, Output};

use serde_json::Value;

fn origami(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn origami_single_thread(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn without_timing(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("elapsed_ms");
    }
    if let Some(items) = v.as_array_mut() {
        for item in items {
            if let Some(obj) = item.as_object_mut() {
                obj.remove("elapsed_ms");
            }
        }
    }
    v
}

#[test]
fn cy3_suite_reports_eta_series() {
    let out = origami(&[
        "verify",
        "cy3",
        "--ranks",
        "12=1,13=1",
        "--qorder",
        "4",
        "--json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "cy3");
    assert_eq!(v["ranks"], "12=1,13=1");
    assert_eq!(v["checks"][0]["lhs"], "[1, 2, 5, 10, 20]");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = [
        "verify", "crossed", "--qorder", "3", "--seed", "11", "--json",
    ];
    let a = without_timing(json(&origami(&args)));
    let b = without_timing(json(&origami_single_thread(&args)));
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let zk = ["zk", "--ranks", "12=1,34=1", "--qorder", "3", "--json"];
    assert_eq!(origami(&zk).stdout, origami_single_thread(&zk).stdout);
}

#[test]
fn failing_suite_sets_exit_code() {
    // The crossed closed form needs the unit crossed ranks.
    let out = origami(&["verify", "crossed", "--ranks", "12=1,23=1", "--json"]);
    assert_eq!(out.status.code(), Some(10));
    let v = json(&out);
    assert_eq!(v["checks"][0]["name"], "precondition");
    assert_eq!(v["checks"][0]["pass"], false);

    let out = origami(&[
        "verify",
        "ds",
        "--ranks",
        "12=2,34=1",
        "--nmax",
        "1",
        "--trials",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(20));
    let out = origami(&[
        "verify",
        "ds",
        "--ranks",
        "12=2,34=1",
        "--nmax",
        "1",
        "--trials",
        "1",
        "--x-variant",
        "all-slots",
    ]);
    assert!(out.status.success());
}

#[test]
fn trivial_signs_run_passes() {
    let out = origami(&["verify", "signs", "--max-n", "0"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS signs"));
}

#[test]
fn rank_parse_errors_are_usage_errors() {
    for bad in ["12=1,12=2", "15=1", "12=-1"] {
        let out = origami(&["zk", "--ranks", bad]);
        assert!(!out.status.success(), "{bad}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("position"), "{bad}: {err}");
    }
}

#[test]
fn empty_ranks_give_trivial_series() {
    let out = origami(&[
        "zk", "--ranks", "", "--qorder", "3", "--trials", "1", "--json",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(
        v["coefficients"][0],
        serde_json::json!(["1", "0", "0", "0"])
    );
}

#[test]
fn dump_char_prints_text_form() {
    let out = origami(&[
        "dump-char",
        "--kind",
        "t",
        "--ranks",
        "12=1",
        "--tuple",
        "{12.1:(1)}",
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "1 * t2^{2/2} + 1 * t1^{2/2}"
    );

    let out = origami(&[
        "dump-char",
        "--kind",
        "v",
        "--ranks",
        "12=1,34=1",
        "--tuple",
        "{12.1:(2)}",
        "--json",
    ]);
    let v = json(&out);
    assert_eq!(v["rank"], 0);
    assert_eq!(v["tuple"], "{12.1:(2), 34.1:()}");
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("origami-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = origami(&[
        "verify",
        "comb",
        "--max-n",
        "3",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "comb");
    std::fs::remove_dir_all(&dir).unwrap();
}
