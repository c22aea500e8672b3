//! End-to-end runs of the `usmod` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn usmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_usmod"))
        .args(args)
        .env_remove("USMOD_CAPS")
        .output()
        .unwrap()
}

fn usmod_with_caps(caps: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_usmod"))
        .args(args)
        .env("USMOD_CAPS", caps)
        .output()
        .unwrap()
}

fn example(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_passes_on_the_examples() {
    for f in ["exp1.usm", "envelope.usm", "injective.usm"] {
        let out = usmod(&["check", &example(f)]);
        assert_eq!(out.status.code(), Some(0), "{f}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let out = usmod(&["check", "--json", &example("exp1.usm")]);
    let v = json(&out);
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let failing = write(dir.path(), "fail.usm", "ring R = zmod 6\nmodule M over R = regular\nsub K of M = gens {2}\nassert essential(K)\n");
    assert_eq!(usmod(&["check", failing.to_str().unwrap()]).status.code(), Some(1));
    let broken = write(dir.path(), "broken.usm", "ring R = zmod\n");
    let out = usmod(&["check", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let missing = dir.path().join("missing.usm");
    assert_eq!(usmod(&["check", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn envelope_certificate_fields() {
    let out = usmod(&["envelope", &example("envelope.usm"), "--map", "i"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let keys = ["\"candidate_E\"", "\"certificate_tier\"", "\"essential_verdict\"", "\"witnesses\"", "\"catalogue_size\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    let v = json(&out);
    assert_eq!(v["verdict"], "envelope");
    assert_eq!(v["certificate_tier"], "injective-baer");
    assert_eq!(v["essential_verdict"]["verdict"], true);

    // constructing an envelope of 2ℤ6 from scratch
    let out = usmod(&["envelope", &example("envelope.usm"), "--module", "KM"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "envelope");
}

#[test]
fn envelope_rejects_a_non_essential_inclusion() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "t.usm",
        "ring R = zmod 6\nmset S over R = closure {4}\nmodule M over R = regular\nsub T of M = gens {3}\nmodule TM = sub T\nhom j : TM -> M = inclusion\n",
    );
    let out = usmod(&["envelope", f.to_str().unwrap(), "--map", "j"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "not-envelope");
    assert!(v["essential_verdict"]["counterexample_L"].is_array());
}

#[test]
fn injective_tiers() {
    let f = example("injective.usm");
    let out = usmod(&["injective", &f, "--tier", "refute"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(v["witness_replays"], true);
    assert_eq!(v["witness"]["kind"], "extension");

    let out = usmod(&["injective", &example("envelope.usm"), "--tier", "certify", "--module", "M"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "u-S-injective-certified");
    assert_eq!(v["certificate"], "injective-baer");

    let out = usmod(&["injective", &example("envelope.usm"), "--tier", "bounded", "--module", "M"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "bounded-pass");

    assert_eq!(usmod(&["injective", &f, "--tier", "maybe"]).status.code(), Some(2));
}

#[test]
fn search_claims() {
    let out = usmod(&["search", "--claim", "u-S-essential-not-essential", "--max-ring", "6", "--max-module", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
    assert!(v["minimized"].is_object());

    let out = usmod(&["search", "--claim", "essential-not-us-essential", "--max-ring", "8", "--max-module", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["witnesses"].as_array().unwrap().is_empty());
    assert_eq!(v["complete"], true);

    for claim in ["paper-law-thm-prop3", "law-thm-prop7"] {
        let out = usmod(&["search", "--claim", claim, "--count", "30"]);
        assert_eq!(out.status.code(), Some(0), "{claim}");
        assert!(json(&out)["witnesses"].as_array().unwrap().is_empty());
    }
    assert_eq!(usmod(&["search", "--claim", "no-such-claim"]).status.code(), Some(2));
}

#[test]
fn laws_reports_in_every_format() {
    let dir = tempfile::tempdir().unwrap();
    for (format, probe) in [("json", "\"violated\": 0"), ("junit-xml", "<testsuite"), ("markdown", "| law |")] {
        let path = dir.path().join(format!("report.{format}"));
        let out = usmod(&[
            "laws", "--count", "12", "--seed", "3", "--report", path.to_str().unwrap(), "--format", format,
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains(probe), "{format}: {text}");
    }
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v["tool"], "usmod");
    assert_eq!(v["seed"], 3);
    assert!(v["caps"]["max_ring"].is_number());
    assert!(v["tallies"].as_array().unwrap().iter().all(|t| t["violated"] == 0));
    let row = &v["results"][0];
    for k in ["instance", "law", "verdict", "method", "witness_s", "counterexample_L", "enumeration_complete"] {
        assert!(row.get(k).is_some(), "missing {k}");
    }
}

#[test]
fn laws_single_law_is_deterministic() {
    let run = || {
        let out = usmod(&["laws", "--law", "thm-prop7", "--count", "20", "--seed", "8"]);
        assert_eq!(out.status.code(), Some(0));
        String::from_utf8(out.stdout).unwrap()
    };
    let a = run();
    assert_eq!(a, run());
    assert!(a.contains("thm-prop7"));
}

#[test]
fn laws_unwritable_report_is_an_io_error() {
    let out = usmod(&["laws", "--count", "2", "--report", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_from_the_environment() {
    let out = usmod_with_caps("ring=8", &["laws", "--count", "2"]);
    assert_eq!(out.status.code(), Some(2), "bounds above caps are a config error");
    let out = usmod_with_caps("ring=8,module=16", &["laws", "--count", "4", "--max-ring", "8", "--max-module", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let out = usmod_with_caps("ring=lots", &["check", &example("exp1.usm")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("USMOD_CAPS"));
}

#[test]
fn format_requires_report() {
    assert_eq!(usmod(&["laws", "--format", "json"]).status.code(), Some(2));
}
