use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ringel(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ringel"));
    cmd.args(args).env_remove("RINGEL_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("RINGEL_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/artifact.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Required keys, enums and per-command result keys from the shipped schema.
fn conforms(a: &Value, schema: &Value) -> Result<(), String> {
    for k in schema["required"].as_array().unwrap() {
        if a.get(k.as_str().unwrap()).is_none() {
            return Err(format!("missing {k}"));
        }
    }
    let props = &schema["properties"];
    for key in ["command", "verdict"] {
        if !props[key]["enum"].as_array().unwrap().contains(&a[key]) {
            return Err(format!("{key} = {} outside its enum", a[key]));
        }
    }
    for rule in schema["allOf"].as_array().unwrap() {
        if rule["if"]["properties"]["command"]["const"] == a["command"] {
            for k in rule["then"]["properties"]["result"]["required"].as_array().unwrap() {
                if a["result"].get(k.as_str().unwrap()).is_none() {
                    return Err(format!("result misses {k}"));
                }
            }
        }
    }
    Ok(())
}

#[test]
fn fft_at_the_stable_point() {
    let out = ringel(&["fft", "--flavor", "osp", "-m", "2", "-n", "2", "-r", "2"], None);
    assert!(out.status.success());
    let a = json(&out);
    let r = &a["result"];
    assert_eq!((r["commutant_dim"].as_u64(), r["algebra_dim"].as_u64(), r["kernel_dim"].as_u64()), (Some(3), Some(3), Some(0)));
    assert_eq!(r["verdict"], "isomorphism");
    assert_eq!(a["verdict"], "pass");
}

#[test]
fn sft_kernel() {
    let a = json(&ringel(&["sft", "--flavor", "osp", "-m", "1", "-n", "0", "-r", "2"], None));
    assert_eq!(a["result"]["kernel_dim"], 2);
    assert_eq!(a["result"]["two_sided_ideal"], true);
    assert_eq!(a["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn dims_of_brauer_three() {
    assert_eq!(json(&ringel(&["dims", "--kind", "brauer", "-r", "3"], None))["result"]["dim"], 15);
}

#[test]
fn warm_cache_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("tables");
    let (first, second) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let args = |o: &Path| {
        vec!["qh-report".to_string(), "--kind".into(), "brauer-c".into(), "-r".into(), "3".into(), "--delta".into(), "1".into(), "-o".into(), o.display().to_string()]
    };
    for o in [&first, &second] {
        let a: Vec<String> = args(o);
        let out = ringel(&a.iter().map(String::as_str).collect::<Vec<_>>(), Some(&cache));
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    let a: Value = serde_json::from_slice(&std::fs::read(&first).unwrap()).unwrap();
    assert_eq!(a["result"]["simple_count"], 4);
}

#[test]
fn cache_dir_flag_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = ringel(&["coend", "--flavor", "osp", "-m", "1", "-r", "2", "--cache-dir", dir.path().to_str().unwrap()], None);
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn exit_codes() {
    let fail = ringel(&["envelope", "--flavor", "pe", "-n", "2", "-r", "2"], None);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(json(&fail)["verdict"], "fail");
    let bad = ringel(&["fft", "--flavor", "osp", "-m", "2", "-n", "2", "-r", "2", "--delta", "3"], None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("m-2n"));
    let flagged = ringel(&["qh-report", "--kind", "brauer-c", "-r", "2", "--delta", "0"], None);
    assert_eq!(flagged.status.code(), Some(0));
    assert_eq!(json(&flagged)["verdict"], "flagged");
}

#[test]
fn artifacts_follow_the_schema() {
    let schema = schema();
    let runs: [&[&str]; 8] = [
        &["dims", "--kind", "walled-c", "-r", "1", "-s", "1"],
        &["invariants", "--flavor", "gl", "-m", "1", "-n", "1", "-r", "1", "-s", "1"],
        &["double-centraliser", "--flavor", "osp", "-m", "1", "-n", "1", "-r", "2"],
        &["tilting", "--flavor", "gl", "-m", "2", "-n", "1", "-r", "1", "-s", "1"],
        &["periplectic-explore", "-n", "1", "-r", "2"],
        &["compose", "--lhs", "B1-B2, T1->B3", "--rhs", "T1-T2, B1->T3", "--delta", "-2"],
        &["--field", "p=101", "invariants", "--flavor", "osp", "-m", "1", "-n", "1", "-r", "2"],
        &["qh-report", "--kind", "walled-c", "-r", "1", "-s", "1", "--delta", "1"],
    ];
    for args in runs {
        let a = json(&ringel(args, None));
        conforms(&a, &schema).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn compose_counts_loops() {
    let a = json(&ringel(&["compose", "--lhs", "B1-B2", "--rhs", "T1-T2", "--delta", "-2"], None));
    assert_eq!(a["result"]["loops"], 1);
    assert_eq!(a["result"]["coeff"], "-2");
    let pe = json(&ringel(&["compose", "--lhs", "B1-B2", "--rhs", "T1-T2", "--flavor", "pe"], None));
    assert_eq!(pe["result"]["coeff"], "0");
}

#[test]
fn tables_are_rendered_from_json() {
    let out = ringel(&["sft", "--flavor", "osp", "-m", "1", "-r", "2", "--format", "table"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("result.kernel_dim") && l.ends_with(" 2")));
}
