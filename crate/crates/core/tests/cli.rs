//! End-to-end checks of the command-line binary.

use std::process::{Command, Output};

use bgg_core::rootdata::{root_datum, CartanType};
use serde_json::Value;

fn bgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgg")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = bgg(&a);
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn dim_at(v: &Value, w: &[i64]) -> u64 {
    let want: Vec<Value> = w.iter().map(|&x| Value::from(x)).collect();
    v["character"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p[0].as_array().unwrap() == &want)
        .map(|p| p[1].as_u64().unwrap())
        .unwrap_or(0)
}

#[test]
fn build_a1_verma_character() {
    let v = json(&["build", "--algebra", "A1", "--verma", "0", "--depth", "3"]);
    assert_eq!(v["schema"], "1");
    for k in 0..=3 {
        assert_eq!(dim_at(&v, &[-2 * k]), 1);
    }
    assert_eq!(v["character"].as_array().unwrap().len(), 4);
}

#[test]
fn build_a2_verma_character() {
    let v = json(&["build", "--algebra", "A2", "--verma", "0,0", "--depth", "2"]);
    let kostant = root_datum(CartanType::A2).kostant_root([1, 1]);
    assert_eq!(dim_at(&v, &[-1, -1]), kostant);
    assert_eq!(kostant, 2);
}

#[test]
fn build_a1_simple_dims() {
    let v = json(&["build", "--algebra", "A1", "--simple", "2"]);
    let dims: Vec<u64> = v["character"].as_array().unwrap().iter().map(|p| p[1].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 1]);
}

#[test]
fn tensor_principal_block_flag() {
    let v = json(&["tensor", "--algebra", "A1", "--left", "verma:0", "--right", "verma:0", "--block", "0", "--depth", "6"]);
    let flag: Vec<i64> = v["blocks"][0]["verma_flag"]["flag"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["weight"][0].as_i64().unwrap())
        .collect();
    assert_eq!(flag, vec![0, -2]);
}

#[test]
fn decompose_a2_dominant_verma_has_four_summands() {
    let v = json(&["decompose", "--algebra", "A2", "--verma", "0,0"]);
    assert_eq!(v["certificate"]["valid"], true);
    assert_eq!(v["certificate"]["summands"].as_array().unwrap().len(), 4);
}

#[test]
fn decompose_a1_dual_verma_is_one_summand() {
    let v = json(&["decompose", "--algebra", "A1", "--dual", "0"]);
    let s = v["certificate"]["summands"].as_array().unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s[0]["indecomposability"]["verdict"], "indecomposable-within-window");
}

#[test]
fn exit_codes() {
    assert_eq!(bgg(&["build", "--algebra", "A3", "--verma", "0"]).status.code(), Some(2));
    assert_eq!(bgg(&["build", "--algebra", "A1", "--simple", "-1"]).status.code(), Some(2));
    assert_eq!(bgg(&["decompose", "--algebra", "A2", "--verma", "1,1", "--depth", "3"]).status.code(), Some(3));
    assert_eq!(bgg(&["verify-paper", "--only", "sl2-m0-p"]).status.code(), Some(4));
    assert_eq!(bgg(&["verify-paper", "--only", "sl3-case-4"]).status.code(), Some(0));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["decompose", "--algebra", "A1", "--projective", "-2", "--format", "json", "--emit-evidence"];
    assert_eq!(bgg(&args).stdout, bgg(&args).stdout);
    let args = ["verify-paper", "--only", "sl2-m0", "--threads", "3", "--format", "json"];
    assert_eq!(bgg(&args).stdout, bgg(&args).stdout);
}
