#![allow(dead_code)]

use std::path::PathBuf;

use lpsem::interp::PartialInterpretation;
use lpsem::syntax::{ground, parse_program, GroundProgram};
use serde_json::Value;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(&format!("{name}.lp"))).unwrap()
}

pub fn expected(name: &str) -> Value {
    let text = std::fs::read_to_string(fixture_path(&format!("{name}.expected.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// The ground fixture, using the depth bound its expectations name.
pub fn fixture(name: &str) -> GroundProgram {
    let depth = expected(name).get("depth").and_then(Value::as_u64).map(|d| d as usize);
    ground(&parse_program(&fixture_text(name)).unwrap(), depth).unwrap()
}

pub fn program(text: &str) -> GroundProgram {
    GroundProgram::parse(text).unwrap()
}

/// Literals written as `"q"` or `"-q"`.
pub fn lits(g: &GroundProgram, literals: &[&str]) -> PartialInterpretation {
    let t = literals.iter().filter(|l| !l.starts_with('-')).copied();
    let f = literals.iter().filter_map(|l| l.strip_prefix('-'));
    PartialInterpretation::new(g.atoms(t), g.atoms(f)).unwrap()
}

pub fn lits_json(g: &GroundProgram, v: &Value) -> PartialInterpretation {
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    lits(g, &names)
}

pub fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

pub const FIXTURES: [&str; 8] =
    ["p_fit", "p_wf", "q_sub", "p_nat", "p_ws", "p_sfi", "p_loop", "q_self"];
