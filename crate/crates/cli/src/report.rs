//! Machine-readable run reports. Every integer is written as an exact JSON
//! number (arbitrary precision), keys are sorted, and nothing time-dependent
//! goes in, so the same inputs and seed give the same bytes.

use std::fmt::Display;
use std::str::FromStr;

use mubar_core::stringlink::MuBarValue;
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

/// Exact integer from anything that prints as one.
pub fn int(v: impl Display) -> Value {
    let s = v.to_string();
    Value::Number(Number::from_str(&s).unwrap_or_else(|_| panic!("not an integer: {s}")))
}

pub fn mu_bar(v: &MuBarValue) -> Value {
    json!({ "residue": int(&v.residue), "modulus": int(&v.modulus) })
}

pub fn matrix(m: &[Vec<i64>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(|&x| int(x)).collect())).collect())
}

pub struct RunReport {
    command: String,
    args: Vec<String>,
    hasher: Sha256,
    budget: Map<String, Value>,
    seed: Option<u64>,
    results: Map<String, Value>,
}

impl RunReport {
    /// `args` is the command line after the program name; it is echoed and
    /// hashed, and input files are hashed with [`RunReport::input`].
    pub fn new(command: &str, args: Vec<String>) -> Self {
        let mut hasher = Sha256::new();
        for a in &args {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        RunReport { command: command.into(), args, hasher, budget: Map::new(), seed: None, results: Map::new() }
    }

    pub fn input(&mut self, name: &str, contents: &str) {
        self.hasher.update(name.as_bytes());
        self.hasher.update([0]);
        self.hasher.update(contents.as_bytes());
        self.hasher.update([0]);
    }

    pub fn budget(&mut self, key: &str, v: Value) {
        self.budget.insert(key.into(), v);
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn result(&mut self, key: &str, v: Value) {
        self.results.insert(key.into(), v);
    }

    pub fn to_json(&self) -> String {
        let digest = format!("{:x}", self.hasher.clone().finalize());
        let v = json!({
            "command": self.command,
            "args": self.args,
            "inputs_sha256": digest,
            "budget": self.budget,
            "seed": self.seed.map(int),
            "results": self.results,
        });
        serde_json::to_string_pretty(&v).expect("json values serialize")
    }
}
