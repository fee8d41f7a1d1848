use charp::chain::ChainReport;
use charp::invariants::{ChainOutcome, JumpCheck, Rational};
use charp::{Ideal, Polynomial};
use serde_json::{json, Map, Value};

/// One invocation's output. `timing_ms` is the only field that may differ
/// between identical runs.
pub struct Report {
    pub command: String,
    pub ring: String,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub witnesses: Map<String, Value>,
    pub timing_ms: f64,
    /// Human-readable summary lines.
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str, ring: String) -> Self {
        Report {
            command: command.to_string(),
            ring,
            inputs: Map::new(),
            result: Value::Null,
            witnesses: Map::new(),
            timing_ms: 0.0,
            text: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn witness(&mut self, key: &str, value: impl Into<Value>) {
        self.witnesses.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "ring": self.ring,
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": self.witnesses,
            "timing_ms": self.timing_ms,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

pub fn poly(f: &Polynomial) -> Value {
    Value::String(f.to_string())
}

/// Generators of the reduced Gröbner basis.
pub fn ideal(i: &Ideal) -> charp::Result<Value> {
    Ok(Value::Array(i.reduced_gb()?.iter().map(poly).collect()))
}

pub fn ideal_text(i: &Ideal) -> charp::Result<String> {
    Ok(i.canonical()?.to_string())
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn chain(c: &ChainReport) -> charp::Result<Value> {
    let ideals = c.ideals.iter().map(ideal).collect::<charp::Result<Vec<_>>>()?;
    Ok(json!({
        "direction": c.direction.to_string(),
        "first_index": c.first_index,
        "ideals": ideals,
        "stabilization_index": c.stabilization_index,
        "overshoot": c.overshoot,
        "verified": c.verify()?,
    }))
}

pub fn outcome(o: &ChainOutcome) -> charp::Result<Value> {
    Ok(json!({
        "stable": o.value().is_some(),
        "value": o.value().map(ideal).transpose()?,
        "chain": chain(o.chain())?,
    }))
}

pub fn jump_check(c: &JumpCheck) -> charp::Result<Value> {
    Ok(json!({
        "t": rational(&c.t),
        "jumping": c.jumping,
        "left": outcome(&c.left)?,
        "at": outcome(&c.at)?,
    }))
}
