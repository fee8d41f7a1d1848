#![allow(dead_code)]

use std::process::{Command, Output};

use serde_json::Value;

pub fn charp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charp")).args(args).env_remove("CHARP_Q_CAP").output().expect("binary runs")
}

pub fn json(args: &[&str]) -> (i32, Value) {
    let mut all: Vec<&str> = args.to_vec();
    all.push("--json");
    let out = charp(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}; stdout {:?}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), v)
}

/// Report with the timing field removed.
pub fn payload(args: &[&str]) -> String {
    let (_, mut v) = json(args);
    v.as_object_mut().unwrap().remove("timing_ms");
    serde_json::to_string(&v).unwrap()
}

/// One invocation per subcommand, plus the documented examples.
pub const FIXTURES: &[&[&str]] = &[
    &["gb", "--ring", "p=5;vars=x,y;order=lex", "--ideal", "y^3-1,x-y^2"],
    &["member", "--ring", "p=3;vars=x,y", "--ideal", "x^2,y", "--poly", "x^3+x*y"],
    &["intersect", "--ring", "p=2;vars=x,y", "--ideal", "x", "--ideal", "y"],
    &["bracket", "--ring", "p=3;vars=x,y", "--ideal", "x+y,x*y", "--q", "3^2"],
    &["root", "--ring", "p=2;vars=x,y", "--ideal", "x^2+y^2", "--q", "2"],
    &["nu", "--ring", "p=7;vars=x,y", "--poly", "x^2+y^3", "--emax", "2"],
    &["tau", "--ring", "p=3;vars=x,y", "--ideal", "x^2", "--t", "1/2"],
    &["fpt", "--ring", "p=7;vars=x,y", "--poly", "x^2+y^3"],
    &["jumps", "--ring", "p=3;vars=x,y", "--poly", "x^2", "--denom-bound", "6"],
    &["hsl", "--ring", "p=2;vars=x,y", "--poly", "x^2+y^3"],
    &["content", "--ring", "p=5;vars=x,u,v", "--poly", "u*x+v", "--base", "u,v", "--with", "v*x+u"],
    &["check", "--seed", "7"],
];
