//! Criterion 7: the CLI fixture suite, run twice, yields byte-identical
//! JSON payloads (timing excluded).

mod common;

use common::{payload, FIXTURES};

fn main() {
    let first: Vec<String> = FIXTURES.iter().map(|a| payload(a)).collect();
    let second: Vec<String> = FIXTURES.iter().map(|a| payload(a)).collect();
    let differing: Vec<&str> =
        FIXTURES.iter().zip(first.iter().zip(&second)).filter(|(_, (a, b))| a != b).map(|(f, _)| f[0]).collect();
    if differing.is_empty() {
        println!("criterion 7 CLI determinism: PASS ({} fixtures)", FIXTURES.len());
    } else {
        println!("criterion 7 CLI determinism: FAIL: payloads differ for {differing:?}");
        std::process::exit(1);
    }
}
