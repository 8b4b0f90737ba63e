#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abplates"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn bundled_polygon() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/circle256.txt")
}

/// Parses CSV output (comment line, header, rows) into column names and rows.
pub fn parse_csv(stdout: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::str::from_utf8(stdout).expect("utf-8");
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .expect("header")
        .split(',')
        .map(String::from)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

/// One numeric column from a successful CSV run.
pub fn column(args: &[&str], name: &str) -> Vec<f64> {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = parse_csv(&out.stdout);
    let j = header
        .iter()
        .position(|h| h == name)
        .expect("column present");
    rows.iter().map(|r| r[j].parse().expect("number")).collect()
}
