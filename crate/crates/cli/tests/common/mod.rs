use std::path::PathBuf;
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// `(file name, arguments)` pairs from the golden manifest.
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("golden manifest");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split_whitespace().map(str::to_string);
            let name = parts.next().unwrap();
            (name, parts.collect())
        })
        .collect()
}

pub fn pbwforge(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbwforge"))
        .args(args)
        .output()
        .expect("binary runs")
}
