#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_timely"))
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn timely(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin()).current_dir(dir).args(args).output().expect("binary runs")
}

pub struct Case {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

pub fn cases() -> Vec<Case> {
    let text = fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt present");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            assert_eq!(parts.len(), 3, "bad case line: {line}");
            Case {
                name: parts[0].to_string(),
                exit: parts[1].parse().expect("exit code"),
                args: parts[2].split_whitespace().map(String::from).collect(),
            }
        })
        .collect()
}

/// Runs one golden case; `Err` describes the first mismatch.
pub fn check_case(case: &Case) -> Result<(), String> {
    let dir = golden_dir();
    let args: Vec<&str> = case.args.iter().map(String::as_str).collect();
    let out = timely(&dir, &args);
    let expected_out = fs::read(dir.join(format!("{}.out", case.name))).unwrap_or_default();
    let expected_err = fs::read(dir.join(format!("{}.err", case.name))).unwrap_or_default();
    if out.status.code() != Some(case.exit) {
        return Err(format!("{}: exit {:?}, expected {}", case.name, out.status.code(), case.exit));
    }
    if out.stdout != expected_out {
        return Err(format!(
            "{}: stdout differs:\n{}",
            case.name,
            String::from_utf8_lossy(&out.stdout)
        ));
    }
    if out.stderr != expected_err {
        return Err(format!(
            "{}: stderr differs:\n{}",
            case.name,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(())
}
