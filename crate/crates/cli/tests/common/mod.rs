#![allow(dead_code)]

use std::path::{Path, PathBuf};

use serde::Deserialize;

pub const UPDATE_ENV: &str = "FLATLIE_UPDATE_GOLDEN";

#[derive(Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn input_path(name: &str) -> PathBuf {
    corpus_dir().join("inputs").join(name)
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(corpus_dir().join("cases.json")).expect("cases.json");
    serde_json::from_str(&text).expect("valid cases.json")
}

/// Runs the CLI in-process; `@name` arguments resolve to corpus inputs.
pub fn run_args(args: &[String], stdin: &[u8]) -> (i32, String, String) {
    let argv = std::iter::once("flatlie".to_string()).chain(args.iter().map(|a| match a.strip_prefix('@') {
        Some(name) => input_path(name).display().to_string(),
        None => a.clone(),
    }));
    let mut input = stdin;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = flatlie_cli::run(argv, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn run_case(case: &Case) -> (i32, String) {
    let (code, out, _) = run_args(&case.args, b"");
    (code, out)
}

pub fn expected_path(case: &Case) -> PathBuf {
    corpus_dir().join("expected").join(format!("{}.json", case.name))
}

/// Mismatches between fresh runs and the stored corpus, by case name.
/// Rewrites the stored files instead when the update variable is set.
pub fn corpus_mismatches() -> Vec<String> {
    let update = std::env::var_os(UPDATE_ENV).is_some();
    let mut bad = Vec::new();
    for case in cases() {
        let (code, out) = run_case(&case);
        let path = expected_path(&case);
        if update {
            std::fs::write(&path, &out).unwrap();
        }
        let stored = std::fs::read_to_string(&path).unwrap_or_default();
        if code != case.exit {
            bad.push(format!("{}: exit {code}, expected {}", case.name, case.exit));
        }
        if stored != out {
            bad.push(format!("{}: output differs from {}", case.name, path.display()));
        }
        let (code2, out2) = run_case(&case);
        if (code2, out2) != (code, out) {
            bad.push(format!("{}: second run differs", case.name));
        }
    }
    bad
}

/// Manifests in the corpus that do not re-emit byte-identically.
pub fn non_canonical_inputs() -> Vec<String> {
    let mut bad = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(corpus_dir().join("inputs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        if value.get("brackets").is_none() {
            continue;
        }
        match flatlie_cli::parse_manifest(&text) {
            Ok(m) if flatlie_cli::emit_manifest(&m) == text => {}
            Ok(_) => bad.push(format!("{}: not canonical", path.display())),
            Err(e) => bad.push(format!("{}: {e}", path.display())),
        }
    }
    bad
}
