//! Replays the command lines in `golden/cases.toml` and compares the output
//! with the stored documents.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use zonotodd::cli::run_captured;
use zonotodd::document::ResultDocument;

#[derive(Deserialize)]
struct Case {
    name: String,
    args: Vec<String>,
    exit: i32,
}

#[derive(Deserialize)]
struct Cases {
    case: Vec<Case>,
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

#[test]
fn golden_command_lines() {
    let root = repo_root();
    std::env::set_current_dir(&root).unwrap();
    let cases: Cases = toml::from_str(&std::fs::read_to_string("golden/cases.toml").unwrap()).unwrap();
    let bless = std::env::var_os("GOLDEN_BLESS").is_some();
    let mut failures = Vec::new();
    for case in &cases.case {
        let argv = std::iter::once("zonotodd".to_string()).chain(case.args.iter().cloned());
        let (code, out, err) = run_captured(argv);
        if code != case.exit {
            failures.push(format!("{}: exit {code}, expected {} ({err})", case.name, case.exit));
            continue;
        }
        if code == 0 || code == 1 {
            let back = ResultDocument::from_json(&out).unwrap();
            assert_eq!(back.to_json(), out, "{} does not round-trip", case.name);
        } else {
            assert!(out.is_empty() && !err.is_empty(), "{}: diagnostics go to stderr", case.name);
            continue;
        }
        let path = root.join("golden/expected").join(format!("{}.json", case.name));
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &out).unwrap();
        } else {
            let expected = std::fs::read_to_string(&path)
                .unwrap_or_else(|_| panic!("missing {}", path.display()));
            if expected != out {
                failures.push(format!("{}: output differs from {}", case.name, path.display()));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn output_is_deterministic() {
    std::env::set_current_dir(repo_root()).unwrap();
    let args = ["zonotodd", "verify", "--config", "golden/configs/pentagon.toml", "--suite", "kp", "--kp-points", "5"];
    let a = run_captured(args);
    let b = run_captured(args);
    assert_eq!(a.0, 0, "{}", a.2);
    assert_eq!(a, b);
}
