//! Reports are compared byte for byte with the copies under `tests/golden`.
//! Set `COXQUOT_BLESS=1` to rewrite them after an intended change.

use std::fs;
use std::path::PathBuf;

use coxquot_cli::{run_all, Options};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("COXQUOT_BLESS").is_some();
    let mut diffs = vec![];
    for (name, r) in run_all(&Options::default(), true) {
        let text = match r {
            Ok(r) => r.to_text(false),
            Err(e) => panic!("{name}: {e}"),
        };
        let path = dir().join(format!("{name}.txt"));
        if bless {
            fs::write(&path, &text).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if want != text {
            let line = want.lines().zip(text.lines()).position(|(a, b)| a != b).unwrap_or(0) + 1;
            diffs.push(format!("{name} differs from line {line}"));
        }
    }
    assert!(diffs.is_empty(), "{}", diffs.join("\n"));
}
