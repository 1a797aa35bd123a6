//! Access to the shipped catalog and table files.
//!
//! Files are compiled into the library. Setting `COXQUOT_DATA` to a directory makes
//! every lookup read from that directory instead, which is how edited tables are tried
//! out without rebuilding.

use std::path::PathBuf;

use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DATA_ENV: &str = "COXQUOT_DATA";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("no data file `{0}`")]
    Missing(String),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

macro_rules! embed {
    ($($p:literal),* $(,)?) => {
        &[$(($p, include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/", $p)))),*]
    };
}

static EMBEDDED: &[(&str, &str)] = embed![
    "catalog/H36.pres",
    "catalog/H36_STAR.pres",
    "catalog/G63.pres",
    "catalog/WE6.pres",
    "catalog/WE7.pres",
    "catalog/Y331A.pres",
    "catalog/K.pres",
    "catalog/G1.pres",
    "catalog/G2.pres",
    "catalog/G3.pres",
    "catalog/U_HAT.pres",
    "catalog/E.pres",
    "catalog/facts.toml",
    "nsub/t1.txt",
    "nsub/t2.txt",
    "nsub/t3.txt",
    "nsub/t4.txt",
    "nsub/t5.txt",
    "nsub/errata.txt",
    "nsub/dihedral.txt",
    "nsub/identities.txt",
    "unitary/assignment.txt",
];

/// A loaded file with its SHA-256 digest.
#[derive(Clone, Debug)]
pub struct DataFile {
    pub path: String,
    pub text: String,
    pub sha256: String,
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_ENV).map(PathBuf::from)
}

pub fn load(path: &str) -> Result<DataFile, DataError> {
    let text = match override_dir() {
        Some(dir) => {
            let full = dir.join(path);
            std::fs::read_to_string(&full)
                .map_err(|source| DataError::Io { path: full.display().to_string(), source })?
        }
        None => EMBEDDED
            .iter()
            .find(|(p, _)| *p == path)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| DataError::Missing(path.to_string()))?,
    };
    let sha256 = digest(&text);
    Ok(DataFile { path: path.to_string(), text, sha256 })
}

/// Paths of all shipped files, in a fixed order.
pub fn shipped() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(p, _)| *p)
}

/// Strip `#` comments and blank lines, keeping 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = match l.find('#') {
            Some(j) => &l[..j],
            None => l,
        };
        let l = l.trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_shipped_file_loads() {
        for p in shipped() {
            let f = load(p).unwrap();
            assert_eq!(f.sha256.len(), 64, "{p}");
        }
        assert!(matches!(load("nope.txt"), Err(DataError::Missing(_))));
    }

    #[test]
    fn comment_stripping() {
        let got: Vec<_> = content_lines("# head\n\na b # tail\n  c\n").collect();
        assert_eq!(got, vec![(3, "a b"), (4, "c")]);
    }
}
