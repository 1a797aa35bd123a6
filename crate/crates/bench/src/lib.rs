//! Fixtures shared by the benchmarks.

use coxquot::{catalog, Presentation, Word};

/// Presentation of a catalog entry. Panics on an unknown name.
pub fn presentation(name: &str) -> Presentation {
    catalog(name).expect("catalog entry").presentation
}

/// Subgroup generated by single letters, e.g. `"a b c"`.
pub fn subgroup(p: &Presentation, labels: &str) -> Vec<Word> {
    labels.split_whitespace().map(|l| p.alphabet.parse(l).expect("label")).collect()
}
