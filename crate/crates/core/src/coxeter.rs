//! Coxeter graphs, their presentations, and the catalog of named groups and words.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::data::{self, content_lines, DataError, DataFile};
use crate::words::{Alphabet, Macros, Word, WordError};

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("unknown graph preset `{0}`")]
    UnknownPreset(String),
    #[error("edge {0}-{1} names a node that is not in the graph")]
    BadEdge(String, String),
    #[error("self-loop on {0}")]
    SelfLoop(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("{file}:{line}: {msg}")]
    Format { file: String, line: usize, msg: String },
    #[error("{file}:{line}: {source}")]
    Word { file: String, line: usize, source: WordError },
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("facts manifest: {0}")]
    Facts(String),
}

/// Simple graph on named nodes. An edge means the product of the two
/// generators has order 3, a non-edge order 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterGraph {
    nodes: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl CoxeterGraph {
    pub fn new<S: AsRef<str>>(nodes: &[S], edges: &[(&str, &str)]) -> Result<Self, CoxeterError> {
        let nodes: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        let mut g = CoxeterGraph { nodes, edges: BTreeSet::new() };
        for &(x, y) in edges {
            g.add_edge(x, y)?;
        }
        Ok(g)
    }

    fn pos(&self, x: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == x)
    }

    fn add_edge(&mut self, x: &str, y: &str) -> Result<(), CoxeterError> {
        let (i, j) = match (self.pos(x), self.pos(y)) {
            (Some(i), Some(j)) => (i, j),
            _ => return Err(CoxeterError::BadEdge(x.into(), y.into())),
        };
        if i == j {
            return Err(CoxeterError::SelfLoop(x.into()));
        }
        self.edges.insert((i.min(j), i.max(j)));
        Ok(())
    }

    /// `Q_rst`: the hexagon a-b-c-d-e-f with arms of r-1, s-1, t-1 extra nodes hung
    /// on a, c and e. Arm nodes are a', a'', ... and likewise for c and e.
    pub fn q(r: usize, s: usize, t: usize) -> Self {
        let mut nodes: Vec<String> = ["a", "b", "c", "d", "e", "f"].iter().map(|s| s.to_string()).collect();
        let mut edges = vec![];
        for i in 0..6 {
            edges.push((i, (i + 1) % 6));
        }
        for (root, len) in [(0usize, r), (2, s), (4, t)] {
            let mut prev = root;
            for k in 1..len {
                nodes.push(format!("{}{}", nodes[root], "'".repeat(k)));
                edges.push((prev, nodes.len() - 1));
                prev = nodes.len() - 1;
            }
        }
        Self::from_indices(nodes, edges)
    }

    /// `Y_pqr`: centre c with arms d, e, e', ... (p nodes), b, a, a', ... (q nodes)
    /// and c', c'', ... (r nodes).
    pub fn y(p: usize, q: usize, r: usize) -> Self {
        let d_arm: Vec<String> = std::iter::once("d".to_string()).chain(arm_labels("e", p - 1)).collect();
        let b_arm: Vec<String> = std::iter::once("b".to_string()).chain(arm_labels("a", q - 1)).collect();
        let c_arm: Vec<String> = (1..=r).map(|k| format!("c{}", "'".repeat(k))).collect();
        let mut nodes: Vec<String> = b_arm.iter().rev().cloned().collect();
        nodes.push("c".into());
        nodes.extend(d_arm.iter().cloned());
        nodes.extend(c_arm.iter().cloned());
        let at = |n: &String| nodes.iter().position(|m| m == n).unwrap();
        let centre = at(&"c".to_string());
        let mut edges = vec![];
        for arm in [&d_arm, &b_arm, &c_arm] {
            let mut prev = centre;
            for n in arm {
                edges.push((prev, at(n)));
                prev = at(n);
            }
        }
        Self::from_indices(nodes.clone(), edges)
    }

    fn from_indices(nodes: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let edges = edges.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        CoxeterGraph { nodes, edges }
    }

    /// Presets by name: `Q111`, `Q_221`, `Y321`, `Y_331`, ...
    pub fn preset(name: &str) -> Result<Self, CoxeterError> {
        let bad = || CoxeterError::UnknownPreset(name.to_string());
        let clean: String = name.chars().filter(|&c| c != '_').collect();
        let (kind, digits) = clean.split_at(1.min(clean.len()));
        let ds: Vec<usize> = digits.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
        if ds.len() != 3 {
            return Err(bad());
        }
        match kind {
            "Q" if ds.iter().all(|&d| (1..=4).contains(&d)) => Ok(Self::q(ds[0], ds[1], ds[2])),
            "Y" if ds.iter().all(|&d| (1..=3).contains(&d)) => Ok(Self::y(ds[0], ds[1], ds[2])),
            _ => Err(bad()),
        }
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, x: &str, y: &str) -> bool {
        match (self.pos(x), self.pos(y)) {
            (Some(i), Some(j)) => self.edges.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|&(i, j)| (self.nodes[i].as_str(), self.nodes[j].as_str()))
    }

    /// Pair relators `(xy)^3` / `(xy)^2` over an involutive alphabet on the nodes.
    pub fn presentation(&self) -> Presentation {
        let alphabet = Alphabet::involutive(&self.nodes).expect("graph nodes are unique");
        let relators = self.relators_over(&alphabet).expect("nodes are in the alphabet");
        Presentation { alphabet, relators }
    }

    /// The same relators, written over a larger alphabet containing the nodes.
    pub fn relators_over(&self, alphabet: &Alphabet) -> Result<Vec<Word>, CoxeterError> {
        let mut out = Vec::new();
        for i in 0..self.nodes.len() {
            for j in i + 1..self.nodes.len() {
                let m = if self.edges.contains(&(i, j)) { 3 } else { 2 };
                let x = alphabet.letter(&self.nodes[i]).map_err(|e| word_err("graph", 0, e))?;
                let y = alphabet.letter(&self.nodes[j]).map_err(|e| word_err("graph", 0, e))?;
                out.push(alphabet.power(&alphabet.product(&x, &y), m));
            }
        }
        Ok(out)
    }
}

fn arm_labels(base: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{base}{}", "'".repeat(k))).collect()
}

fn word_err(file: &str, line: usize, source: WordError) -> CoxeterError {
    CoxeterError::Word { file: file.to_string(), line, source }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| alphabet.free_reduce(&r))
            .filter(|r| !r.is_empty())
            .collect();
        Presentation { alphabet, relators }
    }

    pub fn parse_words(&self, texts: &[&str]) -> Result<Vec<Word>, WordError> {
        texts.iter().map(|t| self.alphabet.parse(t)).collect()
    }

    /// Text form understood by [`Presentation::from_text`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "generators: {}", self.alphabet.names().join(" "));
        let _ = writeln!(s, "involutive: {}", self.alphabet.is_involutive());
        for r in &self.relators {
            let _ = writeln!(s, "relator: {}", self.alphabet.format(r));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, CoxeterError> {
        Ok(parse_entry("<text>", text)?.presentation)
    }
}

/// How a fact's expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    /// Stated in the source publication.
    Published,
    /// Follows by inspection or arithmetic.
    Trivial,
    /// Computed by an independent method in this toolkit.
    Derived,
}

impl Oracle {
    pub fn as_str(self) -> &'static str {
        match self {
            Oracle::Published => "published",
            Oracle::Trivial => "trivial",
            Oracle::Derived => "derived",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Fact {
    pub id: String,
    pub entry: String,
    pub value: String,
    pub oracle: Oracle,
    pub claim: String,
}

#[derive(Deserialize)]
struct FactFile {
    fact: Vec<Fact>,
}

/// A named presentation with its distinguished words and expected facts.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Option<CoxeterGraph>,
    pub presentation: Presentation,
    /// Distinguished words in definition order.
    pub words: Vec<(String, Word)>,
    pub word_text: BTreeMap<String, String>,
    pub data_only: bool,
    pub notes: Vec<String>,
    pub extra: Vec<(String, String)>,
    pub facts: Vec<Fact>,
    pub source: Option<DataFile>,
}

impl CatalogEntry {
    pub fn word(&self, name: &str) -> Option<&Word> {
        self.words.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    pub fn fact(&self, id: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.id == id)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.presentation.alphabet
    }

    /// Parse a word over this entry's alphabet with its distinguished words as `$name`.
    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        let macros: Macros = self.words.iter().cloned().collect();
        self.alphabet().parse_with(text, &macros)
    }
}

fn parse_entry(file: &str, text: &str) -> Result<CatalogEntry, CoxeterError> {
    let fmt = |line: usize, msg: &str| CoxeterError::Format { file: file.into(), line, msg: msg.into() };
    let mut name = None;
    let mut gens: Option<Vec<String>> = None;
    let mut involutive = true;
    let mut graph: Option<CoxeterGraph> = None;
    let mut extra_graphs: Vec<CoxeterGraph> = vec![];
    let mut rel_text: Vec<(usize, String)> = vec![];
    let mut word_text: Vec<(usize, String, String)> = vec![];
    let mut data_only = false;
    let mut notes = vec![];
    let mut extra = vec![];
    for (ln, line) in content_lines(text) {
        let (key, val) = line.split_once(':').ok_or_else(|| fmt(ln, "expected `key: value`"))?;
        let val = val.trim();
        match key.trim() {
            "name" => name = Some(val.to_string()),
            "generators" => gens = Some(val.split_whitespace().map(String::from).collect()),
            "involutive" => {
                involutive = match val {
                    "true" => true,
                    "false" => false,
                    _ => return Err(fmt(ln, "involutive must be true or false")),
                }
            }
            "graph" => graph = Some(CoxeterGraph::preset(val)?),
            "edges" => {
                let nodes = gens.clone().ok_or_else(|| fmt(ln, "edges before generators"))?;
                let pairs: Vec<(&str, &str)> = val
                    .split_whitespace()
                    .map(|e| e.split_once('-').ok_or_else(|| fmt(ln, "edge must be x-y")))
                    .collect::<Result<_, _>>()?;
                extra_graphs.push(CoxeterGraph::new(&nodes, &pairs)?);
            }
            "relator" => rel_text.push((ln, val.to_string())),
            "word" => {
                let (n, w) = val.split_once('=').ok_or_else(|| fmt(ln, "expected `word: name = text`"))?;
                word_text.push((ln, n.trim().to_string(), w.trim().to_string()));
            }
            "status" => data_only = val == "data-only",
            "note" => notes.push(val.to_string()),
            k => extra.push((k.to_string(), val.to_string())),
        }
    }
    let gens = gens.ok_or_else(|| fmt(0, "missing generators line"))?;
    let alphabet = Alphabet::new(&gens, involutive).map_err(|e| word_err(file, 0, e))?;
    let mut relators = vec![];
    if let Some(g) = &graph {
        let mut a: Vec<&String> = g.nodes().iter().collect();
        let mut b: Vec<&String> = gens.iter().collect();
        a.sort();
        b.sort();
        if a != b {
            return Err(fmt(0, "graph nodes differ from generators"));
        }
        relators.extend(g.relators_over(&alphabet)?);
    }
    for g in &extra_graphs {
        relators.extend(g.relators_over(&alphabet)?);
    }
    let mut macros = Macros::new();
    let mut words = vec![];
    let mut texts = BTreeMap::new();
    for (ln, n, t) in word_text {
        let w = alphabet.parse_with(&t, &macros).map_err(|e| word_err(file, ln, e))?;
        macros.insert(n.clone(), w.clone());
        texts.insert(n.clone(), t);
        words.push((n, w));
    }
    for (ln, t) in rel_text {
        relators.push(alphabet.parse_with(&t, &macros).map_err(|e| word_err(file, ln, e))?);
    }
    let presentation = Presentation::new(alphabet, relators);
    Ok(CatalogEntry {
        name: name.unwrap_or_else(|| file.to_string()),
        graph,
        presentation,
        words,
        word_text: texts,
        data_only,
        notes,
        extra,
        facts: vec![],
        source: None,
    })
}

pub const CATALOG_NAMES: &[&str] =
    &["H36", "H36_STAR", "G63", "WE6", "WE7", "Y331A", "K", "G1", "G2", "G3", "U_HAT", "E"];

pub fn facts() -> Result<(Vec<Fact>, DataFile), CoxeterError> {
    let f = data::load("catalog/facts.toml")?;
    let parsed: FactFile = toml::from_str(&f.text).map_err(|e| CoxeterError::Facts(e.to_string()))?;
    Ok((parsed.fact, f))
}

/// Load a catalog entry by name, with its facts attached.
pub fn catalog(name: &str) -> Result<CatalogEntry, CoxeterError> {
    if !CATALOG_NAMES.contains(&name) {
        return Err(CoxeterError::UnknownEntry(name.to_string()));
    }
    let path = format!("catalog/{name}.pres");
    let file = data::load(&path)?;
    let mut entry = parse_entry(&path, &file.text)?;
    entry.facts = facts()?.0.into_iter().filter(|f| f.entry == name).collect();
    entry.source = Some(file);
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_counts() {
        let cases = [("Q222", 9, 9), ("Q111", 6, 6), ("Q221", 8, 8), ("Q211", 7, 7), ("Y321", 7, 6), ("Y331", 8, 7), ("Y221", 6, 5), ("Y333", 10, 9)];
        for (n, v, e) in cases {
            let g = CoxeterGraph::preset(n).unwrap();
            assert_eq!((g.nodes().len(), g.edge_count()), (v, e), "{n}");
        }
    }

    #[test]
    fn q222_arms() {
        let g = CoxeterGraph::preset("Q_222").unwrap();
        for (x, y) in [("a", "a'"), ("c", "c'"), ("e", "e'"), ("f", "a"), ("e", "f")] {
            assert!(g.adjacent(x, y), "{x}-{y}");
        }
        assert!(!g.adjacent("f", "a'"));
        assert!(!g.adjacent("f", "e'"));
    }

    #[test]
    fn y321_shape() {
        let g = CoxeterGraph::preset("Y321").unwrap();
        let mut nodes = g.nodes().to_vec();
        nodes.sort();
        assert_eq!(nodes, ["a", "b", "c", "c'", "d", "e", "e'"]);
        for (x, y) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("c", "c'"), ("e", "e'")] {
            assert!(g.adjacent(x, y));
        }
    }

    #[test]
    fn presentation_sizes() {
        let p = CoxeterGraph::preset("Q222").unwrap().presentation();
        assert_eq!(p.relators.len(), 36);
        let q = CoxeterGraph::preset("Q111").unwrap().presentation();
        assert_eq!(q.relators.len(), 15);
        assert_eq!(q.relators.iter().filter(|r| r.len() == 6).count(), 6);
        let single = CoxeterGraph::new(&["g"], &[]).unwrap().presentation();
        assert!(single.relators.is_empty());
    }

    #[test]
    fn bad_graphs() {
        assert!(matches!(CoxeterGraph::preset("Z111"), Err(CoxeterError::UnknownPreset(_))));
        assert!(matches!(CoxeterGraph::new(&["a"], &[("a", "b")]), Err(CoxeterError::BadEdge(..))));
        assert!(matches!(CoxeterGraph::new(&["a"], &[("a", "a")]), Err(CoxeterError::SelfLoop(_))));
    }

    #[test]
    fn text_round_trip() {
        let p = CoxeterGraph::preset("Q211").unwrap().presentation();
        let q = Presentation::from_text(&p.to_text()).unwrap();
        assert_eq!(p, q);
    }
}
