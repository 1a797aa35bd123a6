//! Todd–Coxeter coset enumeration.
//!
//! The working table is a flat array of `u32` with 1-based coset numbers and 0 for
//! an undefined entry. Coincidences are processed with a union-find forest in which
//! the smaller coset number always survives. Closed tables are renumbered breadth
//! first from the subgroup coset, so the result does not depend on the strategy.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coxeter::Presentation;
use crate::perm::Perm;
use crate::words::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Scan every relator at each coset, filling gaps as they are met.
    Hlt,
    /// Define cosets in table order and follow each definition with deductions.
    Felsch,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(format!("unknown strategy `{s}` (expected hlt or felsch)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Limits {
    pub max_cosets: usize,
    pub strategy: Strategy,
    /// Compact the table once this fraction of allocated rows is dead.
    pub compaction_threshold: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cosets: 5_000_000, strategy: Strategy::Hlt, compaction_threshold: 0.2 }
    }
}

impl Limits {
    pub fn with_max(max_cosets: usize) -> Self {
        Limits { max_cosets, ..Limits::default() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TcError {
    #[error("coset limit of {max} exceeded ({live} live after lookahead); this does not show the index is infinite")]
    LimitExceeded { max: usize, live: usize },
    #[error("invalid limits: {0}")]
    Limits(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("table file line {line}: {msg}")]
    Format { line: usize, msg: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TcStats {
    /// Cosets defined over the whole run.
    pub defined_total: u64,
    /// Cosets removed by coincidences.
    pub collapsed_total: u64,
    /// Largest number of simultaneously live cosets.
    pub max_live: usize,
    pub compactions: u32,
    pub lookaheads: u32,
}

/// A closed, standardized coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    alphabet: Alphabet,
    /// `images[g][c]` is the coset `c·g`, 0-based.
    images: Vec<Vec<u32>>,
    pub stats: TcStats,
}

/// One failed relator trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Relator index, or `None` for a subgroup generator.
    pub relator: Option<usize>,
    pub word: usize,
    pub coset: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub traces: u64,
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Full;

struct Enumerator {
    ncols: usize,
    inv: Vec<usize>,
    table: Vec<u32>,
    parent: Vec<u32>,
    n: usize,
    live: usize,
    max: usize,
    queue: Vec<u32>,
    track: bool,
    deductions: Vec<(u32, u32)>,
    overflow: bool,
    stats: TcStats,
}

const DEDUCTION_CAP: usize = 1 << 20;

impl Enumerator {
    fn new(ncols: usize, inv: Vec<usize>, max: usize, track: bool) -> Self {
        let mut e = Enumerator {
            ncols,
            inv,
            table: vec![0; 2 * ncols],
            parent: vec![0, 1],
            n: 1,
            live: 1,
            max,
            queue: vec![],
            track,
            deductions: vec![],
            overflow: false,
            stats: TcStats { max_live: 1, ..TcStats::default() },
        };
        e.table.reserve(ncols * 1024);
        e
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn deduce(&mut self, c: u32, x: usize) {
        if self.track {
            if self.deductions.len() >= DEDUCTION_CAP {
                self.overflow = true;
                self.deductions.clear();
            } else {
                self.deductions.push((c, x as u32));
            }
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Full> {
        if self.n >= self.max {
            return Err(Full);
        }
        self.n += 1;
        let d = self.n as u32;
        self.table.extend(std::iter::repeat_n(0, self.ncols));
        self.parent.push(d);
        self.set(c, x, d);
        let ix = self.inv[x];
        self.set(d, ix, c);
        self.live += 1;
        self.stats.defined_total += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        self.deduce(c, x);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.stats.collapsed_total += 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == 0 {
                    continue;
                }
                let ix = self.inv[x];
                self.set(d, ix, 0);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != 0 {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, ix);
                    if nx != 0 {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, ix, mu);
                        self.deduce(mu, x);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Trace `w` from `alpha` in both directions. With `fill`, gaps are closed by new
    /// definitions; otherwise only a single-letter gap is closed as a deduction.
    fn scan(&mut self, alpha: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let nf = self.get(f, w[i]);
                if nf == 0 {
                    break;
                }
                f = nf;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let nb = self.get(b, self.inv[w[j as usize]]);
                if nb == 0 {
                    break;
                }
                b = nb;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, self.inv[x], f);
                self.deduce(f, x);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scan every relator at every live coset without defining anything.
    fn lookahead(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) {
        self.stats.lookaheads += 1;
        for w in subgroup {
            let one = self.rep(1);
            let _ = self.scan(one, w, false);
        }
        let mut c = 1;
        while c <= self.n as u32 {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Renumber live cosets in order. Returns the new number of the first live coset at
    /// or after `c`.
    fn compact(&mut self, c: u32) -> u32 {
        debug_assert!(self.queue.is_empty());
        self.stats.compactions += 1;
        let mut map = vec![0u32; self.n + 1];
        let mut next = 0u32;
        let mut new_c = 0u32;
        for old in 1..=self.n as u32 {
            if old == c {
                new_c = next + 1;
            }
            if self.is_live(old) {
                next += 1;
                map[old as usize] = next;
            }
        }
        if c as usize > self.n {
            new_c = next + 1;
        }
        let nc = self.ncols;
        let mut table = vec![0u32; (next as usize + 1) * nc];
        for old in 1..=self.n as u32 {
            let new = map[old as usize];
            if new == 0 {
                continue;
            }
            for x in 0..nc {
                let e = self.table[old as usize * nc + x];
                if e != 0 {
                    let r = self.rep(e);
                    table[new as usize * nc + x] = map[r as usize];
                }
            }
        }
        self.table = table;
        self.n = next as usize;
        self.parent = (0..=next).collect();
        self.deductions.clear();
        if self.track {
            self.overflow = true;
        }
        new_c
    }

    fn dead_fraction(&self) -> f64 {
        (self.n - self.live) as f64 / self.n as f64
    }

    /// Called when the table is full: lookahead then compaction.
    fn make_room(&mut self, c: u32, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<u32, TcError> {
        self.lookahead(relators, subgroup);
        let c = self.compact(c);
        if self.n >= self.max {
            return Err(TcError::LimitExceeded { max: self.max, live: self.live });
        }
        Ok(c)
    }

    fn process_deductions(&mut self, conj: &[Vec<Vec<usize>>], relators: &[Vec<usize>], subgroup: &[Vec<usize>]) {
        loop {
            if self.overflow {
                self.overflow = false;
                self.deductions.clear();
                self.lookahead(relators, subgroup);
                if !self.overflow && self.deductions.is_empty() {
                    return;
                }
                continue;
            }
            let Some((c, x)) = self.deductions.pop() else { return };
            let x = x as usize;
            if !self.is_live(c) {
                continue;
            }
            for w in &conj[x] {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, w, false);
            }
            let d = self.get(c, x);
            if d != 0 && self.is_live(d) {
                let ix = self.inv[x];
                for w in &conj[ix] {
                    if !self.is_live(d) {
                        break;
                    }
                    let _ = self.scan(d, w, false);
                }
            }
        }
    }
}

fn columns(alphabet: &Alphabet) -> (usize, Vec<usize>) {
    let n = alphabet.len();
    if alphabet.is_involutive() {
        (n, (0..n).collect())
    } else {
        (2 * n, (0..2 * n).map(|c| c ^ 1).collect())
    }
}

fn word_cols(alphabet: &Alphabet, w: &Word) -> Vec<usize> {
    w.letters()
        .iter()
        .map(|l| if alphabet.is_involutive() { l.gen as usize } else { 2 * l.gen as usize + l.inv as usize })
        .collect()
}

/// Cyclic rotations of every relator and its inverse, grouped by first column.
fn conjugates(ncols: usize, inv: &[usize], relators: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]; ncols];
    for r in relators {
        let rinv: Vec<usize> = r.iter().rev().map(|&x| inv[x]).collect();
        for w in [r, &rinv] {
            for s in 0..w.len() {
                let rot: Vec<usize> = w[s..].iter().chain(&w[..s]).copied().collect();
                let first = rot[0];
                if !out[first].contains(&rot) {
                    out[first].push(rot);
                }
            }
        }
    }
    out
}

/// Enumerate the cosets of the subgroup generated by `subgroup` in the group given by `p`.
pub fn enumerate(p: &Presentation, subgroup: &[Word], limits: &Limits) -> Result<CosetTable, TcError> {
    if limits.max_cosets < 1 {
        return Err(TcError::Limits("max_cosets must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&limits.compaction_threshold) {
        return Err(TcError::Limits("compaction threshold must lie in [0, 1]".into()));
    }
    let alphabet = &p.alphabet;
    let (ncols, inv) = columns(alphabet);
    let relators: Vec<Vec<usize>> = p.relators.iter().map(|r| word_cols(alphabet, r)).collect();
    let subgroup: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|w| word_cols(alphabet, &alphabet.free_reduce(w)))
        .filter(|w| !w.is_empty())
        .collect();
    let track = limits.strategy == Strategy::Felsch;
    let mut e = Enumerator::new(ncols, inv.clone(), limits.max_cosets, track);
    let conj = if track { conjugates(ncols, &inv, &relators) } else { vec![] };

    // Subgroup generators at the subgroup coset.
    let mut k = 0;
    while k < subgroup.len() {
        let one = e.rep(1);
        match e.scan(one, &subgroup[k], true) {
            Ok(()) => {
                k += 1;
                if track {
                    e.process_deductions(&conj, &relators, &subgroup);
                }
            }
            Err(Full) => {
                e.make_room(1, &relators, &subgroup)?;
            }
        }
    }

    let mut c: u32 = 1;
    while c as usize <= e.n {
        if e.is_live(c) {
            let step = match limits.strategy {
                Strategy::Hlt => hlt_step(&mut e, c, &relators),
                Strategy::Felsch => felsch_step(&mut e, c, &conj, &relators, &subgroup),
            };
            if step.is_err() {
                c = e.make_room(c, &relators, &subgroup)?;
                continue;
            }
        }
        c += 1;
        if e.n > 4096 && e.dead_fraction() > limits.compaction_threshold {
            c = e.compact(c);
        }
    }

    // Final pass; on a complete table this only confirms closure.
    loop {
        let before = e.stats.collapsed_total;
        let mut c = 1;
        while c as usize <= e.n {
            for r in &relators {
                if !e.is_live(c) {
                    break;
                }
                if e.scan(c, r, true).is_err() {
                    return Err(TcError::Internal("definition needed after closure".into()));
                }
            }
            c += 1;
        }
        for w in &subgroup {
            let one = e.rep(1);
            if e.scan(one, w, true).is_err() {
                return Err(TcError::Internal("definition needed after closure".into()));
            }
        }
        if e.stats.collapsed_total == before {
            break;
        }
    }
    standardize(&mut e, alphabet)
}

fn hlt_step(e: &mut Enumerator, c: u32, relators: &[Vec<usize>]) -> Result<(), Full> {
    for r in relators {
        if !e.is_live(c) {
            return Ok(());
        }
        e.scan(c, r, true)?;
    }
    for x in 0..e.ncols {
        if !e.is_live(c) {
            return Ok(());
        }
        if e.get(c, x) == 0 {
            e.define(c, x)?;
        }
    }
    Ok(())
}

fn felsch_step(
    e: &mut Enumerator,
    c: u32,
    conj: &[Vec<Vec<usize>>],
    relators: &[Vec<usize>],
    subgroup: &[Vec<usize>],
) -> Result<(), Full> {
    for x in 0..e.ncols {
        if !e.is_live(c) {
            return Ok(());
        }
        if e.get(c, x) == 0 {
            e.define(c, x)?;
            e.process_deductions(conj, relators, subgroup);
        }
    }
    Ok(())
}

fn standardize(e: &mut Enumerator, alphabet: &Alphabet) -> Result<CosetTable, TcError> {
    let start = e.rep(1);
    let mut number = vec![u32::MAX; e.n + 1];
    let mut order = vec![start];
    number[start as usize] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        i += 1;
        for x in 0..e.ncols {
            let d = e.get(c, x);
            if d == 0 {
                return Err(TcError::Internal(format!("open entry at coset {c}")));
            }
            let d = e.rep(d);
            if number[d as usize] == u32::MAX {
                number[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
    }
    if order.len() != e.live {
        return Err(TcError::Internal(format!("{} reachable cosets but {} live", order.len(), e.live)));
    }
    let ngens = alphabet.len();
    let step = if alphabet.is_involutive() { 1 } else { 2 };
    let mut images = vec![vec![0u32; order.len()]; ngens];
    for (new, &old) in order.iter().enumerate() {
        for (g, img) in images.iter_mut().enumerate() {
            let d = e.get(old, g * step);
            img[new] = number[e.rep(d) as usize];
        }
    }
    let table = CosetTable { alphabet: alphabet.clone(), images, stats: e.stats };
    Ok(table)
}

impl CosetTable {
    /// Build a table from explicit generator permutations (coset 0 is the subgroup coset).
    pub fn from_perms(alphabet: &Alphabet, perms: &[Perm]) -> Result<Self, TcError> {
        if perms.len() != alphabet.len() {
            return Err(TcError::Format { line: 0, msg: "one permutation per generator required".into() });
        }
        let n = perms.first().map_or(1, |p| p.degree());
        if perms.iter().any(|p| p.degree() != n) {
            return Err(TcError::Format { line: 0, msg: "degree mismatch".into() });
        }
        Ok(CosetTable {
            alphabet: alphabet.clone(),
            images: perms.iter().map(|p| p.images().to_vec()).collect(),
            stats: TcStats::default(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn index(&self) -> usize {
        self.images.first().map_or(1, |v| v.len())
    }

    /// `c·g` for generator `g`.
    pub fn image(&self, c: u32, g: usize) -> u32 {
        self.images[g][c as usize]
    }

    /// Generator actions as permutations of `0..index`.
    pub fn perm_images(&self) -> Vec<Perm> {
        self.images.iter().map(|v| Perm::from_images_unchecked(v.clone())).collect()
    }

    fn trace(&self, inv_images: &[Vec<u32>], c: u32, w: &Word) -> u32 {
        w.letters().iter().fold(c, |c, l| {
            if l.inv && !self.alphabet.is_involutive() {
                inv_images[l.gen as usize][c as usize]
            } else {
                self.images[l.gen as usize][c as usize]
            }
        })
    }

    /// Trace every relator from every coset and every subgroup word from coset 0.
    pub fn validate(&self, p: &Presentation, subgroup: &[Word]) -> Validation {
        let inv: Vec<Vec<u32>> = self.perm_images().iter().map(|q| q.inverse().images().to_vec()).collect();
        let mut v = Validation::default();
        for (wi, w) in subgroup.iter().enumerate() {
            v.traces += 1;
            if self.trace(&inv, 0, w) != 0 {
                v.violations.push(Violation { relator: None, word: wi, coset: 0 });
            }
        }
        for (ri, r) in p.relators.iter().enumerate() {
            for c in 0..self.index() as u32 {
                v.traces += 1;
                if self.trace(&inv, c, r) != c {
                    v.violations.push(Violation { relator: Some(ri), word: ri, coset: c });
                }
            }
        }
        v
    }

    /// Text dump: a header followed by one line per coset with 1-based images.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "generators: {}", self.alphabet.names().join(" "));
        let _ = writeln!(s, "involutive: {}", self.alphabet.is_involutive());
        let _ = writeln!(s, "index: {}", self.index());
        let _ = writeln!(s, "defined: {}", self.stats.defined_total);
        let _ = writeln!(s, "collapsed: {}", self.stats.collapsed_total);
        for c in 0..self.index() {
            let row: Vec<String> = self.images.iter().map(|v| (v[c] + 1).to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, TcError> {
        let err = |line: usize, msg: &str| TcError::Format { line, msg: msg.to_string() };
        let mut names: Option<Vec<String>> = None;
        let mut involutive = true;
        let mut index: Option<usize> = None;
        let mut stats = TcStats::default();
        let mut rows: Vec<Vec<u32>> = vec![];
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((k, v)) = line.split_once(':') {
                let v = v.trim();
                match k.trim() {
                    "generators" => names = Some(v.split_whitespace().map(String::from).collect()),
                    "involutive" => involutive = v.parse().map_err(|_| err(ln, "involutive must be true or false"))?,
                    "index" => index = Some(v.parse().map_err(|_| err(ln, "bad index"))?),
                    "defined" => stats.defined_total = v.parse().map_err(|_| err(ln, "bad count"))?,
                    "collapsed" => stats.collapsed_total = v.parse().map_err(|_| err(ln, "bad count"))?,
                    _ => return Err(err(ln, "unknown header key")),
                }
                continue;
            }
            let row: Result<Vec<u32>, _> = line.split_whitespace().map(|t| t.parse::<u32>()).collect();
            let row = row.map_err(|_| err(ln, "bad table row"))?;
            if row.contains(&0) {
                return Err(err(ln, "coset numbers are 1-based"));
            }
            rows.push(row.into_iter().map(|x| x - 1).collect());
        }
        let names = names.ok_or_else(|| err(0, "missing generators header"))?;
        let alphabet = Alphabet::new(&names, involutive).map_err(|e| err(0, &e.to_string()))?;
        if let Some(n) = index {
            if n != rows.len() {
                return Err(err(0, "index does not match row count"));
            }
        }
        let mut perms = Vec::with_capacity(names.len());
        for g in 0..names.len() {
            let col: Option<Vec<u32>> = rows.iter().map(|r| r.get(g).copied()).collect();
            let col = col.ok_or_else(|| err(0, "short table row"))?;
            perms.push(Perm::from_images(col).map_err(|e| err(0, &e.to_string()))?);
        }
        let mut t = CosetTable::from_perms(&alphabet, &perms)?;
        t.stats = stats;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGraph;

    fn both(p: &Presentation, h: &[Word]) -> usize {
        let a = enumerate(p, h, &Limits::default()).unwrap();
        let b = enumerate(p, h, &Limits { strategy: Strategy::Felsch, ..Limits::default() }).unwrap();
        assert_eq!(a.images, b.images, "standardized tables differ between strategies");
        assert!(a.validate(p, h).ok());
        a.index()
    }

    #[test]
    fn single_involution() {
        let alpha = Alphabet::involutive(&["g"]).unwrap();
        let p = Presentation::new(alpha, vec![]);
        let t = enumerate(&p, &[], &Limits::default()).unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(t.perm_images()[0].cycle_lengths(), vec![2]);
    }

    #[test]
    fn symmetric_groups() {
        // A4 Coxeter diagram is S5, A3 is S4.
        let g = CoxeterGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let p = g.presentation();
        assert_eq!(both(&p, &[]), 120);
        let h = p.parse_words(&["a", "b", "c"]).unwrap();
        assert_eq!(both(&p, &h), 5);
    }

    #[test]
    fn non_involutive_cyclic() {
        let alpha = Alphabet::new(&["x", "y"], false).unwrap();
        let rels = vec![alpha.parse("x^5").unwrap(), alpha.parse("y^-1 x").unwrap()];
        let p = Presentation::new(alpha, rels);
        assert_eq!(both(&p, &[]), 5);
    }

    #[test]
    fn weyl_e6() {
        let p = CoxeterGraph::preset("Y221").unwrap().presentation();
        assert_eq!(both(&p, &[]), 51840);
    }

    #[test]
    fn limit_is_reported() {
        let p = CoxeterGraph::preset("Y221").unwrap().presentation();
        let r = enumerate(&p, &[], &Limits::with_max(1000));
        assert!(matches!(r, Err(TcError::LimitExceeded { .. })));
    }

    #[test]
    fn text_round_trip_and_fault_injection() {
        let p = crate::coxeter::catalog("H36").unwrap().presentation;
        let h = p.parse_words(&["a", "b", "c", "d", "e"]).unwrap();
        let t = enumerate(&p, &h, &Limits::default()).unwrap();
        let back = CosetTable::from_text(&t.to_text()).unwrap();
        assert_eq!(back.images, t.images);
        let mut perms = t.perm_images();
        let mut img = perms[0].images().to_vec();
        img.swap(1, 2);
        perms[0] = Perm::from_images(img).unwrap();
        let bad = CosetTable::from_perms(&p.alphabet, &perms).unwrap();
        assert!(!bad.validate(&p, &h).ok());
    }
}
