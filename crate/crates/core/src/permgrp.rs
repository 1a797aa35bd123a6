//! Permutation groups: deterministic Schreier–Sims, word evaluation and
//! exhaustive element search.
//!
//! Points act on the right, so for a chain `G = G_1 ≥ G_2 ≥ …` every element is
//! `u_k ⋯ u_2 u_1` with `u_i` in the transversal of level `i`.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::perm::Perm;
use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermGroupError {
    #[error("generator {0} has no assigned permutation")]
    Unassigned(usize),
    #[error("degree mismatch: {0} vs {1}")]
    Degree(usize, usize),
    #[error("group order {order} exceeds the search bound {bound}")]
    TooLarge { order: BigUint, bound: u64 },
}

/// Default ceiling for [`PermGroup::exhaustive_search`].
pub const SEARCH_BOUND: u64 = 10_000_000;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Perm>,
    inv: Vec<Perm>,
    /// Orbit points in discovery order.
    orbit: Vec<u32>,
    /// For each point, the generator index that reached it, `ROOT`, or `NONE`.
    via: Vec<u32>,
    /// For generator `x`, how many orbit points have had their Schreier generator checked.
    checked: Vec<usize>,
}

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut via = vec![NONE; degree];
        via[base as usize] = ROOT;
        Level { base, gens: vec![], inv: vec![], orbit: vec![base], via, checked: vec![] }
    }

    fn add_gen(&mut self, g: Perm) {
        self.inv.push(g.inverse());
        self.gens.push(g);
        self.checked.push(0);
        // Extend the orbit without disturbing existing tree edges.
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for (x, g) in self.gens.iter().enumerate() {
                let q = g.apply(p);
                if self.via[q as usize] == NONE {
                    self.via[q as usize] = x as u32;
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }

    fn contains(&self, p: u32) -> bool {
        self.via[p as usize] != NONE
    }

    /// Replace `g` by `g · u_δ⁻¹` where `δ = base^g`, so the result fixes the base.
    fn strip(&self, g: &mut Perm) {
        let mut d = g.apply(self.base);
        while self.via[d as usize] != ROOT {
            let x = self.via[d as usize] as usize;
            g.mul_assign(&self.inv[x]);
            d = self.inv[x].apply(d);
        }
    }

    /// Transversal element mapping the base point to `p`.
    fn transversal(&self, p: u32, degree: usize) -> Perm {
        let mut path = vec![];
        let mut d = p;
        while self.via[d as usize] != ROOT {
            let x = self.via[d as usize] as usize;
            path.push(x);
            d = self.inv[x].apply(d);
        }
        let mut u = Perm::identity(degree);
        for &x in path.iter().rev() {
            u.mul_assign(&self.gens[x]);
        }
        u
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sift from `start`; returns the residue and the level where sifting stopped.
    fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, l) in self.levels.iter().enumerate().skip(start) {
            if !l.contains(g.apply(l.base)) {
                return (g, i);
            }
            l.strip(&mut g);
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && {
            let (r, _) = self.sift_from(g.clone(), 0);
            r.is_identity()
        }
    }

    fn build(degree: usize, gens: &[Perm], bound: Option<&BigUint>) -> Bsgs {
        let mut chain = Bsgs { degree, levels: vec![] };
        for g in gens {
            if g.is_identity() {
                continue;
            }
            if chain.levels.is_empty() {
                chain.levels.push(Level::new(g.first_moved().unwrap(), degree));
            }
            chain.levels[0].add_gen(g.clone());
        }
        let done = |c: &Bsgs| bound.is_some_and(|b| &c.order() == b);
        if chain.levels.is_empty() || done(&chain) {
            return chain;
        }
        let mut i = chain.levels.len() - 1;
        loop {
            match chain.next_residue(i) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = h.first_moved().unwrap();
                        chain.levels.push(Level::new(b, degree));
                    }
                    for l in i + 1..=j {
                        chain.levels[l].add_gen(h.clone());
                    }
                    if done(&chain) {
                        return chain;
                    }
                    i = j;
                }
                None => {
                    if i == 0 {
                        return chain;
                    }
                    i -= 1;
                }
            }
        }
    }

    /// Check unchecked Schreier generators of level `i`; return the first non-trivial
    /// residue with the level it fell out at.
    fn next_residue(&mut self, i: usize) -> Option<(Perm, usize)> {
        let degree = self.degree;
        let mut x = 0;
        while x < self.levels[i].gens.len() {
            while self.levels[i].checked[x] < self.levels[i].orbit.len() {
                let lvl = &self.levels[i];
                let p = lvl.orbit[lvl.checked[x]];
                let q = lvl.gens[x].apply(p);
                let trivial = lvl.via[q as usize] == x as u32 && lvl.inv[x].apply(q) == p;
                self.levels[i].checked[x] += 1;
                if trivial {
                    continue;
                }
                let lvl = &self.levels[i];
                let mut h = lvl.transversal(p, degree);
                h.mul_assign(&lvl.gens[x]);
                lvl.strip(&mut h);
                let (r, j) = self.sift_from(h, i + 1);
                if !r.is_identity() {
                    return Some((r, j));
                }
            }
            x += 1;
        }
        None
    }

    /// Explicit transversals, deepest level first.
    fn transversals(&self) -> Vec<Vec<Perm>> {
        self.levels
            .iter()
            .rev()
            .map(|l| l.orbit.iter().map(|&p| l.transversal(p, self.degree)).collect())
            .collect()
    }
}

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    bound: Option<BigUint>,
    chain: OnceLock<Bsgs>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, gens: self.gens.clone(), bound: self.bound.clone(), chain }
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, PermGroupError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermGroupError::Degree(degree, g.degree()));
        }
        Ok(PermGroup { degree, gens, bound: None, chain: OnceLock::new() })
    }

    /// Stop building the chain once the order reaches `bound`.
    ///
    /// `bound` must be a proven upper bound on the order (for example the index of
    /// the trivial subgroup in a presentation whose regular action this is); the
    /// order reported is then exact.
    pub fn with_order_bound(mut self, bound: BigUint) -> Self {
        self.bound = Some(bound);
        self.chain = OnceLock::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.chain.get_or_init(|| Bsgs::build(self.degree, &self.gens, self.bound.as_ref()))
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.bsgs().contains(g)
    }

    /// Commutes with every generator.
    pub fn is_central(&self, p: &Perm) -> bool {
        self.gens.iter().all(|g| g.commutes_with(p))
    }

    /// All elements satisfying `pred`, in a fixed order.
    pub fn exhaustive_search<F>(&self, pred: F, bound: u64) -> Result<Vec<Perm>, PermGroupError>
    where
        F: Fn(&Perm) -> bool + Sync,
    {
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(PermGroupError::TooLarge { order, bound });
        }
        let trans = self.bsgs().transversals();
        if trans.is_empty() {
            let id = Perm::identity(self.degree);
            return Ok(if pred(&id) { vec![id] } else { vec![] });
        }
        // Split off outer levels until there are enough independent prefixes.
        let mut prefixes = vec![Perm::identity(self.degree)];
        let mut depth = 0;
        while depth < trans.len() && prefixes.len() < 256 {
            prefixes = prefixes.iter().flat_map(|p| trans[depth].iter().map(move |u| p.mul(u))).collect();
            depth += 1;
        }
        let rest = &trans[depth..];
        let found: Vec<Vec<Perm>> = prefixes
            .par_iter()
            .map(|p| {
                let mut out = vec![];
                walk(p, rest, &pred, &mut out);
                out
            })
            .collect();
        Ok(found.into_iter().flatten().collect())
    }
}

fn walk<F: Fn(&Perm) -> bool>(prefix: &Perm, rest: &[Vec<Perm>], pred: &F, out: &mut Vec<Perm>) {
    match rest.split_first() {
        None => {
            if pred(prefix) {
                out.push(prefix.clone());
            }
        }
        Some((level, tail)) => {
            for u in level {
                walk(&prefix.mul(u), tail, pred, out);
            }
        }
    }
}

/// Evaluate `w` with generator `i` sent to `assignment[i]`, composing left to right.
pub fn evaluate(w: &Word, assignment: &[Perm]) -> Result<Perm, PermGroupError> {
    let degree = assignment.first().map_or(0, |p| p.degree());
    if let Some(p) = assignment.iter().find(|p| p.degree() != degree) {
        return Err(PermGroupError::Degree(degree, p.degree()));
    }
    let mut acc = Perm::identity(degree);
    for l in w.letters() {
        let g = assignment.get(l.gen as usize).ok_or(PermGroupError::Unassigned(l.gen as usize))?;
        if l.inv {
            acc.mul_assign(&g.inverse());
        } else {
            acc.mul_assign(g);
        }
    }
    Ok(acc)
}

pub fn element_order(p: &Perm) -> u64 {
    p.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<u32> = (0..n as u32).collect();
        let gens = vec![Perm::from_cycles(n, &[&[0, 1]]).unwrap(), Perm::from_cycles(n, &[&cyc]).unwrap()];
        PermGroup::new(n, gens).unwrap()
    }

    #[test]
    fn symmetric_and_trivial_orders() {
        assert_eq!(sym(5).order(), BigUint::from(120u32));
        assert_eq!(sym(9).order(), BigUint::from(362880u32));
        let t = PermGroup::new(4, vec![Perm::identity(4)]).unwrap();
        assert_eq!(t.order(), BigUint::one());
    }

    #[test]
    fn membership() {
        let n = 6;
        let even = PermGroup::new(n, vec![
            Perm::from_cycles(n, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(n, &[&[1, 2, 3, 4, 5]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(even.order(), BigUint::from(360u32));
        assert!(even.contains(&Perm::from_cycles(n, &[&[0, 1], &[2, 3]]).unwrap()));
        assert!(!even.contains(&Perm::from_cycles(n, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn bound_stops_early_with_same_order() {
        let g = sym(7).with_order_bound(BigUint::from(5040u32));
        assert_eq!(g.order(), BigUint::from(5040u32));
    }

    #[test]
    fn search_and_centre() {
        let g = sym(4);
        let all = g.exhaustive_search(|_| true, SEARCH_BOUND).unwrap();
        assert_eq!(all.len(), 24);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
        assert!(g.exhaustive_search(|_| false, SEARCH_BOUND).unwrap().is_empty());
        let central = g.exhaustive_search(|p| g.is_central(p), SEARCH_BOUND).unwrap();
        assert_eq!(central.len(), 1);
        assert!(matches!(sym(8).exhaustive_search(|_| true, 100), Err(PermGroupError::TooLarge { .. })));
    }

    #[test]
    fn evaluation() {
        let a = Alphabet::new(&["x", "y"], false).unwrap();
        let x = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let y = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let w = a.parse("x y x^-1").unwrap();
        let p = evaluate(&w, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(p, x.mul(&y).mul(&x.inverse()));
        assert_eq!(element_order(&p), 2);
        assert!(matches!(evaluate(&w, &[x]), Err(PermGroupError::Unassigned(1))));
    }
}
