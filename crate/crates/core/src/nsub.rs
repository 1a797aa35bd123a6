//! A 2-group given by generator tables: elements are pairs `(ε, u)` with `ε` the
//! coefficient of the central involution `k` and `u` a coordinate vector over F2,
//! multiplied through the commutator form of the tables.
//!
//! Normal form: `(ε, u) = k^ε · Π γ_i^{u_i}` with the product taken in basis order,
//! so `(ε, u)(ε', u') = (ε + ε' + c(u, u'), u + u')` where
//! `c(u, u') = Σ_{i>j} u_i u'_j B(i, j)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;

use crate::coxeter::CoxeterGraph;
use crate::data::{self, content_lines, DataError, DataFile};
use crate::words::{Alphabet, Word, WordError};

#[derive(Debug, Error)]
pub enum NsubError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("{file} line {line}: {msg}")]
    Format { file: String, line: usize, msg: String },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cannot parse `{text}`: {msg}")]
    Expr { text: String, msg: String },
    #[error("elimination of `{label}` disagrees with the commutator table against {against:?}")]
    Inconsistent { label: String, against: Vec<String> },
    #[error(transparent)]
    Word(#[from] WordError),
}

pub const TABLE_FILES: &[&str] = &[
    "nsub/t1.txt",
    "nsub/t2.txt",
    "nsub/t3.txt",
    "nsub/t4.txt",
    "nsub/t5.txt",
    "nsub/errata.txt",
    "nsub/dihedral.txt",
    "nsub/identities.txt",
];

/// A tabulated auxiliary conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TValue {
    pub name: String,
    /// The conjugate it stands for, e.g. `ac_fa^a'`.
    pub conjugate: String,
    pub tokens: Vec<String>,
    /// Extra factor `k` from an erratum.
    pub k_flip: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub kind: String,
    pub target: String,
    pub change: String,
    pub evidence: String,
}

/// The orders-of-products table, rows by columns; `None` where not tabulated.
#[derive(Clone, Debug, Default)]
pub struct ProductOrders {
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<Option<u32>>)>,
}

impl ProductOrders {
    pub fn get(&self, row: &str, col: &str) -> Option<u32> {
        let c = self.columns.iter().position(|x| x == col)?;
        self.rows.iter().find(|(r, _)| r == row).and_then(|(_, v)| v[c])
    }
}

/// Transcribed tables, optionally with errata applied.
#[derive(Clone, Debug)]
pub struct Tables {
    /// Generators acting on N, in column order.
    pub columns: Vec<String>,
    /// The 24 listed generators of N: action-table rows in file order.
    pub labels: Vec<String>,
    /// `cells[label][column]`: tokens of the conjugate `label^column`.
    pub cells: Vec<Vec<Vec<String>>>,
    /// Tabulated commutator cells `(row, column) -> is k`, by label index.
    pub comm: BTreeMap<(usize, usize), bool>,
    pub tvalues: Vec<TValue>,
    pub dihedral: Vec<(String, String)>,
    pub identities: Vec<(String, String, String)>,
    pub errata: Vec<Erratum>,
    pub errata_applied: bool,
    pub products: ProductOrders,
    pub sources: Vec<DataFile>,
}

fn split_cells(line: &str) -> Vec<&str> {
    line.split('|').map(str::trim).collect()
}

struct Ctx<'a> {
    file: &'a str,
}

impl Ctx<'_> {
    fn err(&self, line: usize, msg: impl Into<String>) -> NsubError {
        NsubError::Format { file: self.file.to_string(), line, msg: msg.into() }
    }
}

type Rows = (Vec<String>, Vec<(usize, String, Vec<String>)>);

fn parse_grid(file: &DataFile) -> Result<Rows, NsubError> {
    let cx = Ctx { file: &file.path };
    let mut columns = None;
    let mut rows = vec![];
    for (ln, line) in content_lines(&file.text) {
        if let Some(c) = line.strip_prefix("columns:") {
            columns = Some(c.split_whitespace().map(String::from).collect());
            continue;
        }
        let parts = split_cells(line);
        let (head, rest) = parts.split_first().ok_or_else(|| cx.err(ln, "empty row"))?;
        rows.push((ln, head.to_string(), rest.iter().map(|s| s.to_string()).collect()));
    }
    let columns = columns.ok_or_else(|| cx.err(0, "missing `columns:` line"))?;
    Ok((columns, rows))
}

impl Tables {
    /// Load the shipped tables; with `errata`, apply the corrections file.
    pub fn load(errata: bool) -> Result<Self, NsubError> {
        let files: Vec<DataFile> = TABLE_FILES.iter().map(|p| data::load(p)).collect::<Result<_, _>>()?;
        let by = |p: &str| files.iter().find(|f| f.path == p).unwrap();
        let mut t = Tables::parse(
            by("nsub/t1.txt"),
            by("nsub/t2.txt"),
            by("nsub/t3.txt"),
            by("nsub/t4.txt"),
            by("nsub/t5.txt"),
            by("nsub/errata.txt"),
            by("nsub/dihedral.txt"),
            by("nsub/identities.txt"),
        )?;
        t.sources = files;
        if errata {
            t.apply_errata()?;
        }
        Ok(t)
    }

    #[allow(clippy::too_many_arguments)]
    fn parse(
        t1: &DataFile,
        t2: &DataFile,
        t3: &DataFile,
        t4: &DataFile,
        t5: &DataFile,
        errata: &DataFile,
        dihedral: &DataFile,
        identities: &DataFile,
    ) -> Result<Self, NsubError> {
        let (columns, mut rows) = parse_grid(t2)?;
        let (cols3, rows3) = parse_grid(t3)?;
        if cols3 != columns {
            return Err(Ctx { file: &t3.path }.err(0, "columns differ from the first action table"));
        }
        rows.extend(rows3);
        let mut labels = vec![];
        let mut cells = vec![];
        for (ln, head, rest) in rows {
            if rest.len() != columns.len() {
                return Err(Ctx { file: &t2.path }.err(ln, format!("row `{head}` has {} cells", rest.len())));
            }
            labels.push(head);
            cells.push(rest.iter().map(|c| c.split_whitespace().map(String::from).collect()).collect());
        }
        let index = |l: &str| labels.iter().position(|x| x == l);

        let (ccols, crows) = parse_grid(t4)?;
        let cx = Ctx { file: &t4.path };
        let mut comm = BTreeMap::new();
        for (ln, head, rest) in crows {
            let r = index(&head).ok_or_else(|| cx.err(ln, format!("unknown row `{head}`")))?;
            let joined = rest.join(" ");
            let vals: Vec<&str> = joined.split_whitespace().collect();
            if vals.len() != ccols.len() {
                return Err(cx.err(ln, format!("row `{head}` has {} cells", vals.len())));
            }
            for (c, v) in ccols.iter().zip(&vals) {
                let ci = index(c).ok_or_else(|| cx.err(ln, format!("unknown column `{c}`")))?;
                let k = match *v {
                    "k" => true,
                    "." | "1" => false,
                    _ => return Err(cx.err(ln, format!("cell `{v}` is neither k nor ."))),
                };
                comm.insert((r, ci), k);
            }
        }

        let cx = Ctx { file: &t5.path };
        let mut tvalues = vec![];
        for (ln, line) in content_lines(&t5.text) {
            let p = split_cells(line);
            let [name, conj, value] = p[..] else { return Err(cx.err(ln, "expected `name | conjugate | value`")) };
            tvalues.push(TValue {
                name: name.to_string(),
                conjugate: conj.to_string(),
                tokens: value.split_whitespace().map(String::from).collect(),
                k_flip: false,
            });
        }

        let cx = Ctx { file: &errata.path };
        let mut errs = vec![];
        for (ln, line) in content_lines(&errata.text) {
            let p = split_cells(line);
            let [kind, target, change, evidence] = p[..] else {
                return Err(cx.err(ln, "expected `kind | target | change | evidence`"));
            };
            errs.push(Erratum {
                kind: kind.into(),
                target: target.into(),
                change: change.into(),
                evidence: evidence.into(),
            });
        }

        let cx = Ctx { file: &dihedral.path };
        let mut pairs = vec![];
        for (ln, line) in content_lines(&dihedral.text) {
            let p = split_cells(line);
            let [l, r] = p[..] else { return Err(cx.err(ln, "expected `left | right`")) };
            pairs.push((l.to_string(), r.to_string()));
        }

        let cx = Ctx { file: &identities.path };
        let mut ids = vec![];
        for (ln, line) in content_lines(&identities.text) {
            let p = split_cells(line);
            let [name, eq] = p[..] else { return Err(cx.err(ln, "expected `name | lhs = rhs`")) };
            let (l, r) = eq.split_once('=').ok_or_else(|| cx.err(ln, "missing `=`"))?;
            ids.push((name.to_string(), l.trim().to_string(), r.trim().to_string()));
        }

        let (pcols, prows) = parse_grid(t1)?;
        let cx = Ctx { file: &t1.path };
        let mut products = ProductOrders { columns: pcols.clone(), rows: vec![] };
        for (ln, head, rest) in prows {
            let vals: Vec<Option<u32>> = rest
                .join(" ")
                .split_whitespace()
                .map(|s| if s == "." { Ok(None) } else { s.parse().map(Some) })
                .collect::<Result<_, _>>()
                .map_err(|_| cx.err(ln, "bad order"))?;
            if vals.len() != pcols.len() {
                return Err(cx.err(ln, format!("row `{head}` has {} cells", vals.len())));
            }
            products.rows.push((head, vals));
        }

        Ok(Tables {
            columns,
            labels,
            cells,
            comm,
            tvalues,
            dihedral: pairs,
            identities: ids,
            errata: errs,
            errata_applied: false,
            products,
            sources: vec![],
        })
    }

    pub fn label_index(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    fn apply_errata(&mut self) -> Result<(), NsubError> {
        let bad = |e: &Erratum, msg: &str| NsubError::Format {
            file: "nsub/errata.txt".into(),
            line: 0,
            msg: format!("{} {}: {msg}", e.kind, e.target),
        };
        for e in self.errata.clone() {
            match e.kind.as_str() {
                "comm" => {
                    let t: Vec<&str> = e.target.split_whitespace().collect();
                    let [x, y] = t[..] else { return Err(bad(&e, "target must be two labels")) };
                    let (i, j) = (
                        self.label_index(x).ok_or_else(|| bad(&e, "unknown label"))?,
                        self.label_index(y).ok_or_else(|| bad(&e, "unknown label"))?,
                    );
                    let v = e.change == "k";
                    for key in [(i, j), (j, i)] {
                        if let Some(c) = self.comm.get_mut(&key) {
                            *c = v;
                        }
                    }
                }
                "value" => {
                    if e.change != "+k" {
                        return Err(bad(&e, "only `+k` value changes are supported"));
                    }
                    let t = self.tvalues.iter_mut().find(|t| t.name == e.target).ok_or_else(|| bad(&e, "unknown t-value"))?;
                    t.k_flip = !t.k_flip;
                }
                "pair" => {
                    let (p, side) = e.target.split_once('.').ok_or_else(|| bad(&e, "target must be pair.side"))?;
                    let p: usize = p.parse().map_err(|_| bad(&e, "bad pair number"))?;
                    let pair = self.dihedral.get_mut(p.wrapping_sub(1)).ok_or_else(|| bad(&e, "no such pair"))?;
                    match side {
                        "1" => pair.0 = e.change.clone(),
                        "2" => pair.1 = e.change.clone(),
                        _ => return Err(bad(&e, "side must be 1 or 2")),
                    }
                }
                _ => return Err(bad(&e, "unknown kind")),
            }
        }
        self.errata_applied = true;
        Ok(())
    }

    /// Commutator cells tabulated in both orientations with different values.
    pub fn asymmetries(&self) -> Vec<(String, String)> {
        self.comm
            .iter()
            .filter(|(&(i, j), &v)| i < j && self.comm.get(&(j, i)).is_some_and(|&w| w != v))
            .map(|(&(i, j), _)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    /// Symmetric commutator form over all labels: `k` if either orientation says so.
    fn full_form(&self) -> Vec<u32> {
        let mut b = vec![0u32; self.labels.len()];
        for (&(i, j), &v) in &self.comm {
            if v && i != j {
                b[i] |= 1 << j;
                b[j] |= 1 << i;
            }
        }
        b
    }

    /// Overwrite a commutator cell (both orientations where tabulated).
    pub fn set_comm(&mut self, x: &str, y: &str, k: bool) -> Result<(), NsubError> {
        let i = self.label_index(x).ok_or_else(|| NsubError::UnknownLabel(x.into()))?;
        let j = self.label_index(y).ok_or_else(|| NsubError::UnknownLabel(y.into()))?;
        self.comm.insert((i, j), k);
        if self.comm.contains_key(&(j, i)) {
            self.comm.insert((j, i), k);
        }
        Ok(())
    }

    /// Combined checksum of the table files.
    pub fn checksums(&self) -> Vec<(String, String)> {
        self.sources.iter().map(|f| (f.path.clone(), f.sha256.clone())).collect()
    }
}

/// Which relation set the group is built under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelSet {
    Rel1,
    Rel2,
    Rel3,
}

impl RelSet {
    pub fn name(self) -> &'static str {
        match self {
            RelSet::Rel1 => "rel1",
            RelSet::Rel2 => "rel2",
            RelSet::Rel3 => "rel3",
        }
    }
}

impl std::str::FromStr for RelSet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rel1" => Ok(RelSet::Rel1),
            "rel2" => Ok(RelSet::Rel2),
            "rel3" => Ok(RelSet::Rel3),
            _ => Err(format!("unknown relation set `{s}` (expected rel1, rel2 or rel3)")),
        }
    }
}

/// `product == k^k_side`, solved for `target`.
struct Elimination {
    target: &'static str,
    product: &'static str,
    k_side: bool,
}

const COMMON: [Elimination; 2] = [
    Elimination { target: "bb", product: "ab ad af bb bd bf", k_side: false },
    Elimination { target: "bc'", product: "aa' bc' bd bf", k_side: false },
];

/// Under rel1 the central elements z and ẑ become 1 and k.
const REL1: [Elimination; 2] = [
    Elimination { target: "aa'", product: "aa' ab ac'", k_side: false },
    Elimination { target: "ba'", product: "ac' ad af ba'", k_side: true },
];

/// Words for the central elements z and ẑ.
pub const Z_WORD: &str = "aa' ab ac'";
pub const ZHAT_WORD: &str = "ac' ad af ba'";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NElement {
    pub k: bool,
    pub u: u32,
}

#[derive(Clone, Debug)]
pub struct NGroup {
    pub variant: RelSet,
    tables: Tables,
    /// Label index of each basis coordinate.
    basis: Vec<usize>,
    /// Value of each of the 24 labels.
    gens: Vec<NElement>,
    /// Commutator form on the basis, as row masks.
    form: Vec<u32>,
    /// `lower[i]`: the `j < i` with `B(i, j) = 1`.
    lower: Vec<u32>,
    /// `action[y][i]`: image of basis coordinate `i` under column `y`.
    action: Vec<Vec<NElement>>,
    y_alphabet: Alphabet,
}

fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

impl NGroup {
    pub fn build(tables: &Tables, variant: RelSet) -> Result<Self, NsubError> {
        let elim: Vec<&Elimination> = match variant {
            RelSet::Rel1 => REL1.iter().chain(COMMON.iter()).collect(),
            RelSet::Rel2 | RelSet::Rel3 => COMMON.iter().collect(),
        };
        let n = tables.labels.len();
        let full = tables.full_form();
        let targets: Vec<usize> = elim
            .iter()
            .map(|e| tables.label_index(e.target).ok_or_else(|| NsubError::UnknownLabel(e.target.into())))
            .collect::<Result<_, _>>()?;
        let basis: Vec<usize> = (0..n).filter(|i| !targets.contains(i)).collect();
        let m = basis.len();
        let mut form = vec![0u32; m];
        for (a, &i) in basis.iter().enumerate() {
            for (b, &j) in basis.iter().enumerate() {
                if full[i] >> j & 1 == 1 {
                    form[a] |= 1 << b;
                }
            }
        }
        let lower = form.iter().enumerate().map(|(i, &r)| r & ((1u32 << i) - 1)).collect();
        let y_alphabet = Alphabet::involutive(&tables.columns)?;
        let mut g = NGroup {
            variant,
            tables: tables.clone(),
            basis: basis.clone(),
            gens: vec![NElement::default(); n],
            form,
            lower,
            action: vec![],
            y_alphabet,
        };
        let mut known = vec![false; n];
        for (c, &i) in basis.iter().enumerate() {
            g.gens[i] = NElement { k: false, u: 1 << c };
            known[i] = true;
        }
        for (e, &t) in elim.iter().zip(&targets) {
            let toks: Vec<&str> = e.product.split_whitespace().collect();
            let pos = toks.iter().position(|&x| x == e.target).expect("target occurs in its relation");
            let mut pre = g.identity();
            let mut post = g.identity();
            for (idx, tok) in toks.iter().enumerate() {
                if idx == pos {
                    continue;
                }
                let li = tables.label_index(tok).ok_or_else(|| NsubError::UnknownLabel(tok.to_string()))?;
                assert!(known[li], "elimination order");
                if idx < pos {
                    pre = g.mul(pre, g.gens[li]);
                } else {
                    post = g.mul(post, g.gens[li]);
                }
            }
            let mut x = g.mul(g.inv(pre), g.inv(post));
            x.k ^= e.k_side;
            g.gens[t] = x;
            known[t] = true;
        }
        // Eliminated labels must have the commutators the table gives them.
        for &t in &targets {
            let against: Vec<String> = basis
                .iter()
                .filter(|&&j| {
                    let c = g.commutator(g.gens[t], g.gens[j]);
                    c != if full[t] >> j & 1 == 1 { g.k() } else { g.identity() }
                })
                .map(|&j| tables.labels[j].clone())
                .collect();
            if !against.is_empty() {
                return Err(NsubError::Inconsistent { label: tables.labels[t].clone(), against });
            }
        }
        let mut action = vec![];
        for y in 0..tables.columns.len() {
            let imgs = basis.iter().map(|&i| g.eval_tokens(&tables.cells[i][y])).collect::<Result<Vec<_>, _>>()?;
            action.push(imgs);
        }
        g.action = action;
        Ok(g)
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    /// Number of basis coordinates.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_labels(&self) -> Vec<&str> {
        self.basis.iter().map(|&i| self.tables.labels[i].as_str()).collect()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(1u32) << (1 + self.rank())
    }

    pub fn identity(&self) -> NElement {
        NElement::default()
    }

    pub fn k(&self) -> NElement {
        NElement { k: true, u: 0 }
    }

    pub fn gen(&self, label: &str) -> Option<NElement> {
        self.tables.label_index(label).map(|i| self.gens[i])
    }

    pub fn y_alphabet(&self) -> &Alphabet {
        &self.y_alphabet
    }

    #[inline]
    fn cocycle(&self, u: u32, v: u32) -> bool {
        let mut c = false;
        let mut bits = u;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            c ^= parity(self.lower[i] & v);
        }
        c
    }

    pub fn mul(&self, x: NElement, y: NElement) -> NElement {
        NElement { k: x.k ^ y.k ^ self.cocycle(x.u, y.u), u: x.u ^ y.u }
    }

    pub fn square(&self, x: NElement) -> NElement {
        self.mul(x, x)
    }

    /// `x⁻¹ = x · x²`, since squares are central of order at most 2.
    pub fn inv(&self, x: NElement) -> NElement {
        self.mul(x, self.square(x))
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: NElement, y: NElement) -> NElement {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// The form `B(u, v)` on coordinate vectors.
    pub fn form(&self, u: u32, v: u32) -> bool {
        let mut c = false;
        let mut bits = u;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            c ^= parity(self.form[i] & v);
        }
        c
    }

    pub fn is_central(&self, x: NElement) -> bool {
        (0..self.rank()).all(|i| !self.form(x.u, 1 << i))
    }

    /// Basis of the radical of the form.
    pub fn radical(&self) -> Vec<u32> {
        // Solve B u = 0 over F2: B is symmetric, so u ⟂ every basis vector.
        let m = self.rank();
        let mut rows: Vec<u32> = self.form.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..m {
            let Some(p) = (r..m).find(|&i| rows[i] >> c & 1 == 1) else { continue };
            rows.swap(r, p);
            for i in 0..m {
                if i != r && rows[i] >> c & 1 == 1 {
                    rows[i] ^= rows[r];
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut u = 1u32 << f;
                for (row, &pc) in pivots.iter().enumerate() {
                    if rows[row] >> f & 1 == 1 {
                        u |= 1 << pc;
                    }
                }
                u
            })
            .collect()
    }

    pub fn center(&self) -> Vec<NElement> {
        let rad = self.radical();
        let mut out = vec![];
        for mask in 0u32..(1 << rad.len()) {
            let u = rad.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |a, (_, &v)| a ^ v);
            out.push(NElement { k: false, u });
            out.push(NElement { k: true, u });
        }
        out.sort();
        out
    }

    /// Subgroup generated by all commutators of basis elements.
    pub fn derived(&self) -> Vec<NElement> {
        let m = self.rank();
        let mut set = BTreeSet::from([self.identity()]);
        for i in 0..m {
            for j in 0..m {
                let c = self.commutator(NElement { k: false, u: 1 << i }, NElement { k: false, u: 1 << j });
                set.insert(c);
            }
        }
        // Commutators land in ⟨k⟩, so the set is already closed.
        set.into_iter().collect()
    }

    pub fn column(&self, y: &str) -> Option<usize> {
        self.tables.columns.iter().position(|c| c == y)
    }

    /// Image of `x` under generator column `y`.
    pub fn act(&self, y: usize, x: NElement) -> NElement {
        let mut r = NElement { k: x.k, u: 0 };
        let mut bits = x.u;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            r = self.mul(r, self.action[y][i]);
        }
        r
    }

    /// Image under the composite action of a word over the column alphabet, left to right.
    pub fn act_word(&self, w: &Word, x: NElement) -> NElement {
        w.gens().fold(x, |acc, y| self.act(y, acc))
    }

    /// Basis labels not fixed by the composite action of `w`.
    pub fn moved_by(&self, w: &Word) -> Vec<String> {
        (0..self.rank())
            .filter(|&i| {
                let e = NElement { k: false, u: 1 << i };
                self.act_word(w, e) != e
            })
            .map(|i| self.tables.labels[self.basis[i]].clone())
            .collect()
    }

    pub fn verify_relator_action(&self, w: &Word) -> bool {
        self.moved_by(w).is_empty()
    }

    fn tvalue(&self, name: &str) -> Option<&TValue> {
        self.tables.tvalues.iter().find(|t| t.name == name)
    }

    fn eval_token(&self, tok: &str) -> Result<NElement, NsubError> {
        match tok {
            "k" => Ok(self.k()),
            "1" => Ok(self.identity()),
            _ => {
                if let Some(t) = self.tvalue(tok) {
                    let mut x = self.eval_tokens(&t.tokens)?;
                    x.k ^= t.k_flip;
                    return Ok(x);
                }
                self.gen(tok).ok_or_else(|| NsubError::UnknownLabel(tok.to_string()))
            }
        }
    }

    fn eval_tokens<S: AsRef<str>>(&self, toks: &[S]) -> Result<NElement, NsubError> {
        toks.iter().try_fold(self.identity(), |acc, t| Ok(self.mul(acc, self.eval_token(t.as_ref())?)))
    }

    /// Evaluate an expression: products of labels, `k`, `1`, t-values, brackets,
    /// commutators `[x,y]` and images `x^y`, `x^{word}`.
    pub fn eval(&self, text: &str) -> Result<NElement, NsubError> {
        let chars: Vec<char> = text.chars().collect();
        let mut p = ExprParser { g: self, s: &chars, pos: 0, text };
        let x = p.product()?;
        p.skip_ws();
        if p.pos != chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(x)
    }

    /// Labels in normal form, e.g. `k ab bd`.
    pub fn format(&self, x: NElement) -> String {
        let mut parts = vec![];
        if x.k {
            parts.push("k".to_string());
        }
        for i in 0..self.rank() {
            if x.u >> i & 1 == 1 {
                parts.push(self.tables.labels[self.basis[i]].clone());
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Relators acting on N: pair relators of the column generators, their squares and
    /// the hexagonal word. Returned as `(text, word)`.
    pub fn relators(&self) -> Result<Vec<(String, Word)>, NsubError> {
        let a = &self.y_alphabet;
        let graph = CoxeterGraph::preset("Q221").expect("preset");
        let mut out = vec![];
        let names = a.names();
        for (i, x) in names.iter().enumerate() {
            for y in &names[i + 1..] {
                let m = if graph.adjacent(x, y) { 3 } else { 2 };
                let text = format!("({x}{y})^{m}");
                out.push((text.clone(), a.parse(&text)?));
            }
        }
        for x in names {
            // Squares reduce to the empty word; keep the letters.
            let g = a.position(x).expect("label");
            let w = Word::from_letters(vec![crate::words::Letter::new(g, false); 2]);
            out.push((format!("{x}^2"), w));
        }
        let v = "(adbecf)^4";
        out.push((v.to_string(), a.parse(v)?));
        Ok(out)
    }
}

struct ExprParser<'a> {
    g: &'a NGroup,
    s: &'a [char],
    pos: usize,
    text: &'a str,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> NsubError {
        NsubError::Expr { text: self.text.to_string(), msg: format!("{msg} at {}", self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<NElement, NsubError> {
        let mut acc = self.g.identity();
        while let Some(c) = self.peek() {
            if matches!(c, ')' | ']' | ',') {
                break;
            }
            let f = self.factor()?;
            acc = self.g.mul(acc, f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NElement, NsubError> {
        let mut x = self.atom()?;
        while self.s.get(self.pos) == Some(&'^') {
            self.pos += 1;
            let w = self.exponent()?;
            x = self.g.act_word(&w, x);
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<NElement, NsubError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.product()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(x)
            }
            Some('[') => {
                self.pos += 1;
                let x = self.product()?;
                if self.peek() != Some(',') {
                    return Err(self.err("missing `,`"));
                }
                self.pos += 1;
                let y = self.product()?;
                if self.peek() != Some(']') {
                    return Err(self.err("missing `]`"));
                }
                self.pos += 1;
                Ok(self.g.commutator(x, y))
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || matches!(self.s[self.pos], '_' | '\'')) {
                    self.pos += 1;
                }
                let tok: String = self.s[start..self.pos].iter().collect();
                self.g.eval_token(&tok)
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    fn exponent(&mut self) -> Result<Word, NsubError> {
        let a = self.g.y_alphabet();
        if self.s.get(self.pos) == Some(&'{') {
            let mut depth = 0;
            let start = self.pos + 1;
            while self.pos < self.s.len() {
                match self.s[self.pos] {
                    '{' => depth += 1,
                    '}' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                self.pos += 1;
            }
            if depth != 0 {
                return Err(self.err("unbalanced `{`"));
            }
            let inner: String = self.s[start..self.pos].iter().collect();
            self.pos += 1;
            return Ok(a.parse(&inner)?);
        }
        let start = self.pos;
        if !self.s.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.err("expected a generator after `^`"));
        }
        self.pos += 1;
        while self.s.get(self.pos) == Some(&'\'') {
            self.pos += 1;
        }
        let label: String = self.s[start..self.pos].iter().collect();
        Ok(a.letter(&label)?)
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// Consistency checks of the tables against the group they define.
pub fn verify_tables(g: &NGroup) -> Vec<Check> {
    let mut out = vec![];
    let t = g.tables();
    let asym = t.asymmetries();
    out.push(Check::new(
        "commutator table symmetric",
        asym.is_empty(),
        if asym.is_empty() {
            "all cells tabulated in both orientations agree".to_string()
        } else {
            format!("{} asymmetric cells read as k: {}", asym.len(), fmt_pairs(&asym))
        },
    ));

    // Each column acts as an automorphism of order dividing 2 that preserves the form.
    let m = g.rank();
    for (y, name) in t.columns.iter().enumerate() {
        let imgs: Vec<NElement> = (0..m).map(|i| g.act(y, NElement { k: false, u: 1 << i })).collect();
        let mut fails = vec![];
        for (i, &x) in imgs.iter().enumerate() {
            if g.square(x) != g.identity() {
                fails.push(format!("{}^2", g.basis_labels()[i]));
            }
            for (j, &xj) in imgs.iter().enumerate().skip(i + 1) {
                let want = if g.form(1 << i, 1 << j) { g.k() } else { g.identity() };
                if g.commutator(x, xj) != want {
                    fails.push(format!("[{},{}]", g.basis_labels()[i], g.basis_labels()[j]));
                }
            }
            let back = g.act(y, x);
            if back != (NElement { k: false, u: 1 << i }) {
                fails.push(format!("{} not returned", g.basis_labels()[i]));
            }
        }
        if rank_mod_k(&imgs.iter().map(|x| x.u).collect::<Vec<_>>()) != m {
            fails.push("images not independent".into());
        }
        out.push(Check::new(format!("automorphism {name}"), fails.is_empty(), summary(&fails)));
    }

    // Eliminated labels: their table cells must agree with the multiplicative extension.
    let mut fails = vec![];
    for (li, label) in t.labels.iter().enumerate() {
        if g.basis.contains(&li) {
            continue;
        }
        for (y, col) in t.columns.iter().enumerate() {
            let by_action = g.act(y, g.gens[li]);
            match g.eval_tokens(&t.cells[li][y]) {
                Ok(cell) if cell == by_action => {}
                _ => fails.push(format!("{label}^{col}")),
            }
        }
    }
    out.push(Check::new("eliminated generators consistent with action", fails.is_empty(), summary(&fails)));

    // The central words.
    for (name, word) in [("z", Z_WORD), ("zhat", ZHAT_WORD)] {
        let x = g.eval(word).expect("central words parse");
        let (pass, detail) = match g.variant {
            RelSet::Rel1 => {
                let want = if name == "z" { g.identity() } else { g.k() };
                (x == want, format!("{name} = {}", g.format(x)))
            }
            _ => (x.u != 0 && g.is_central(x), format!("{name} = {} in the radical", g.format(x))),
        };
        out.push(Check::new(format!("{name} central"), pass, detail));
    }

    for (name, lhs, rhs) in &t.identities {
        let r = g.eval(lhs).and_then(|l| Ok((l, g.eval(rhs)?)));
        let (pass, detail) = match r {
            Ok((l, r)) if l == r => (true, format!("{lhs} = {rhs}")),
            Ok((l, r)) if l.u == r.u => (false, format!("sides differ by the central factor k: lhs {}", g.format(l))),
            Ok((l, r)) => (false, format!("lhs {} != rhs {}", g.format(l), g.format(r))),
            Err(e) => (false, e.to_string()),
        };
        out.push(Check::new(format!("identity {name}"), pass, detail));
    }
    out
}

fn fmt_pairs(p: &[(String, String)]) -> String {
    p.iter().map(|(a, b)| format!("[{a},{b}]")).collect::<Vec<_>>().join(" ")
}

fn summary(fails: &[String]) -> String {
    match fails.len() {
        0 => "ok".into(),
        n if n <= 8 => fails.join(" "),
        n => format!("{} failures: {} ...", n, fails[..8].join(" ")),
    }
}

/// F2 rank of coordinate vectors.
pub fn rank_mod_k(vs: &[u32]) -> usize {
    let mut basis: Vec<u32> = vec![];
    for &v in vs {
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Result of relator-action verification.
#[derive(Clone, Debug)]
pub struct RelatorOutcome {
    pub relator: String,
    /// Basis labels the composite action moves.
    pub moved: Vec<String>,
    /// Whether every moved label is moved only by a factor of `k`.
    pub only_by_k: bool,
}

pub fn verify_relators(g: &NGroup) -> Result<Vec<RelatorOutcome>, NsubError> {
    let mut out = vec![];
    for (text, w) in g.relators()? {
        let moved = g.moved_by(&w);
        let only_by_k = moved.iter().all(|l| {
            let e = g.gen(l).unwrap();
            let img = g.act_word(&w, e);
            img.u == e.u
        });
        out.push(RelatorOutcome { relator: text, moved, only_by_k });
    }
    Ok(out)
}

/// The dihedral decomposition of the rel1 group.
#[derive(Clone, Debug)]
pub struct DihedralReport {
    pub pairs: Vec<(String, String)>,
    /// Pairs generating a dihedral group of order 8 with centre {1, k}.
    pub dihedral: Vec<bool>,
    /// F2 rank of the listed elements modulo k.
    pub span_rank: usize,
    /// Couples of distinct pairs with some non-commuting members.
    pub non_commuting_couples: usize,
    /// Whether symplectic reduction in list order succeeds.
    pub reduces: bool,
    /// Arf invariant of the squaring form, when the reduction succeeds.
    pub arf: Option<bool>,
}

/// Close `gens` under multiplication.
fn closure(g: &NGroup, gens: &[NElement]) -> BTreeSet<NElement> {
    let mut set = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn dihedral_report(g: &NGroup) -> Result<DihedralReport, NsubError> {
    let t = g.tables();
    let mut elems = vec![];
    let mut dihedral = vec![];
    for (l, r) in &t.dihedral {
        let (x, y) = (g.eval(l)?, g.eval(r)?);
        let grp = closure(g, &[x, y]);
        let centre: Vec<NElement> = grp.iter().copied().filter(|&c| grp.iter().all(|&h| g.mul(c, h) == g.mul(h, c))).collect();
        let is_d8 = grp.len() == 8
            && g.square(x) == g.identity()
            && g.square(y) == g.identity()
            && centre == vec![g.identity(), g.k()];
        dihedral.push(is_d8);
        elems.push((x, y));
    }
    let vs: Vec<u32> = elems.iter().flat_map(|&(x, y)| [x.u, y.u]).collect();
    let span_rank = rank_mod_k(&vs);
    let mut non_commuting = 0;
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let (a, b) = (elems[i], elems[j]);
            if [a.0, a.1].iter().any(|&p| [b.0, b.1].iter().any(|&q| g.form(p.u, q.u))) {
                non_commuting += 1;
            }
        }
    }
    // Symplectic reduction in list order.
    let mut work: Vec<(u32, u32)> = elems.iter().map(|&(x, y)| (x.u, y.u)).collect();
    let mut reduces = true;
    let mut arf = false;
    for i in 0..work.len() {
        let (e, f) = work[i];
        if !g.form(e, f) {
            reduces = false;
            break;
        }
        let q = |u: u32| g.square(NElement { k: false, u }).k;
        arf ^= q(e) & q(f);
        for w in work.iter_mut().skip(i + 1) {
            for v in [&mut w.0, &mut w.1] {
                let (be, bf) = (g.form(*v, e), g.form(*v, f));
                if bf {
                    *v ^= e;
                }
                if be {
                    *v ^= f;
                }
            }
        }
    }
    Ok(DihedralReport {
        pairs: t.dihedral.clone(),
        dihedral,
        span_rank,
        non_commuting_couples: non_commuting,
        reduces,
        arf: reduces.then_some(arf),
    })
}

/// Text listing of a group's basis and centre, for reports.
pub fn describe(g: &NGroup) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "variant: {}", g.variant.name());
    let _ = writeln!(s, "basis: {}", g.basis_labels().join(" "));
    let _ = writeln!(s, "order: 2^{}", 1 + g.rank());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(v: RelSet) -> NGroup {
        NGroup::build(&Tables::load(true).unwrap(), v).unwrap()
    }

    #[test]
    fn tables_have_expected_shape() {
        let t = Tables::load(false).unwrap();
        assert_eq!(t.labels.len(), 24);
        assert_eq!(t.columns.len(), 8);
        assert_eq!(t.tvalues.len(), 22);
        assert_eq!(t.dihedral.len(), 10);
        assert_eq!(t.asymmetries().len(), 2);
        assert!(Tables::load(true).unwrap().asymmetries().is_empty());
    }

    #[test]
    fn orders() {
        assert_eq!(group(RelSet::Rel3).order(), BigUint::from(1u32 << 23));
        assert_eq!(group(RelSet::Rel1).order(), BigUint::from(1u32 << 21));
        assert_eq!(group(RelSet::Rel1).rank(), 20);
    }

    #[test]
    fn commutator_examples() {
        let g = group(RelSet::Rel3);
        let c = |x: &str, y: &str| g.commutator(g.gen(x).unwrap(), g.gen(y).unwrap());
        assert_eq!(c("aa", "bb"), g.k());
        assert_eq!(c("aa'", "aa"), g.identity());
        assert_eq!(c("aa", "af"), g.k());
    }

    #[test]
    fn centre_and_derived() {
        let g = group(RelSet::Rel3);
        let z = g.center();
        assert_eq!(z.len(), 8);
        assert!(z.contains(&g.k()));
        assert!(z.contains(&g.eval(Z_WORD).unwrap()));
        assert!(z.contains(&g.eval(ZHAT_WORD).unwrap()));
        assert_eq!(g.derived(), vec![g.identity(), g.k()]);
        let g1 = group(RelSet::Rel1);
        assert_eq!(g1.center().len(), 2);
        assert!(g1.radical().is_empty());
    }

    #[test]
    fn expressions() {
        let g = group(RelSet::Rel3);
        assert_eq!(g.eval("ab ab").unwrap(), g.identity());
        assert_eq!(g.eval("[aa, bb]").unwrap(), g.k());
        assert_eq!(g.eval("aa^a'").unwrap(), g.eval("aa aa'").unwrap());
        assert_eq!(g.eval("ac_fa^{a'}").unwrap(), g.eval("t5").unwrap());
        assert!(g.eval("zz").is_err());
        assert!(g.eval("(ab").is_err());
    }

    #[test]
    fn corrupted_form_breaks_an_automorphism() {
        let mut t = Tables::load(true).unwrap();
        t.set_comm("aa", "ba", true).unwrap();
        let g = NGroup::build(&t, RelSet::Rel3).unwrap();
        let checks = verify_tables(&g);
        assert!(checks.iter().any(|c| c.name.starts_with("automorphism") && !c.pass));
    }
}
