//! A 6-dimensional Hermitian space over GF(4), its unitary transvections and the
//! permutation actions used to measure the groups they generate.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::coxeter::Presentation;
use crate::data::{self, content_lines, DataError, DataFile};
use crate::gf4::{Mat6, Vec6, DIM, F4, NONZERO};
use crate::perm::Perm;
use crate::permgrp::PermGroup;
use crate::words::{Alphabet, Word};

#[derive(Debug, Error)]
pub enum UnitaryError {
    #[error("vector {0:?} is zero")]
    Zero(Vec6),
    #[error("vector {0:?} is not isotropic")]
    NotIsotropic(Vec6),
    #[error("Gram matrix is not conjugate-symmetric at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("cannot parse vector `{text}`: {msg}")]
    Vector { text: String, msg: String },
    #[error("{file} line {line}: {msg}")]
    Format { file: String, line: usize, msg: String },
    #[error("no vector assigned to generator `{0}`")]
    Unassigned(String),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Which argument of the form is conjugate-linear.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `(u, v) = Σ uᵢ conj(vⱼ) G[i][j]`.
    #[default]
    SecondConjugate,
    /// `(u, v) = Σ conj(uᵢ) vⱼ G[i][j]`.
    FirstConjugate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianSpace {
    gram: [[F4; DIM]; DIM],
    convention: Convention,
}

impl HermitianSpace {
    pub fn new(gram: [[F4; DIM]; DIM], convention: Convention) -> Result<Self, UnitaryError> {
        for i in 0..DIM {
            for j in 0..DIM {
                if gram[j][i] != gram[i][j].conj() {
                    return Err(UnitaryError::NotHermitian(i, j));
                }
            }
        }
        Ok(HermitianSpace { gram, convention })
    }

    /// Gram matrix from `(i, j, s)` entries meaning `(v_i, v_j) = s`, 1-based.
    pub fn from_pairs(pairs: &[(usize, usize, F4)], convention: Convention) -> Result<Self, UnitaryError> {
        let mut g = [[F4::ZERO; DIM]; DIM];
        for &(i, j, s) in pairs {
            g[i - 1][j - 1] = s;
            g[j - 1][i - 1] = s.conj();
        }
        HermitianSpace::new(g, convention)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(&self, convention: Convention) -> Self {
        HermitianSpace { gram: self.gram, convention }
    }

    pub fn gram(&self, i: usize, j: usize) -> F4 {
        self.gram[i][j]
    }

    pub fn herm(&self, u: Vec6, v: Vec6) -> F4 {
        let mut s = F4::ZERO;
        for i in 0..DIM {
            let ui = u.coord(i);
            if ui == F4::ZERO {
                continue;
            }
            for j in 0..DIM {
                let vj = v.coord(j);
                let term = match self.convention {
                    Convention::SecondConjugate => ui.mul(vj.conj()),
                    Convention::FirstConjugate => ui.conj().mul(vj),
                };
                s = s.add(term.mul(self.gram[i][j]));
            }
        }
        s
    }

    pub fn is_isotropic(&self, v: Vec6) -> bool {
        self.herm(v, v) == F4::ZERO
    }

    /// The linear map `x ↦ x + λ(x)·v`, with `λ(x)` the form paired with `v` on the
    /// linear side: `(x, v)` or `(v, x)` depending on the convention.
    pub fn transvection(&self, v: Vec6) -> Result<Mat6, UnitaryError> {
        if v.is_zero() {
            return Err(UnitaryError::Zero(v));
        }
        if !self.is_isotropic(v) {
            return Err(UnitaryError::NotIsotropic(v));
        }
        let rows = std::array::from_fn(|i| {
            let e = Vec6::basis(i);
            let c = match self.convention {
                Convention::SecondConjugate => self.herm(e, v),
                Convention::FirstConjugate => self.herm(v, e),
            };
            e.add(v.scale(c))
        });
        Ok(Mat6::from_rows(rows))
    }

    /// `(xM, yM) = (x, y)` on all basis pairs.
    pub fn preserves(&self, m: &Mat6) -> bool {
        (0..DIM).all(|i| {
            (0..DIM).all(|j| {
                let (x, y) = (Vec6::basis(i), Vec6::basis(j));
                self.herm(m.apply(x), m.apply(y)) == self.herm(x, y)
            })
        })
    }

    /// Canonical representatives of the isotropic projective points, sorted.
    pub fn isotropic_classes(&self) -> Vec<Vec6> {
        projective_points().iter().copied().filter(|&v| self.is_isotropic(v)).collect()
    }
}

/// Parse a vector such as `W v1 + w(v1 + v6) + v5`.
pub fn parse_vector(text: &str) -> Result<Vec6, UnitaryError> {
    let err = |msg: &str| UnitaryError::Vector { text: text.to_string(), msg: msg.to_string() };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let v = parse_sum(&chars, &mut pos).map_err(|m| err(&m))?;
    if pos != chars.len() {
        return Err(err("trailing input"));
    }
    Ok(v)
}

fn parse_sum(s: &[char], pos: &mut usize) -> Result<Vec6, String> {
    let mut acc = parse_term(s, pos)?;
    while *pos < s.len() && s[*pos] == '+' {
        *pos += 1;
        acc = acc.add(parse_term(s, pos)?);
    }
    Ok(acc)
}

fn parse_term(s: &[char], pos: &mut usize) -> Result<Vec6, String> {
    let mut scalar = F4::ONE;
    if let Some(c) = s.get(*pos).copied().and_then(F4::from_symbol) {
        scalar = c;
        *pos += 1;
    }
    match s.get(*pos) {
        Some('(') => {
            *pos += 1;
            let v = parse_sum(s, pos)?;
            if s.get(*pos) != Some(&')') {
                return Err("missing `)`".into());
            }
            *pos += 1;
            Ok(v.scale(scalar))
        }
        Some('v') => {
            *pos += 1;
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let n: usize = s[start..*pos].iter().collect::<String>().parse().map_err(|_| "expected basis index")?;
            if !(1..=DIM).contains(&n) {
                return Err(format!("basis index {n} out of range"));
            }
            Ok(Vec6::basis(n - 1).scale(scalar))
        }
        _ => Err("expected a basis vector or a bracket".into()),
    }
}

/// Shipped Gram data and generator vectors.
#[derive(Clone, Debug)]
pub struct AssignmentData {
    pub gram: Vec<(usize, usize, F4)>,
    /// Vectors as printed, in file order.
    pub printed: Vec<(String, Vec6)>,
    pub simplified: BTreeMap<String, Vec6>,
    pub corrected: BTreeMap<String, Vec6>,
    pub source: DataFile,
}

/// Which e-vector to use for the standard assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Printed,
    Corrected,
}

pub const ASSIGNMENT_FILE: &str = "unitary/assignment.txt";

impl AssignmentData {
    pub fn load() -> Result<Self, UnitaryError> {
        let f = data::load(ASSIGNMENT_FILE)?;
        Self::parse(f)
    }

    pub fn parse(source: DataFile) -> Result<Self, UnitaryError> {
        let fmt = |line: usize, msg: String| UnitaryError::Format { file: source.path.clone(), line, msg };
        let mut gram = vec![];
        let mut printed = vec![];
        let mut simplified = BTreeMap::new();
        let mut corrected = BTreeMap::new();
        for (ln, line) in content_lines(&source.text) {
            let (key, val) = line.split_once(':').ok_or_else(|| fmt(ln, "expected `key: value`".into()))?;
            let val = val.trim();
            if key == "gram" {
                let t: Vec<&str> = val.split_whitespace().collect();
                let [i, j, s] = t[..] else { return Err(fmt(ln, "gram needs `i j s`".into())) };
                let i: usize = i.parse().map_err(|_| fmt(ln, "bad index".into()))?;
                let j: usize = j.parse().map_err(|_| fmt(ln, "bad index".into()))?;
                if !(1..=DIM).contains(&i) || !(1..=DIM).contains(&j) {
                    return Err(fmt(ln, "index out of range".into()));
                }
                let s = s
                    .chars()
                    .next()
                    .and_then(F4::from_symbol)
                    .filter(|_| s.chars().count() == 1)
                    .ok_or_else(|| fmt(ln, "bad scalar".into()))?;
                gram.push((i, j, s));
                continue;
            }
            let (name, expr) = val.split_once('=').ok_or_else(|| fmt(ln, "expected `name = vector`".into()))?;
            let name = name.trim().to_string();
            let v = parse_vector(expr).map_err(|e| fmt(ln, e.to_string()))?;
            match key {
                "vector" => printed.push((name, v)),
                "simplified" => {
                    simplified.insert(name, v);
                }
                "corrected" => {
                    corrected.insert(name, v);
                }
                _ => return Err(fmt(ln, format!("unknown key `{key}`"))),
            }
        }
        Ok(AssignmentData { gram, printed, simplified, corrected, source })
    }

    pub fn space(&self, convention: Convention) -> Result<HermitianSpace, UnitaryError> {
        HermitianSpace::from_pairs(&self.gram, convention)
    }

    pub fn vector(&self, name: &str, variant: Variant) -> Option<Vec6> {
        if variant == Variant::Corrected {
            if let Some(v) = self.corrected.get(name) {
                return Some(*v);
            }
        }
        self.printed.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Transvection matrices for the generators of an alphabet.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub names: Vec<String>,
    pub vectors: Vec<Vec6>,
    pub matrices: Vec<Mat6>,
}

impl Assignment {
    /// Assign `t_v` to each label of `alphabet` using the shipped vectors.
    pub fn standard(
        space: &HermitianSpace,
        data: &AssignmentData,
        alphabet: &Alphabet,
        variant: Variant,
    ) -> Result<Self, UnitaryError> {
        let mut vectors = vec![];
        let mut matrices = vec![];
        for name in alphabet.names() {
            let v = data.vector(name, variant).ok_or_else(|| UnitaryError::Unassigned(name.clone()))?;
            matrices.push(space.transvection(v)?);
            vectors.push(v);
        }
        Ok(Assignment { names: alphabet.names().to_vec(), vectors, matrices })
    }

    pub fn from_vectors(space: &HermitianSpace, names: &[String], vectors: &[Vec6]) -> Result<Self, UnitaryError> {
        let matrices = vectors.iter().map(|&v| space.transvection(v)).collect::<Result<_, _>>()?;
        Ok(Assignment { names: names.to_vec(), vectors: vectors.to_vec(), matrices })
    }

    pub fn matrix(&self, name: &str) -> Option<&Mat6> {
        self.names.iter().position(|n| n == name).map(|i| &self.matrices[i])
    }
}

fn inverse(m: &Mat6) -> Mat6 {
    // The group is finite, so the inverse is a power.
    let mut p = *m;
    let mut prev = Mat6::identity();
    while !p.is_identity() {
        prev = p;
        p = p.mul(m);
    }
    prev
}

/// Product of generator matrices along `w`, left to right.
pub fn evaluate(w: &Word, matrices: &[Mat6]) -> Mat6 {
    w.letters().iter().fold(Mat6::identity(), |acc, l| {
        let g = &matrices[l.gen as usize];
        if l.inv {
            acc.mul(&inverse(g))
        } else {
            acc.mul(g)
        }
    })
}

/// What a relator evaluates to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Image {
    Identity,
    /// A non-identity scalar matrix.
    Scalar(F4),
    Other,
}

pub fn classify(m: &Mat6) -> Image {
    if m.is_identity() {
        Image::Identity
    } else if let Some(s) = m.as_scalar() {
        Image::Scalar(s)
    } else {
        Image::Other
    }
}

/// Relators of `p` that do not evaluate to the identity, with their images.
pub fn check_relators(p: &Presentation, matrices: &[Mat6]) -> Vec<(usize, Image)> {
    p.relators
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let img = classify(&evaluate(r, matrices));
            (img != Image::Identity).then_some((i, img))
        })
        .collect()
}

/// Isotropic projective classes `v` such that `t_v · M_g` has the required order for
/// every `(g, order)` constraint. Sorted by canonical representative.
pub fn complete_diagram(space: &HermitianSpace, matrices: &[Mat6], constraints: &[(usize, u32)]) -> Vec<Vec6> {
    space
        .isotropic_classes()
        .into_par_iter()
        .filter(|&v| {
            let t = space.transvection(v).expect("isotropic");
            constraints.iter().all(|&(g, want)| t.mul(&matrices[g]).order(64) == Some(want))
        })
        .collect()
}

/// Canonical representatives of the 1365 projective points, sorted.
pub fn projective_points() -> &'static [Vec6] {
    static PTS: std::sync::OnceLock<Vec<Vec6>> = std::sync::OnceLock::new();
    PTS.get_or_init(|| Vec6::nonzero().filter(|v| v.normalized() == *v).collect())
}

/// Action of `m` on the 4095 nonzero vectors.
pub fn vector_action(m: &Mat6) -> Perm {
    let images = Vec6::nonzero().map(|v| m.apply(v).point()).collect();
    Perm::from_images(images).expect("invertible matrix")
}

/// Action of `m` on the projective points, numbered as in [`projective_points`].
pub fn point_action(m: &Mat6) -> Perm {
    let pts = projective_points();
    let mut index = vec![u32::MAX; NONZERO + 1];
    for (i, v) in pts.iter().enumerate() {
        index[v.packed() as usize] = i as u32;
    }
    let images = pts.iter().map(|&v| index[m.apply(v).normalized().packed() as usize]).collect();
    Perm::from_images(images).expect("invertible matrix")
}

/// Order of the group generated by `gens`, through the action on nonzero vectors.
pub fn matrix_group_order(gens: &[Mat6]) -> BigUint {
    let perms = gens.iter().map(vector_action).collect();
    PermGroup::new(NONZERO, perms).expect("degrees agree").order()
}

/// Order of the image of `gens` modulo scalars.
pub fn projective_group_order(gens: &[Mat6]) -> BigUint {
    let perms = gens.iter().map(point_action).collect();
    PermGroup::new(projective_points().len(), perms).expect("degrees agree").order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vec6 {
        parse_vector(s).unwrap()
    }

    fn space() -> HermitianSpace {
        AssignmentData::load().unwrap().space(Convention::default()).unwrap()
    }

    #[test]
    fn gram_values() {
        let h = space();
        assert_eq!(h.herm(v("v5"), v("v3")), F4::W);
        assert_eq!(h.herm(v("v3"), v("v5")), F4::W2);
        assert_eq!(h.herm(v("v4+v5"), v("v4+v5")), F4::ZERO);
        for i in 1..=6 {
            let b = v(&format!("v{i}"));
            assert_eq!(h.herm(b, b), F4::ZERO);
        }
    }

    #[test]
    fn vector_syntax() {
        assert_eq!(v("W v1 + w(v1 + v6) + v5"), v("v1 + v5 + w v6"));
        assert_eq!(v("w(v1+v3)"), v("wv1 + wv3"));
        for bad in ["", "v7", "w", "v1 +", "(v1", "x1"] {
            assert!(parse_vector(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn transvection_examples() {
        let h = space();
        let t2 = h.transvection(v("v2")).unwrap();
        assert_eq!(t2.apply(v("v1")), v("v1 + v2"));
        assert_eq!(t2.apply(v("v5")), v("v5 + v2"));
        assert_eq!(h.transvection(v("w v6")).unwrap(), h.transvection(v("v6")).unwrap());
        assert!(t2.mul(&t2).is_identity());
        assert!(h.preserves(&t2));
        assert!(matches!(h.transvection(v("v1 + w v2")), Err(UnitaryError::NotIsotropic(_))));
        assert!(matches!(h.transvection(Vec6::ZERO), Err(UnitaryError::Zero(_))));
    }

    #[test]
    fn both_conventions_give_unitary_involutions() {
        for conv in [Convention::SecondConjugate, Convention::FirstConjugate] {
            let h = space().with_convention(conv);
            for u in h.isotropic_classes().into_iter().step_by(17) {
                let t = h.transvection(u).unwrap();
                assert!(t.mul(&t).is_identity());
                assert!(h.preserves(&t), "{conv:?} {u:?}");
            }
        }
    }

    #[test]
    fn small_orders() {
        let h = space();
        assert_eq!(matrix_group_order(&[Mat6::identity()]), BigUint::from(1u32));
        assert_eq!(matrix_group_order(&[h.transvection(v("v1")).unwrap()]), BigUint::from(2u32));
    }

    #[test]
    fn contradictory_constraints_are_empty() {
        let h = space();
        let m = [h.transvection(v("v1")).unwrap()];
        assert!(complete_diagram(&h, &m, &[(0, 2), (0, 3)]).is_empty());
        assert_eq!(complete_diagram(&h, &m, &[]).len(), h.isotropic_classes().len());
    }
}
