//! Scenarios on the GF(4) transvection model.

use coxquot::gf4::{Mat6, Vec6, F4};
use coxquot::unitary::{
    self, check_relators, classify, complete_diagram, matrix_group_order, projective_group_order, Assignment,
    AssignmentData, Convention, HermitianSpace, Image, Variant,
};
use coxquot::{catalog, CatalogEntry};
use num_bigint::BigUint;
use rayon::prelude::*;

use super::{fact, facts_input, yes, ScenarioError};
use crate::report::Report;

fn coords(v: Vec6) -> String {
    v.coords().iter().map(|c| c.symbol().to_string()).collect::<Vec<_>>().join(",")
}

fn image_text(img: Image) -> String {
    match img {
        Image::Identity => "I".into(),
        Image::Scalar(s) => format!("{} I", s.symbol()),
        Image::Other => "not scalar".into(),
    }
}

struct Model {
    data: AssignmentData,
    space: HermitianSpace,
    entry: CatalogEntry,
}

impl Model {
    fn load(r: &mut Report) -> Result<Self, ScenarioError> {
        let data = AssignmentData::load()?;
        r.input(&data.source);
        let space = data.space(Convention::default())?;
        let entry = catalog("K")?;
        if let Some(f) = &entry.source {
            r.input(f);
        }
        Ok(Model { data, space, entry })
    }

    fn assignment(&self, space: &HermitianSpace, variant: Variant) -> Result<Assignment, ScenarioError> {
        Ok(Assignment::standard(space, &self.data, self.entry.alphabet(), variant)?)
    }

    /// Relators of the entry that do not map to the identity, as text.
    fn relator_failures(&self, mats: &[Mat6]) -> Vec<String> {
        let p = &self.entry.presentation;
        check_relators(p, mats)
            .into_iter()
            .map(|(i, img)| format!("{} -> {}", p.alphabet.format(&p.relators[i]), image_text(img)))
            .collect()
    }

    fn word(&self, name: &str, mats: &[Mat6]) -> Result<Mat6, ScenarioError> {
        let w = self.entry.word(name).ok_or_else(|| ScenarioError::Fact(format!("word {name}")))?;
        Ok(unitary::evaluate(w, mats))
    }
}

pub fn q221_matrix() -> Result<Report, ScenarioError> {
    let mut r = Report::new("q221-matrix");
    facts_input(&mut r)?;
    let m = Model::load(&mut r)?;
    let space = &m.space;

    let bad: Vec<&str> = m
        .data
        .printed
        .iter()
        .filter(|(_, v)| !space.is_isotropic(*v))
        .map(|(n, _)| n.as_str())
        .collect();
    r.check(
        "vectors.isotropic",
        bad.is_empty(),
        if bad.is_empty() { format!("all {} isotropic", m.data.printed.len()) } else { format!("not isotropic: {}", bad.join(" ")) },
        "all isotropic",
        "published",
        "every listed vector is isotropic, so each has a transvection",
    );

    let printed = m.data.vector("e", Variant::Printed);
    let simplified = m.data.simplified.get("e").copied();
    let same = printed.is_some() && printed == simplified;
    r.check(
        "e.forms",
        same,
        yes(same),
        "yes",
        "trivial",
        "the e-vector as printed and after collecting terms are the same vector",
    );

    let printed_fail = m.relator_failures(&m.assignment(space, Variant::Printed)?.matrices);
    r.note(format!("with the printed e-vector, relators off the identity: {}", printed_fail.join("; ")));
    let alt = space.with_convention(Convention::FirstConjugate);
    match m.assignment(&alt, Variant::Printed) {
        Ok(a) => r.note(format!(
            "form conjugate-linear in the first argument, printed e-vector: relators off the identity: {}",
            m.relator_failures(&a.matrices).join("; ")
        )),
        Err(e) => r.note(format!("form conjugate-linear in the first argument: {e}")),
    }

    let a = m.assignment(space, Variant::Corrected)?;
    r.value("e-vector used", coords(a.vectors[m.entry.alphabet().position("e").expect("e")]));
    let fails = m.relator_failures(&a.matrices);
    r.check(
        "relators.identity",
        fails.is_empty(),
        if fails.is_empty() { "all identity".to_string() } else { fails.join("; ") },
        "all identity",
        "published",
        "every Coxeter and hexagonal relator maps to the identity matrix",
    );
    let scalars = check_relators(&m.entry.presentation, &a.matrices).iter().all(|(_, i)| *i != Image::Other);
    r.check(
        "relators.scalar",
        scalars,
        yes(scalars),
        "yes",
        "derived",
        "every relator maps to a scalar matrix, so the projective images satisfy the presentation",
    );

    for (id, name) in [("mu_a", "mu_a"), ("mu_c", "mu_c"), ("mu_e", "mu_e"), ("z_a", "z_a"), ("z_c", "z_c"), ("z_e", "z_e")] {
        let img = classify(&m.word(name, &a.matrices)?);
        r.check(
            &format!("{id}.identity"),
            img == Image::Identity,
            image_text(img),
            "I",
            "published",
            "the word lies in the Schur multiplier or the centre of the cover and dies in the matrix group",
        );
    }

    // e° joins e alone.
    let constraints: Vec<(usize, u32)> =
        m.entry.alphabet().names().iter().enumerate().map(|(i, n)| (i, if n == "e" { 3 } else { 2 })).collect();
    let found = r.timed("completion search", || complete_diagram(space, &a.matrices, &constraints));
    r.value("completions", found.iter().map(|v| coords(*v)).collect::<Vec<_>>().join(" "));
    let f = fact("U6.e°")?;
    r.fact(&f, if found.len() == 1 { coords(found[0]) } else { format!("{} classes", found.len()) });

    let eo = m.data.vector("e°", Variant::Printed).ok_or_else(|| ScenarioError::Fact("vector e°".into()))?;
    let t_eo = space.transvection(eo)?;
    for (id, name, claim) in [
        ("e°.C_word", "e°", "C^{abedcc'a'abcde} is the transvection of the completing vector"),
        ("e°.A_word", "e°_A", "A^{cbedaa'c'cbafe} is the same transvection"),
    ] {
        let ok = m.word(name, &a.matrices)? == t_eo;
        r.check(id, ok, yes(ok), "yes", "published", claim);
    }
    let fixed = m.word("e°_A_fix", &a.matrices)? == t_eo;
    r.note(format!("A^{{cbefaa'c'cbafe}} (d -> f) gives the completing transvection: {}", yes(fixed)));

    let classes = space.isotropic_classes();
    r.fact(&fact("U6.isotropic_classes")?, classes.len());
    let bad = r.timed("3-transposition census", || three_transposition_failures(space, &classes));
    r.check(
        "transvections.3-transposition",
        bad == 0,
        format!("{bad} pairs off"),
        "0 pairs off",
        "derived",
        "for isotropic u, v the product t_u t_v has order 1, 2 or 3, and order 2 exactly when (u,v) = 0 and u, v are independent",
    );
    Ok(r)
}

fn three_transposition_failures(space: &HermitianSpace, classes: &[Vec6]) -> usize {
    let ts: Vec<Mat6> = classes.iter().map(|&v| space.transvection(v).expect("isotropic")).collect();
    (0..classes.len())
        .into_par_iter()
        .map(|i| {
            (i..classes.len())
                .filter(|&j| {
                    let o = ts[i].mul(&ts[j]).order(4);
                    let want = if i == j {
                        1
                    } else if space.herm(classes[i], classes[j]) == F4::ZERO {
                        2
                    } else {
                        3
                    };
                    o != Some(want)
                })
                .count()
        })
        .sum()
}

pub fn u6_order() -> Result<Report, ScenarioError> {
    let mut r = Report::new("u6-order");
    facts_input(&mut r)?;
    let m = Model::load(&mut r)?;
    let a = m.assignment(&m.space, Variant::Corrected)?;
    let order = r.timed("BSGS on 4095 vectors", || matrix_group_order(&a.matrices));
    r.value("order on 4095 vectors", &order);
    let f = fact("U6.order")?;
    r.fact(&f, &order);
    let expected: BigUint = f.value.parse().map_err(|_| ScenarioError::Fact(f.id.clone()))?;
    if order != expected && &order % &expected == BigUint::from(0u32) {
        r.note(format!(
            "the order is {} times the expected one: the hexagonal relator maps to a non-identity scalar, so the group contains scalars",
            &order / &expected
        ));
    }
    let proj = r.timed("BSGS on 1365 points", || projective_group_order(&a.matrices));
    r.fact(&fact("U6.projective_order")?, &proj);
    let classical = BigUint::from(2u32).pow(15) * 3u32.pow(6) * 5u32 * 7u32 * 11u32;
    r.check(
        "order.factorisation",
        classical == expected,
        &classical,
        &expected,
        "trivial",
        "2^15 3^6 5 7 11",
    );
    let one = matrix_group_order(&[Mat6::identity()]);
    let two = matrix_group_order(&[a.matrices[0]]);
    r.check(
        "order.small",
        one == BigUint::from(1u32) && two == BigUint::from(2u32),
        format!("{one}, {two}"),
        "1, 2",
        "trivial",
        "the identity generates the trivial group and one transvection a group of order 2",
    );
    Ok(r)
}
