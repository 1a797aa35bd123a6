use std::collections::HashSet;

use coxquot::gf4::{Vec6, NONZERO};
use coxquot::nsub::{NElement, NGroup, RelSet, Tables};
use coxquot::permgrp::element_order;
use coxquot::unitary::{AssignmentData, Convention};
use coxquot::{catalog, enumerate, Alphabet, Letter, Limits, Perm, PermGroup, Strategy as TcStrategy, Word};
use proptest::prelude::*;

fn free_alphabet() -> Alphabet {
    Alphabet::new(&["x", "y", "z"], false).unwrap()
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..max)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

fn reduced(w: &Word) -> Word {
    free_alphabet().free_reduce(w)
}

proptest! {
    #[test]
    fn inverse_is_an_involution(w in word_strategy(24)) {
        let a = free_alphabet();
        prop_assert_eq!(a.inverse(&a.inverse(&w)), w.clone());
        prop_assert!(a.product(&w, &a.inverse(&w)).is_empty());
    }

    #[test]
    fn reduction_is_idempotent(w in word_strategy(24)) {
        let r = reduced(&w);
        prop_assert_eq!(reduced(&r), r.clone());
        prop_assert!(r.len() <= w.len());
    }

    #[test]
    fn conjugation_composes(x in word_strategy(8), u in word_strategy(8), v in word_strategy(8)) {
        let a = free_alphabet();
        let lhs = a.conjugate(&x, &a.product(&u, &v));
        let rhs = a.conjugate(&a.conjugate(&x, &u), &v);
        prop_assert_eq!(reduced(&lhs), reduced(&rhs));
    }

    #[test]
    fn text_round_trip(w in word_strategy(24)) {
        let a = free_alphabet();
        let r = reduced(&w);
        prop_assert_eq!(a.parse(&a.format(&r)).unwrap(), r);
    }
}

/// Closure by breadth-first multiplication, as an oracle for small groups.
fn brute_order(gens: &[Perm]) -> usize {
    let n = gens[0].degree();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([Perm::identity(n).images().to_vec()]);
    let mut frontier = vec![Perm::identity(n)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.mul(g);
            if seen.insert(q.images().to_vec()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_matches_closure_and_ignores_generator_order(
        gens in prop::collection::vec(perm_strategy(7), 1..4),
        seed in any::<u64>(),
    ) {
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        shuffled.reverse();
        let a = PermGroup::new(7, gens.clone()).unwrap().order();
        let b = PermGroup::new(7, shuffled).unwrap().order();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a, brute_order(&gens).into());
    }

    #[test]
    fn membership_agrees_with_products(gens in prop::collection::vec(perm_strategy(8), 1..3), picks in prop::collection::vec(0usize..3, 0..10)) {
        let g = PermGroup::new(8, gens.clone()).unwrap();
        let p = picks.iter().fold(Perm::identity(8), |acc, &i| acc.mul(&gens[i % gens.len()]));
        prop_assert!(g.contains(&p));
        prop_assert_eq!(element_order(&p), p.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn enumeration_does_not_depend_on_strategy(mask in 1u32..64) {
        let e = catalog("WE6").unwrap();
        let p = &e.presentation;
        let names = p.alphabet.names().to_vec();
        let sub: Vec<Word> = names
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, n)| p.alphabet.parse(n).unwrap())
            .collect();
        let hlt = enumerate(p, &sub, &Limits::default()).unwrap();
        let felsch = enumerate(p, &sub, &Limits { strategy: TcStrategy::Felsch, ..Limits::default() }).unwrap();
        prop_assert_eq!(hlt.index(), felsch.index());
        prop_assert_eq!(hlt.perm_images(), felsch.perm_images());
        prop_assert!(hlt.validate(p, &sub).ok());
        prop_assert_eq!(51840 % hlt.index(), 0);
    }
}

fn n_group() -> NGroup {
    NGroup::build(&Tables::load(true).unwrap(), RelSet::Rel3).unwrap()
}

fn n_element() -> impl Strategy<Value = NElement> {
    (any::<bool>(), 0u32..(1 << 22)).prop_map(|(k, u)| NElement { k, u })
}

proptest! {
    #[test]
    fn n_multiplication_is_associative(x in n_element(), y in n_element(), z in n_element()) {
        let g = n_group();
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
    }

    #[test]
    fn n_squares_and_commutators_are_central(x in n_element(), y in n_element()) {
        let g = n_group();
        prop_assert!(g.is_central(g.square(x)));
        prop_assert!([g.identity(), g.k()].contains(&g.commutator(x, y)));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        // (xy)² = x² y² [y, x]
        prop_assert_eq!(g.square(g.mul(x, y)), g.mul(g.mul(g.square(x), g.square(y)), g.commutator(y, x)));
    }

    #[test]
    fn n_actions_are_involutive_automorphisms(x in n_element(), y in n_element(), col in 0usize..8) {
        let g = n_group();
        prop_assert_eq!(g.act(col, g.act(col, x)), x);
        prop_assert_eq!(g.act(col, g.mul(x, y)), g.mul(g.act(col, x), g.act(col, y)));
    }

    #[test]
    fn transvections_are_three_transpositions(i in 0u32..NONZERO as u32, j in 0u32..NONZERO as u32) {
        let space = AssignmentData::load().unwrap().space(Convention::default()).unwrap();
        let (v, w) = (Vec6::from_point(i), Vec6::from_point(j));
        prop_assume!(space.is_isotropic(v) && space.is_isotropic(w));
        let (s, t) = (space.transvection(v).unwrap(), space.transvection(w).unwrap());
        let o = s.mul(&t).order(12).unwrap();
        prop_assert!(o <= 3);
    }
}

#[test]
fn basis_generators_are_involutions() {
    let g = n_group();
    for l in g.basis_labels() {
        let x = g.gen(l).unwrap();
        assert_eq!(g.square(x), g.identity(), "{l}");
    }
}
