use coxquot::nsub::{NGroup, RelSet, Tables};
use coxquot::unitary::{projective_group_order, Assignment, AssignmentData, Convention, Variant};
use coxquot::{enumerate, Limits, PermGroup, Strategy};
use coxquot_bench::{presentation, subgroup};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn coset_enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    let h36 = presentation("H36");
    let k = presentation("K");
    let k_sub = subgroup(&k, "a b c d e f a'");
    for strategy in [Strategy::Hlt, Strategy::Felsch] {
        let limits = Limits { strategy, ..Limits::default() };
        g.bench_with_input(BenchmarkId::new("K over 7 generators", format!("{strategy:?}")), &limits, |b, l| {
            b.iter(|| enumerate(&k, &k_sub, l).unwrap().index())
        });
    }
    g.bench_function("H36 regular", |b| b.iter(|| enumerate(&h36, &[], &Limits::default()).unwrap().index()));
    g.finish();
}

fn schreier_sims(c: &mut Criterion) {
    let h36 = presentation("H36");
    let t = enumerate(&h36, &subgroup(&h36, "a b c d e"), &Limits::default()).unwrap();
    let perms = t.perm_images();
    c.bench_function("BSGS on 243 points", |b| {
        b.iter(|| PermGroup::new(t.index(), black_box(perms.clone())).unwrap().order())
    });
}

fn two_group(c: &mut Criterion) {
    let tables = Tables::load(true).unwrap();
    let g = NGroup::build(&tables, RelSet::Rel3).unwrap();
    let xs: Vec<_> = g.basis_labels().iter().filter_map(|l| g.gen(l)).collect();
    c.bench_function("N product of all basis pairs", |b| {
        b.iter(|| {
            let mut acc = g.identity();
            for &x in &xs {
                for &y in &xs {
                    acc = g.mul(acc, g.mul(black_box(x), y));
                }
            }
            acc
        })
    });
    c.bench_function("N build rel3", |b| b.iter(|| NGroup::build(&tables, RelSet::Rel3).unwrap().rank()));
}

fn unitary(c: &mut Criterion) {
    let data = AssignmentData::load().unwrap();
    let space = data.space(Convention::default()).unwrap();
    let k = presentation("K");
    let a = Assignment::standard(&space, &data, &k.alphabet, Variant::Corrected).unwrap();
    let (m, n) = (a.matrices[0], a.matrices[1]);
    c.bench_function("Mat6 product", |b| b.iter(|| black_box(m).mul(&black_box(n))));
    let mut g = c.benchmark_group("unitary");
    g.sample_size(10);
    g.bench_function("order on 1365 points", |b| b.iter(|| projective_group_order(&a.matrices)));
    g.finish();
}

criterion_group!(benches, coset_enumeration, schreier_sims, two_group, unitary);
criterion_main!(benches);
