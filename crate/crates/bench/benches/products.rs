use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tridend_core::coeff::int;
use tridend_core::omega::{builtin, check_ets, Builtin};
use tridend_core::operad::{koszul_dual, relation_space};
use tridend_core::tree::enumerate;
use tridend_core::words::words_of_length;
use tridend_core::{FreeTridend, LinComb, MatchingAlgebra, TriOp, Tridendriform, TypedWords};

fn tree_products(c: &mut Criterion) {
    let t = builtin(Builtin::Matching, 2, None, None).unwrap();
    let alg = FreeTridend::new(t).unwrap();
    let trees = enumerate(3, &["x"], 2).unwrap();
    let (l, r) = (&trees[0], &trees[trees.len() - 1]);
    let mut g = c.benchmark_group("tree_product");
    for op in TriOp::ALL {
        g.bench_function(op.name(), |b| {
            b.iter(|| alg.basis_product(op, 1, black_box(l), black_box(r)))
        });
    }
    g.finish();
}

fn word_products(c: &mut Criterion) {
    let t = builtin(Builtin::Matching, 2, None, None).unwrap();
    let words = TypedWords::new(t, MatchingAlgebra::pointwise(2, &[int(1), int(1)])).unwrap();
    let ws = words_of_length(2, 2, 4);
    let a = LinComb::basis(ws[3].clone());
    let b = LinComb::basis(ws[ws.len() - 2].clone());
    c.bench_function("word_product/circ/4x4", |bench| {
        bench.iter(|| words.product(TriOp::Circ, 0, black_box(&a), black_box(&b)))
    });
}

fn ets_check(c: &mut Criterion) {
    let aux: Vec<Vec<usize>> = (0..4)
        .map(|a| (0..4).map(|b| (a + b) % 4).collect())
        .collect();
    let t = builtin(Builtin::Family, 4, Some(&aux), None).unwrap();
    c.bench_function("check_ets/family(Z/4)", |b| {
        b.iter(|| check_ets(black_box(&t)))
    });
}

fn operad_rank(c: &mut Criterion) {
    let t = builtin(Builtin::Matching, 2, None, None).unwrap();
    let mut g = c.benchmark_group("operad");
    g.sample_size(20);
    g.bench_function("relations/matching(2)", |b| {
        b.iter(|| relation_space(black_box(&t)).rank)
    });
    g.bench_function("koszul_dual/matching(2)", |b| {
        b.iter(|| koszul_dual(black_box(&t)).space.rank)
    });
    g.finish();
}

criterion_group!(
    benches,
    tree_products,
    word_products,
    ets_check,
    operad_rank
);
criterion_main!(benches);
