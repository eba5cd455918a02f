use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use kacd_bench::term;
use kacd_core::semantics::{membership_dp, std_lang_equiv};
use kacd_core::{evaluate, Alphabet, Automaton, Valuation};

fn valuation(k: usize) -> Valuation {
    let a = Alphabet::latin(k);
    let words: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Valuation::new(a.clone())
        .with("x", Automaton::from_words(&a, &words))
        .unwrap()
        .with("y", Automaton::from_words(&a, &[vec![0]]).complement())
        .unwrap()
}

fn evaluation(c: &mut Criterion) {
    let t = term("!((x + !y)* ; !x) ; (y ; x + !1)*");
    let mut g = c.benchmark_group("evaluate");
    for k in [2, 4, 8] {
        let v = valuation(k);
        g.bench_with_input(BenchmarkId::from_parameter(k), &v, |b, v| b.iter(|| evaluate(black_box(&t), v).minimize()));
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let t = term("(x + !y)* ; !x ; (y ; x + !1)*");
    let v = valuation(3);
    let mut g = c.benchmark_group("membership");
    for n in [8usize, 32, 63] {
        let w: Vec<usize> = (0..n).map(|i| i % 3).collect();
        g.bench_with_input(BenchmarkId::new("span", n), &w, |b, w| b.iter(|| membership_dp(w, &t, &v).unwrap()));
        g.bench_with_input(BenchmarkId::new("automaton", n), &w, |b, w| b.iter(|| evaluate(&t, &v).accepts(w)));
    }
    g.finish();
}

fn standard_equivalence(c: &mut Criterion) {
    let (a, b) = (term("(x + y)*"), term("(x* ; y*)*"));
    c.bench_function("std_lang_equiv", |bch| bch.iter(|| std_lang_equiv(black_box(&a), black_box(&b)).holds()));
}

criterion_group!(benches, evaluation, membership, standard_equivalence);
criterion_main!(benches);
