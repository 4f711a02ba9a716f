use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kpres::dps::{build_presentation, embedding_map, lemma_corpus, Variant};
use kpres::par::Exec;
use kpres::verify::relator_rows;

fn relators(c: &mut Criterion) {
    let mut group = c.benchmark_group("relator-soundness");
    for r in [5u16, 8] {
        let p = build_presentation(r, Variant::KSimplified).unwrap();
        let m = embedding_map(r, Variant::KSimplified).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), r), &r, |b, _| {
                b.iter(|| relator_rows(&p, &m, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn corpus(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity-corpus");
    group.sample_size(10);
    let claims = lemma_corpus(4).unwrap();
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| b.iter(|| exec.map(&claims, |cl| cl.evaluate().unwrap().holds)));
    }
    group.finish();
}

criterion_group!(benches, relators, corpus);
criterion_main!(benches);
