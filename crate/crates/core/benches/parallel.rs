use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uacyc::filling::{min_l1_fill, vertex_cycles};
use uacyc::homotopy::w_pipeline;
use uacyc::nerve::nerve_of_poset;
use uacyc::poset_w::check_w;
use uacyc::{gen, par, Chain};

fn pipeline_batch(c: &mut Criterion) {
    let mut rng = gen::rng(11);
    let p = loop {
        let p = gen::planted_w_poset(&mut rng, 7);
        if p.len() >= 6 {
            break p;
        }
    };
    let report = check_w(&p, 5);
    let table = report.tables.iter().max_by_key(|t| t.subposet.len()).expect("W posets have tables").clone();
    let pn = nerve_of_poset(&p, 3);
    let qn = nerve_of_poset(&p.induced(&table.subposet), 2);
    let zs: Vec<Chain> = (0..=2).flat_map(|l| vertex_cycles(qn.complex(), l, 64).unwrap()).collect();

    let mut group = c.benchmark_group("w_pipeline");
    group.sample_size(10);
    let run = |z: &Chain| w_pipeline(&pn, &qn, &table, z).unwrap().certificate.norm;
    group.bench_with_input(BenchmarkId::new("sequential", zs.len()), &zs, |b, zs| b.iter(|| par::map_seq(zs, run)));
    group.bench_with_input(BenchmarkId::new("parallel", zs.len()), &zs, |b, zs| b.iter(|| par::map(zs, run)));
    group.finish();

    let cycles: Vec<Chain> = zs
        .iter()
        .map(|z| {
            let inclusion = qn.induced_map(&pn, &table.subposet).unwrap();
            inclusion.apply(z)
        })
        .collect();
    let mut group = c.benchmark_group("lp_fill");
    group.sample_size(10);
    let fill = |z: &Chain| min_l1_fill(pn.complex(), z).unwrap().norm;
    group.bench_with_input(BenchmarkId::new("sequential", cycles.len()), &cycles, |b, zs| b.iter(|| par::map_seq(zs, fill)));
    group.bench_with_input(BenchmarkId::new("parallel", cycles.len()), &cycles, |b, zs| b.iter(|| par::map(zs, fill)));
    group.finish();
}

criterion_group!(benches, pipeline_batch);
criterion_main!(benches);
