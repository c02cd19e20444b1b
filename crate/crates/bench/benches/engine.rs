use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mapgerm_bench::{catalog_family, catalog_germ, ideal};
use mapgerm_core::{family_verdict, groebner_basis, invariant_report, local_colength, AnalysisConfig, MonomialOrder};

fn bases(c: &mut Criterion) {
    let cyclic = ideal(&["x", "y", "z"], &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]);
    c.bench_function("groebner_basis/cyclic3/degrevlex", |b| {
        b.iter(|| groebner_basis(black_box(&cyclic), &MonomialOrder::DegRevLex))
    });
    c.bench_function("groebner_basis/cyclic3/lex", |b| {
        b.iter(|| groebner_basis(black_box(&cyclic), &MonomialOrder::Lex))
    });
}

fn colengths(c: &mut Criterion) {
    let milnor = ideal(&["x", "y"], &["3*x^2 + y^3", "3*x*y^2 + 5*y^4"]);
    c.bench_function("local_colength/plane", |b| b.iter(|| local_colength(black_box(&milnor))));
    let space = ideal(&["x", "y", "z"], &["x^2 - y*z", "y^2 - x*z + z^3", "z^4 + x*y"]);
    c.bench_function("local_colength/space", |b| b.iter(|| local_colength(black_box(&space))));
}

fn reports(c: &mut Criterion) {
    let cfg = AnalysisConfig::default();
    let mut group = c.benchmark_group("invariant_report");
    group.sample_size(10);
    for name in ["crosscap", "S1", "H2"] {
        let g = catalog_germ(name);
        group.bench_function(name, |b| b.iter(|| invariant_report(black_box(&g), &cfg).unwrap()));
    }
    group.finish();
    let u = catalog_family("family-mu-constant");
    let mut group = c.benchmark_group("family_verdict");
    group.sample_size(10);
    group.bench_function("family-mu-constant", |b| b.iter(|| family_verdict(black_box(&u), &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, bases, colengths, reports);
criterion_main!(benches);
