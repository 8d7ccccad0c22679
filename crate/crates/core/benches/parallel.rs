use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use splicezeta::checks;
use splicezeta::parallel::Exec;

type Suite = fn(usize, u64, Exec) -> checks::SuiteReport;

fn suites(c: &mut Criterion) {
    let cases: [(&str, Suite, usize); 4] = [
        ("splice_formula", checks::splice_formula, 200),
        ("goal1", checks::goal1, 100),
        ("plumbing_equivalence", checks::plumbing_equivalence, 40),
        ("no_pole_at_node", checks::no_pole_at_node, 200),
    ];
    for (name, suite, n) in cases {
        let mut g = c.benchmark_group(name);
        g.sample_size(10);
        for (label, exec) in [
            ("sequential", Exec::Sequential),
            ("parallel", Exec::Parallel),
        ] {
            g.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| {
                    let r = suite(n, 7, exec);
                    assert!(r.ok(), "{:?}", r.failures);
                })
            });
        }
        g.finish();
    }
    let mut g = c.benchmark_group("coprime_lemma");
    g.sample_size(10);
    for (label, exec) in [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel),
    ] {
        g.bench_function(label, |b| b.iter(|| checks::coprime_lemma(11, 4, exec)));
    }
    g.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
