use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cyclic_orders::coding::{delta_min_search, OuterCode, SearchOptions};
use cyclic_orders::exec::Execution;
use cyclic_orders::extension::IdealSpec;
use cyclic_orders::io::builtin_algebra;
use cyclic_orders::structure::{identify_quotient, verify_isomorphism, VerifyMode, VerifyOptions};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn delta_search(c: &mut Criterion) {
    let a = builtin_algebra("golden_u_i").unwrap();
    let code = OuterCode::parity(&a, &IdealSpec::parse(a.base(), "1+i").unwrap(), 3).unwrap();
    let mut g = c.benchmark_group("delta_min_search");
    g.sample_size(10);
    for exec in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| delta_min_search(&code, &SearchOptions::new(1).exec(exec)).unwrap())
        });
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let a = builtin_algebra("q15_quartic").unwrap();
    let r = identify_quotient(&a, &IdealSpec::parse(a.base(), "1+i").unwrap()).unwrap();
    let mut g = c.benchmark_group("verify_isomorphism");
    g.sample_size(10);
    for exec in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| {
                let mut cert = r.iso.clone().unwrap();
                let opts = VerifyOptions::new(VerifyMode::Exhaustive).exec(exec);
                verify_isomorphism(&mut cert, &r.quotient, &opts).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, delta_search, verification);
criterion_main!(benches);
