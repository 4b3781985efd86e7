//! Sequential against rayon execution for the two data-parallel hot spots:
//! the ℤ[X]⁺ candidate search and discharging an obligation set.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use indshape::fol::parse_formula;
use indshape::model::{refute_claim_with, WitnessConfig};
use indshape::par::Exec;
use indshape::prover::{prove, Backend};
use indshape::schemes::{inductiveness_obligations, Notion};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn search(c: &mut Criterion) {
    // holds in ℤ[X]⁺, so every candidate is examined
    let claim = parse_formula("!x. !y. !z. (x*(y + z) = x*y + x*z & (x < y | x = y | y < x))").unwrap();
    let cfg = WitnessConfig { max_degree: 2, max_coeff: 3, max_assignments: 4096 };
    let mut g = c.benchmark_group("refute_search");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| refute_claim_with(&claim, &cfg, exec).unwrap())
        });
    }
    g.finish();
}

fn obligations(c: &mut Criterion) {
    let phi = parse_formula("x + 0 = x").unwrap();
    let obls = inductiveness_obligations(&phi, "x", &Notion::KInduction(3)).unwrap();
    let backend = Backend::default();
    let mut g = c.benchmark_group("prove_obligations");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| prove(&obls, &backend, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, search, obligations);
criterion_main!(benches);
