use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fgmod::blocks::block_partition_with;
use fgmod::corpus;
use fgmod::field::{Field, FieldSpec};
use fgmod::hyperdec::minimal_submodules_exhaustive;
use fgmod::meataxe::all_irreducibles;
use fgmod::module::RepModule;
use fgmod::par::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn gf(p: u32, k: u32) -> Arc<Field> {
    Arc::new(Field::new(FieldSpec::builtin(p, k).unwrap()).unwrap())
}

fn socle_spins(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal_submodules");
    group.sample_size(10);
    let d4 = Arc::new(corpus::d4());
    let perm = RepModule::permutation(d4, gf(2, 1)).unwrap();
    let v = perm.tensor(&perm).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "D4 perm^2 GF(2)"), &v, |b, v| {
            b.iter(|| minimal_submodules_exhaustive(v, exec))
        });
    }
    group.finish();
}

fn block_linkage(c: &mut Criterion) {
    let mut group = c.benchmark_group("block_partition");
    group.sample_size(10);
    for (label, g, p) in [("S4 GF(3)", corpus::s4(), 3), ("G72 GF(3)", corpus::g72(), 3)] {
        let classes = all_irreducibles(Arc::new(g), gf(p, 1), 0).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, label), &classes, |b, cl| {
                b.iter(|| block_partition_with(cl, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, socle_spins, block_linkage);
criterion_main!(benches);
