use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tess_core::cp2::cp2_tessellation;
use tess_core::curve::curve_tessellation;
use tess_core::homology::betti_numbers;
use tess_core::orient_chain;
use tess_core::surface::surface_tessellation;
use tess_core::symmetry::{random_element, SymmetryContext};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for n in [2u32, 4, 6] {
        g.bench_with_input(BenchmarkId::new("curve", n), &n, |b, &n| {
            b.iter(|| curve_tessellation(n).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("cp2", n), &n, |b, &n| {
            b.iter(|| cp2_tessellation(n).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("surface", n), &n, |b, &n| {
            b.iter(|| surface_tessellation(n).unwrap())
        });
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    for n in [2u32, 3, 4] {
        let cx = surface_tessellation(n).unwrap();
        let ch = orient_chain(&cx).unwrap();
        g.bench_with_input(BenchmarkId::new("surface", n), &ch, |b, ch| {
            b.iter(|| betti_numbers(ch))
        });
    }
    g.finish();
}

fn symmetry(c: &mut Criterion) {
    let mut g = c.benchmark_group("symmetry");
    g.sample_size(10);
    for n in [2u32, 3] {
        let cx = surface_tessellation(n).unwrap();
        let ctx = SymmetryContext::new(&cx).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        g.bench_function(BenchmarkId::new("surface_act", n), |b| {
            b.iter(|| ctx.act(&random_element(&mut rng, n, 3)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, build, homology, symmetry);
criterion_main!(benches);
