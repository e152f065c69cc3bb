use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use qsphere::crossed::h_image;
use qsphere::ktheory::{smith_normal_form, IntMatrix};
use qsphere::ncpoly::{random_element, AlgebraOps, SpherePresentation};
use qsphere::repn::{evaluate, relation_residuals, Cutoff, RepKind, RepSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn normal_forms(c: &mut Criterion) {
    let pres = SpherePresentation::new(0.3, 0.7, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_element(&pres, &mut rng, 6, 6);
    let b = random_element(&pres, &mut rng, 6, 6);
    c.bench_function("sphere product 6x6 terms", |bench| bench.iter(|| a.mul(&b)));

    let sphere00 = SpherePresentation::sphere00(0.3).unwrap();
    let e = random_element(&sphere00, &mut rng, 6, 6);
    c.bench_function("h on a random element", |bench| bench.iter(|| h_image(&e).unwrap()));
}

fn representations(c: &mut Criterion) {
    let spec = RepSpec::new(RepKind::Rho, 0.3, 0.7, 0.5);
    let pres = SpherePresentation::new(0.3, 0.7, 0.5).unwrap();
    let e = random_element(&pres, &mut ChaCha8Rng::seed_from_u64(2), 6, 6);
    c.bench_function("evaluate at N=M=24", |bench| bench.iter(|| evaluate(&spec, &e, Cutoff::square(24)).unwrap()));
    c.bench_function("relation residuals at N=M=24", |bench| {
        bench.iter(|| relation_residuals(&spec, Cutoff::square(24)).unwrap())
    });
}

fn smith(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    c.bench_function("smith normal form 8x8", |bench| {
        bench.iter_batched(
            || {
                let rows: Vec<Vec<i64>> = (0..8).map(|_| (0..8).map(|_| rng.gen_range(-20..=20)).collect()).collect();
                IntMatrix::from_rows(&rows)
            },
            |m| smith_normal_form(&m),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, normal_forms, representations, smith);
criterion_main!(benches);
