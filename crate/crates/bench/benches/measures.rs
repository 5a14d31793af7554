//! Benchmarks for the hot paths: singlet overlaps, component norms, the
//! symmetric moment, the contraction engine, and one full invariance trial.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use entmeas_core::audit::{apply_local, random_local_unitary, random_state};
use entmeas_core::measures::{gen_tangle_order4, three_tangle};
use entmeas_core::projector::{component_norm, husimi_moment, ProjectorSpec};
use entmeas_core::singlet::{overlap, InvariantSpec};
use entmeas_core::state::PureState;
use entmeas_core::tensor::{contract, ContractionPlan, DenseTensor};

fn fixed_state(dims: &[usize], seed: u64) -> PureState {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    random_state(&mut rng, dims).expect("benchmark state")
}

fn bench_tangle3(c: &mut Criterion) {
    let state = fixed_state(&[2, 2, 2], 1);
    c.bench_function("tangle3 on a random 3-qubit state", |b| {
        b.iter(|| three_tangle(std::hint::black_box(&state)).unwrap().magnitude)
    });
}

fn bench_gentangle4(c: &mut Criterion) {
    for m in [4usize, 5] {
        let state = fixed_state(&vec![2; m], 2);
        c.bench_function(&format!("order-4 invariant on {m} qubits"), |b| {
            b.iter(|| gen_tangle_order4(std::hint::black_box(&state)).unwrap().magnitude)
        });
    }
}

fn bench_single_overlap(c: &mut Criterion) {
    let state = fixed_state(&[2, 2, 2], 3);
    let spec = InvariantSpec::parse("s4a,s4a,s4a").unwrap();
    c.bench_function("one order-4 singlet overlap", |b| {
        b.iter(|| overlap(&spec, std::hint::black_box(&state)).unwrap().value)
    });
}

fn bench_component_norm(c: &mut Criterion) {
    let state = fixed_state(&[2, 2, 2], 4);
    let spec = ProjectorSpec::parse(2, "antisym,antisym,sym").unwrap();
    c.bench_function("two-copy component norm", |b| {
        b.iter(|| component_norm(std::hint::black_box(&state), &spec).unwrap())
    });
}

fn bench_husimi(c: &mut Criterion) {
    let state = fixed_state(&[2, 2, 2], 5);
    for q in [2usize, 3] {
        c.bench_function(&format!("symmetric moment at q={q}"), |b| {
            b.iter(|| husimi_moment(std::hint::black_box(&state), q).unwrap())
        });
    }
}

fn bench_contraction(c: &mut Criterion) {
    let mut rng = ChaCha12Rng::seed_from_u64(6);
    let mut tensor = |shape: &[usize]| {
        let len: usize = shape.iter().product();
        let data: Vec<C64> =
            (0..len).map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
        DenseTensor::new(shape.to_vec(), data).unwrap()
    };
    let a = tensor(&[8, 8, 8]);
    let b = tensor(&[8, 8, 8]);
    let plan = ContractionPlan::parse("abc,cbd->ad").unwrap();
    c.bench_function("rank-3 pairwise contraction (extent 8)", |bch| {
        bch.iter(|| contract(&plan, &[std::hint::black_box(&a), std::hint::black_box(&b)]).unwrap())
    });
}

fn bench_invariance_trial(c: &mut Criterion) {
    let state = fixed_state(&[2, 2, 2], 7);
    let mut rng = ChaCha12Rng::seed_from_u64(8);
    c.bench_function("one unitary-invariance trial of tangle3", |b| {
        b.iter_batched(
            || {
                state
                    .dims()
                    .iter()
                    .map(|&d| random_local_unitary(&mut rng, d))
                    .collect::<Vec<_>>()
            },
            |ops| {
                let moved = apply_local(&state, &ops).unwrap().renormalized().unwrap();
                three_tangle(&moved).unwrap().magnitude
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_tangle3,
    bench_gentangle4,
    bench_single_overlap,
    bench_component_norm,
    bench_husimi,
    bench_contraction,
    bench_invariance_trial
);
criterion_main!(benches);
