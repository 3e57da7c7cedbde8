//! Seeded fixtures shared by the benchmark targets.

use oraclebench_core::{
    trial_rng, Permutation, PromiseCase, PromiseInstance, RegisterLayout, StateVector,
};

/// A reproducible permutation for width `n`.
pub fn fixture_permutation(n: usize) -> Permutation {
    Permutation::random(n, &mut trial_rng(8_600_000, n as u64)).expect("valid width")
}

/// A two-register state |0>|0> sized for oracle application benchmarks.
pub fn fixture_query_state(n: usize) -> StateVector {
    let layout = RegisterLayout::new(&[("x", n), ("b", n)]).expect("valid layout");
    let mut state = StateVector::basis(layout, &[]).expect("valid basis state");
    state.apply_hadamard_layer("x").expect("register exists");
    state
}

/// A promise instance with a half-dimension subset.
pub fn fixture_instance(n: usize, case: PromiseCase) -> PromiseInstance {
    let size = (1usize << n) / 2;
    PromiseInstance::generate(case, n, size, &mut trial_rng(8_700_000, n as u64))
        .expect("valid instance")
}
