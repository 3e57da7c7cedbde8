//! Inverting a permutation with amplitude amplification against a
//! standard oracle.
//!
//! The task: given a standard oracle for a bijective f and a target
//! value t, find x = f^{-1}(t) without an inverse oracle. A marking
//! step computes f into a scratch register, flips a flag qubit where
//! the scratch equals the target, and uncomputes, costing exactly two
//! oracle queries. With the flag held in (|0> - |1>)/sqrt(2) the flip
//! becomes a phase kick on the single matching candidate, and the
//! usual inversion-about-the-mean diffusion amplifies it.
//!
//! With one marked item in N = 2^n, k = max(1, floor(pi/4 sqrt(N)))
//! rounds leave success probability sin^2((2k+1) asin(1/sqrt(N))),
//! so the query bill is 2k, within a constant of pi/2 sqrt(N).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::oracle::CountedOracle;
use crate::perm::Permutation;
use crate::state::StateVector;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Probability weight allowed outside |0> in the scratch register
/// before a marking query is refused.
pub const SCRATCH_EPS: f64 = 1e-12;

/// Number of amplification rounds used at register width n.
pub fn iterations_for(n: usize) -> usize {
    let root_n = ((1usize << n) as f64).sqrt();
    ((std::f64::consts::FRAC_PI_4 * root_n).floor() as usize).max(1)
}

/// Success probability after [`iterations_for`]`(n)` rounds with a
/// single marked element: sin^2((2k+1) asin(1/sqrt(N))).
pub fn closed_form_success(n: usize) -> f64 {
    let k = iterations_for(n) as f64;
    let theta = (1.0 / ((1usize << n) as f64).sqrt()).asin();
    ((2.0 * k + 1.0) * theta).sin().powi(2)
}

/// Flips `flag` qubit 0 on every component where f(candidate) equals
/// the value in `target`, using two queries (compute, then uncompute).
///
/// The scratch register is borrowed: it must carry no weight outside
/// |0> on entry and is returned in that state.
pub fn apply_marking_oracle(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    target: &str,
    candidate: &str,
    scratch: &str,
    flag: &str,
) -> Result<()> {
    let weight = 1.0 - state.probability(scratch, 0)?;
    if weight > SCRATCH_EPS {
        return Err(Error::ScratchNotClear { weight });
    }
    oracle.apply_standard(state, candidate, scratch)?;
    state.apply_equality_flip(target, scratch, flag, 0)?;
    oracle.apply_standard_inverse(state, candidate, scratch)
}

/// One full preimage search, reported with its exact arithmetic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InversionRun {
    pub n: usize,
    pub target: usize,
    pub expected_preimage: usize,
    pub iterations: usize,
    pub sf_queries: u64,
    pub success_probability: f64,
    /// Sampled candidate readout, when a measurement seed was supplied.
    pub measured: Option<usize>,
}

/// Runs the amplification loop for `perm` and `target` and reads the
/// exact success probability off the final state. Pass `measure_seed`
/// to also collapse the candidate register once.
pub fn grover_invert(
    perm: &Permutation,
    target: usize,
    measure_seed: Option<u64>,
) -> Result<InversionRun> {
    let n = perm.n();
    let dim = perm.dimension();
    if target >= dim {
        return Err(Error::TargetOutOfRange {
            value: target,
            dimension: dim,
        });
    }
    let layout =
        RegisterLayout::new(&[("target", n), ("candidate", n), ("scratch", n), ("flag", 1)])?;

    let zero = Complex64::new(0.0, 0.0);
    let mut target_factor = vec![zero; dim];
    target_factor[target] = Complex64::new(1.0, 0.0);
    let uniform = vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim];
    let mut scratch_factor = vec![zero; dim];
    scratch_factor[0] = Complex64::new(1.0, 0.0);
    let root_half = std::f64::consts::FRAC_1_SQRT_2;
    let minus = [
        Complex64::new(root_half, 0.0),
        Complex64::new(-root_half, 0.0),
    ];
    let mut state = StateVector::product(
        layout,
        &[
            ("target", &target_factor),
            ("candidate", &uniform),
            ("scratch", &scratch_factor),
            ("flag", &minus),
        ],
    )?;

    let mut oracle = CountedOracle::standard(perm.table().clone());
    let iterations = iterations_for(n);
    for _ in 0..iterations {
        apply_marking_oracle(
            &mut oracle,
            &mut state,
            "target",
            "candidate",
            "scratch",
            "flag",
        )?;
        state.apply_inversion_about_mean("candidate")?;
    }

    let expected_preimage = perm.preimage(target);
    // Summing 2^n squared magnitudes can land a hair above 1; clamp the
    // rounding noise so certain searches report a true probability.
    let success_probability = state.probability("candidate", expected_preimage)?.min(1.0);
    let measured = match measure_seed {
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Some(state.measure("candidate", &mut rng)?)
        }
        None => None,
    };
    Ok(InversionRun {
        n,
        target,
        expected_preimage,
        iterations,
        sf_queries: oracle.query_count(),
        success_probability,
        measured,
    })
}

/// One width's worth of scaling data, averaged over seeded trials.
///
/// Serialized field order and names are the stable report format:
/// `n,N,iterations,sf_queries,mean_success_probability`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub dimension: usize,
    pub iterations: usize,
    pub sf_queries: u64,
    pub mean_success_probability: f64,
}

/// Runs `trials` seeded searches at each width in `n_min..=n_max`,
/// each on a fresh random permutation and target. Trial i overall uses
/// the rng seeded with `master_seed + i`.
pub fn scaling_table(
    n_min: usize,
    n_max: usize,
    trials: usize,
    master_seed: u64,
) -> Result<Vec<ScalingRow>> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let mut rows = Vec::new();
    let mut trial_index = 0u64;
    for n in n_min..=n_max {
        let dim = 1usize << n;
        let mut total = 0.0;
        let mut iterations = 0;
        let mut sf_queries = 0;
        for _ in 0..trials {
            let mut rng = crate::trial_rng(master_seed, trial_index);
            trial_index += 1;
            let perm = Permutation::random(n, &mut rng)?;
            let target = rng.gen_range(0..dim);
            let run = grover_invert(&perm, target, None)?;
            total += run.success_probability;
            iterations = run.iterations;
            sf_queries = run.sf_queries;
        }
        rows.push(ScalingRow {
            n,
            dimension: dim,
            iterations,
            sf_queries,
            mean_success_probability: total / trials as f64,
        });
    }
    Ok(rows)
}
