//! Deciding whether two bijections agree or collide nowhere on a
//! subset, given only minimal oracles.
//!
//! An instance carries two permutations alpha, beta of Z_N and a
//! non-empty subset S, promised that the image sets alpha(S) and
//! beta(S) are either equal or disjoint. One comparison round prepares
//! |S> in two registers, queries M_alpha on the left and M_beta on the
//! right (one call each), and interferes the pair through an
//! ancilla-controlled swap:
//!
//! ```text
//! anc: |1> -H-*-H- measure      p(0) = (1 - |<A|B>|^2) / 2
//! left:|S> --x---               A = alpha(S) superposition
//! right:|S> -x---               B = beta(S) superposition
//! ```
//!
//! Equal image sets give bitwise-equal registers, so p(0) = 0 and the
//! ancilla always reads |1>. Disjoint images give orthogonal registers
//! and p(0) = 1/2, so a |0> readout is an unambiguous disjointness
//! witness, and K all-|1> rounds bound the error of an "identical"
//! call by 2^-K.
//!
//! The same subset comparison driven through standard oracles instead
//! fails: S_alpha(|S>|0>) and S_beta(|S>|0>) keep the argument in the
//! first register, so their overlap is the pointwise agreement
//! fraction, which is 0 whenever beta = alpha on the image set but
//! nowhere pointwise. [`naive_standard_overlap`] exhibits that.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::oracle::CountedOracle;
use crate::perm::Permutation;
use crate::state::{uniform_subset_factor, StateVector, Tolerance};

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

/// Which side of the promise an instance realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PromiseCase {
    Identical,
    Disjoint,
}

impl PromiseCase {
    pub fn name(self) -> &'static str {
        match self {
            PromiseCase::Identical => "identical",
            PromiseCase::Disjoint => "disjoint",
        }
    }
}

/// Two permutations and a subset satisfying the image promise,
/// validated at construction.
#[derive(Clone, Debug)]
pub struct PromiseInstance {
    n: usize,
    subset: Vec<usize>,
    alpha: Permutation,
    beta: Permutation,
    case: PromiseCase,
}

impl PromiseInstance {
    /// Validates widths, the subset, and the promise itself: image
    /// sets must be equal or disjoint, anything in between is refused.
    pub fn new(
        n: usize,
        mut subset: Vec<usize>,
        alpha: Permutation,
        beta: Permutation,
    ) -> Result<Self> {
        if alpha.n() != n || beta.n() != n {
            return Err(Error::TableLength {
                n,
                want: 1usize << n,
                got: if alpha.n() != n {
                    alpha.dimension()
                } else {
                    beta.dimension()
                },
            });
        }
        let dim = 1usize << n;
        subset.sort_unstable();
        subset.dedup();
        if subset.is_empty() || subset.iter().any(|&v| v >= dim) {
            return Err(Error::BadSubset { dimension: dim });
        }
        let mut in_alpha_image = vec![false; dim];
        for &x in &subset {
            in_alpha_image[alpha.image(x)] = true;
        }
        let shared = subset
            .iter()
            .filter(|&&x| in_alpha_image[beta.image(x)])
            .count();
        let case = if shared == subset.len() {
            PromiseCase::Identical
        } else if shared == 0 {
            PromiseCase::Disjoint
        } else {
            return Err(Error::PromiseViolated {
                shared,
                size: subset.len(),
            });
        };
        Ok(Self {
            n,
            subset,
            alpha,
            beta,
            case,
        })
    }

    /// Seeded random instance of the requested case. Draws, in order:
    /// the subset, alpha, then the relabeling that produces beta.
    ///
    /// Identical case: beta = alpha . sigma with sigma a permutation
    /// mapping the subset onto itself and fixing everything else.
    /// Disjoint case: beta = tau . alpha with tau transposing each
    /// alpha-image against a fresh value outside alpha(S), which needs
    /// 2|S| <= N.
    pub fn generate(
        case: PromiseCase,
        n: usize,
        subset_size: usize,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let (subset, alpha) = Self::draw_subset_and_alpha(case, n, subset_size, rng)?;
        let beta = match case {
            PromiseCase::Identical => {
                let mut targets = subset.clone();
                targets.shuffle(rng);
                alpha.compose(&subset_relabeling(n, &subset, &targets)?)?
            }
            PromiseCase::Disjoint => {
                let dim = 1usize << n;
                let mut outside: Vec<bool> = vec![true; dim];
                for &x in &subset {
                    outside[alpha.image(x)] = false;
                }
                let complement: Vec<usize> = (0..dim).filter(|&v| outside[v]).collect();
                let picks =
                    rand::seq::index::sample(rng, complement.len(), subset.len()).into_vec();
                let mut table: Vec<usize> = (0..dim).collect();
                for (&x, &pick) in subset.iter().zip(&picks) {
                    let from = alpha.image(x);
                    let to = complement[pick];
                    table.swap(from, to);
                }
                Permutation::new(n, table)?.compose(&alpha)?
            }
        };
        Self::new(n, subset, alpha, beta)
    }

    /// Identical-image instance whose relabeling moves every subset
    /// element (a single cycle over the shuffled subset), so beta
    /// agrees with alpha nowhere pointwise. Needs |S| >= 2.
    pub fn generate_fixed_point_free(
        n: usize,
        subset_size: usize,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        if subset_size < 2 {
            return Err(Error::SubsetTooSmallForDerangement);
        }
        let (subset, alpha) =
            Self::draw_subset_and_alpha(PromiseCase::Identical, n, subset_size, rng)?;
        let mut order = subset.clone();
        order.shuffle(rng);
        let targets: Vec<usize> = (0..order.len())
            .map(|i| order[(i + 1) % order.len()])
            .collect();
        // relabeling keyed by the shuffled order, not the sorted subset
        let sigma = subset_relabeling(n, &order, &targets)?;
        let beta = alpha.compose(&sigma)?;
        Self::new(n, subset, alpha, beta)
    }

    fn draw_subset_and_alpha(
        case: PromiseCase,
        n: usize,
        subset_size: usize,
        rng: &mut impl Rng,
    ) -> Result<(Vec<usize>, Permutation)> {
        let dim = 1usize << n;
        if subset_size == 0 {
            return Err(Error::BadSubset { dimension: dim });
        }
        let room = match case {
            PromiseCase::Identical => subset_size,
            PromiseCase::Disjoint => 2 * subset_size,
        };
        if room > dim {
            return Err(Error::SubsetTooLarge {
                subset: subset_size,
                dimension: dim,
            });
        }
        let mut subset = rand::seq::index::sample(rng, dim, subset_size).into_vec();
        subset.sort_unstable();
        let alpha = Permutation::random(n, rng)?;
        Ok((subset, alpha))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    /// The side of the promise this instance realizes, as classified
    /// at construction.
    pub fn case(&self) -> PromiseCase {
        self.case
    }
}

/// Maps `from[i] -> to[i]` and fixes everything else. `to` must be a
/// rearrangement of `from`; both must be duplicate-free.
fn subset_relabeling(n: usize, from: &[usize], to: &[usize]) -> Result<Permutation> {
    let mut table: Vec<usize> = (0..1usize << n).collect();
    for (&f, &t) in from.iter().zip(to) {
        table[f] = t;
    }
    Permutation::new(n, table)
}

/// What a batch of sampled comparison rounds concluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Every round read |1>; wrong with probability at most 2^-K.
    #[serde(rename = "identical-with-confidence")]
    IdenticalWithConfidence,
    /// At least one |0> was read; disjointness is certain.
    #[serde(rename = "disjoint")]
    Disjoint,
    /// Graph-comparison relabelings of the two verdicts above.
    #[serde(rename = "isomorphic")]
    Isomorphic,
    #[serde(rename = "non-isomorphic")]
    NonIsomorphic,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::IdenticalWithConfidence => "identical-with-confidence",
            Verdict::Disjoint => "disjoint",
            Verdict::Isomorphic => "isomorphic",
            Verdict::NonIsomorphic => "non-isomorphic",
        }
    }
}

/// Outcome counts of repeated sampled comparisons plus the verdict
/// they force.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub zero_count: usize,
    pub verdict: Verdict,
    /// 2^-trials when every round read |1>, zero once a |0> was seen.
    pub error_bound: f64,
}

impl TrialSummary {
    /// Builds the summary from raw counts. `labels` carries the
    /// domain's verdict pair: (all-ones verdict, zero-seen verdict).
    pub fn from_counts(trials: usize, zero_count: usize, labels: (Verdict, Verdict)) -> Self {
        let (verdict, error_bound) = if zero_count == 0 {
            (labels.0, 0.5f64.powi(trials as i32))
        } else {
            (labels.1, 0.0)
        };
        Self {
            trials,
            zero_count,
            verdict,
            error_bound,
        }
    }
}

/// A [`TrialSummary`] together with the oracle bill that produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampledRun {
    #[serde(flatten)]
    pub summary: TrialSummary,
    pub queries_alpha: u64,
    pub queries_beta: u64,
}

/// Runs the comparison circuit once and returns the exact ancilla
/// readout distribution (p-zero, p-one): (0, 1) for identical images,
/// (1/2, 1/2) for disjoint ones.
pub fn run_exact(instance: &PromiseInstance) -> Result<(f64, f64)> {
    let mut m_alpha = CountedOracle::minimal(instance.alpha());
    let mut m_beta = CountedOracle::minimal(instance.beta());
    let state = comparison_state(instance, &mut m_alpha, &mut m_beta)?;
    debug_assert_eq!(m_alpha.query_count() + m_beta.query_count(), 2);
    // The ancilla readout is a two-point distribution; taking the
    // complement keeps identical-image runs at exactly (0, 1) instead
    // of accumulating summation noise in the larger branch.
    let p_zero = state.probability("anc", 0)?;
    Ok((p_zero, 1.0 - p_zero))
}

/// Runs `trials` independent sampled comparison rounds. Round i
/// rebuilds the circuit (one M_alpha and one M_beta query each, 2K
/// total) and measures the ancilla with the rng seeded by
/// `master_seed + i`.
pub fn run_sampled(
    instance: &PromiseInstance,
    trials: usize,
    master_seed: u64,
) -> Result<SampledRun> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let mut m_alpha = CountedOracle::minimal(instance.alpha());
    let mut m_beta = CountedOracle::minimal(instance.beta());
    let mut zero_count = 0usize;
    for trial in 0..trials {
        let mut state = comparison_state(instance, &mut m_alpha, &mut m_beta)?;
        let mut rng = crate::trial_rng(master_seed, trial as u64);
        if state.measure("anc", &mut rng)? == 0 {
            zero_count += 1;
        }
    }
    Ok(SampledRun {
        summary: TrialSummary::from_counts(
            trials,
            zero_count,
            (Verdict::IdenticalWithConfidence, Verdict::Disjoint),
        ),
        queries_alpha: m_alpha.query_count(),
        queries_beta: m_beta.query_count(),
    })
}

/// Builds the post-circuit three-register state, spending one query on
/// each oracle.
fn comparison_state(
    instance: &PromiseInstance,
    m_alpha: &mut CountedOracle,
    m_beta: &mut CountedOracle,
) -> Result<StateVector> {
    let n = instance.n();
    let layout = RegisterLayout::new(&[("left", n), ("right", n), ("anc", 1)])?;
    let subset_state = uniform_subset_factor(1usize << n, instance.subset())?;
    let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let mut state = StateVector::product(
        layout,
        &[
            ("left", &subset_state),
            ("right", &subset_state),
            ("anc", &one),
        ],
    )?;
    state.apply_hadamard("anc", 0)?;
    m_alpha.apply_minimal(&mut state, "left")?;
    m_beta.apply_minimal(&mut state, "right")?;
    state.apply_controlled_swap("anc", 0, "left", "right")?;
    state.apply_hadamard("anc", 0)?;
    Ok(state)
}

/// Interferes two explicitly given register states through the same
/// ancilla convention and returns the exact (p-zero, p-one). Both
/// amplitude vectors must have the same power-of-two length and unit
/// norm; p-zero = (1 - |<a|b>|^2) / 2.
pub fn swap_test_on_states(a: &[Complex64], b: &[Complex64]) -> Result<(f64, f64)> {
    if a.len() != b.len() {
        return Err(Error::AmplitudeLength {
            got: b.len(),
            want: a.len(),
        });
    }
    if !a.len().is_power_of_two() {
        return Err(Error::AmplitudeLength {
            got: a.len(),
            want: a.len().next_power_of_two(),
        });
    }
    let width = a.len().trailing_zeros() as usize;
    let layout = RegisterLayout::new(&[("left", width), ("right", width), ("anc", 1)])?;
    let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let mut state = StateVector::product(layout, &[("left", a), ("right", b), ("anc", &one)])?;
    state.apply_hadamard("anc", 0)?;
    state.apply_controlled_swap("anc", 0, "left", "right")?;
    state.apply_hadamard("anc", 0)?;
    Ok((state.probability("anc", 0)?, state.probability("anc", 1)?))
}

/// Overlap |<out_alpha|out_beta>| of the two states a standard-oracle
/// version of the comparison would produce, S_alpha(|S>|0>) and
/// S_beta(|S>|0>): exactly the fraction of subset elements where the
/// permutations agree. Identical image sets with a fixed-point-free
/// relabeling therefore score 0, indistinguishable from disjoint.
pub fn naive_standard_overlap(instance: &PromiseInstance) -> Result<f64> {
    let n = instance.n();
    let layout = RegisterLayout::new(&[("x", n), ("b", n)])?;
    let subset_state = uniform_subset_factor(1usize << n, instance.subset())?;
    let mut out_alpha = StateVector::product(layout.clone(), &[("x", &subset_state)])?;
    CountedOracle::standard(instance.alpha().table().clone()).apply_standard(
        &mut out_alpha,
        "x",
        "b",
    )?;
    let mut out_beta = StateVector::product(layout, &[("x", &subset_state)])?;
    CountedOracle::standard(instance.beta().table().clone()).apply_standard(
        &mut out_beta,
        "x",
        "b",
    )?;
    // Both supports carry one constant amplitude, so the inner product
    // is the shared-support fraction, countable exactly.
    let eps = Tolerance::default().exact_eps;
    let shared = out_alpha
        .amplitudes()
        .iter()
        .zip(out_beta.amplitudes())
        .filter(|(a, b)| a.norm_sqr() > eps && b.norm_sqr() > eps)
        .count();
    Ok(shared as f64 / instance.subset().len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn identical_instances_read_one_with_certainty() {
        for seed in 0..10u64 {
            let mut r = rng(seed);
            let inst = PromiseInstance::generate(PromiseCase::Identical, 3, 3, &mut r).unwrap();
            assert_eq!(inst.case(), PromiseCase::Identical);
            let (p0, p1) = run_exact(&inst).unwrap();
            assert!(p0.abs() <= 1e-12, "p0 = {p0}");
            assert_abs_diff_eq!(p1, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn disjoint_instances_read_zero_half_the_time() {
        for seed in 0..10u64 {
            let mut r = rng(seed);
            let inst = PromiseInstance::generate(PromiseCase::Disjoint, 3, 3, &mut r).unwrap();
            assert_eq!(inst.case(), PromiseCase::Disjoint);
            let (p0, p1) = run_exact(&inst).unwrap();
            assert_abs_diff_eq!(p0, 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(p1, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn no_third_outcome_exists_across_widths_and_sizes() {
        for n in 2..=5usize {
            for case in [PromiseCase::Identical, PromiseCase::Disjoint] {
                for size in [1usize, 2, 1 << (n - 1)] {
                    let mut r = rng((n * 100 + size) as u64);
                    let inst = PromiseInstance::generate(case, n, size, &mut r).unwrap();
                    let (p0, p1) = run_exact(&inst).unwrap();
                    assert_abs_diff_eq!(p0 + p1, 1.0, epsilon = 1e-12);
                    let expected = match inst.case() {
                        PromiseCase::Identical => 0.0,
                        PromiseCase::Disjoint => 0.5,
                    };
                    assert_abs_diff_eq!(p0, expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn singleton_subset_with_equal_permutations_is_identical() {
        let id = Permutation::identity(2).unwrap();
        let inst = PromiseInstance::new(2, vec![3], id.clone(), id).unwrap();
        assert_eq!(inst.case(), PromiseCase::Identical);
        let (p0, p1) = run_exact(&inst).unwrap();
        assert!(p0.abs() <= 1e-12);
        assert_abs_diff_eq!(p1, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partially_overlapping_images_are_rejected() {
        // alpha = id sends {0,1} to {0,1}; beta sends it to {0,2}.
        let alpha = Permutation::identity(2).unwrap();
        let beta = Permutation::new(2, vec![0, 2, 1, 3]).unwrap();
        let err = PromiseInstance::new(2, vec![0, 1], alpha, beta).unwrap_err();
        assert!(matches!(err, Error::PromiseViolated { shared: 1, size: 2 }));
    }

    #[test]
    fn empty_and_oversized_subsets_are_rejected() {
        let mut r = rng(1);
        assert!(matches!(
            PromiseInstance::generate(PromiseCase::Identical, 2, 0, &mut r),
            Err(Error::BadSubset { .. })
        ));
        assert!(matches!(
            PromiseInstance::generate(PromiseCase::Disjoint, 2, 3, &mut r),
            Err(Error::SubsetTooLarge {
                subset: 3,
                dimension: 4
            })
        ));
    }

    #[test]
    fn sampled_identical_runs_never_see_zero() {
        let mut r = rng(5);
        let inst = PromiseInstance::generate(PromiseCase::Identical, 3, 4, &mut r).unwrap();
        let run = run_sampled(&inst, 200, 42).unwrap();
        assert_eq!(run.summary.zero_count, 0);
        assert_eq!(run.summary.verdict, Verdict::IdenticalWithConfidence);
        assert_eq!(run.queries_alpha, 200);
        assert_eq!(run.queries_beta, 200);
    }

    #[test]
    fn twenty_all_ones_rounds_bound_the_error_at_exactly_two_to_minus_twenty() {
        let mut r = rng(5);
        let inst = PromiseInstance::generate(PromiseCase::Identical, 3, 2, &mut r).unwrap();
        let run = run_sampled(&inst, 20, 7).unwrap();
        assert_eq!(run.summary.error_bound, 9.5367431640625e-7);
    }

    #[test]
    fn sampled_disjoint_runs_flag_disjointness_with_zero_error_bound() {
        let mut r = rng(6);
        let inst = PromiseInstance::generate(PromiseCase::Disjoint, 3, 4, &mut r).unwrap();
        let run = run_sampled(&inst, 64, 43).unwrap();
        assert!(run.summary.zero_count > 0);
        assert_eq!(run.summary.verdict, Verdict::Disjoint);
        assert_eq!(run.summary.error_bound, 0.0);
        assert_eq!(run.queries_alpha + run.queries_beta, 128);
    }

    #[test]
    fn disjoint_zero_frequency_tracks_one_half() {
        let mut r = rng(9);
        let inst = PromiseInstance::generate(PromiseCase::Disjoint, 3, 3, &mut r).unwrap();
        let trials = 4000;
        let run = run_sampled(&inst, trials, 11).unwrap();
        let freq = run.summary.zero_count as f64 / trials as f64;
        // 3 sigma for Bernoulli(1/2)
        let slack = 3.0 * (0.25f64 / trials as f64).sqrt();
        assert!((freq - 0.5).abs() < slack, "freq = {freq}");
    }

    #[test]
    fn naive_overlap_is_one_for_equal_permutations() {
        let alpha = Permutation::new(3, vec![4, 2, 7, 1, 3, 0, 6, 5]).unwrap();
        let inst = PromiseInstance::new(3, vec![1, 4, 6], alpha.clone(), alpha).unwrap();
        assert_eq!(naive_standard_overlap(&inst).unwrap(), 1.0);
    }

    #[test]
    fn naive_overlap_is_zero_for_disjoint_images() {
        let mut r = rng(13);
        let inst = PromiseInstance::generate(PromiseCase::Disjoint, 4, 5, &mut r).unwrap();
        assert_eq!(naive_standard_overlap(&inst).unwrap(), 0.0);
    }

    #[test]
    fn naive_overlap_counts_the_agreement_fraction_exactly() {
        // sigma swaps 0 and 1 inside S = {0,1,2,3} and fixes 2, 3:
        // beta agrees with alpha on exactly half the subset.
        let alpha = Permutation::new(3, vec![5, 0, 3, 6, 1, 2, 4, 7]).unwrap();
        let sigma = Permutation::new(3, vec![1, 0, 2, 3, 4, 5, 6, 7]).unwrap();
        let beta = alpha.compose(&sigma).unwrap();
        let inst = PromiseInstance::new(3, vec![0, 1, 2, 3], alpha, beta).unwrap();
        assert_eq!(inst.case(), PromiseCase::Identical);
        assert_eq!(naive_standard_overlap(&inst).unwrap(), 0.5);
    }

    #[test]
    fn fixed_point_free_relabelings_defeat_the_naive_comparison() {
        for size in [2usize, 3, 5, 8] {
            let mut r = rng(size as u64);
            let inst = PromiseInstance::generate_fixed_point_free(3, size, &mut r).unwrap();
            assert_eq!(inst.case(), PromiseCase::Identical);
            assert_eq!(naive_standard_overlap(&inst).unwrap(), 0.0);
            let (p0, p1) = run_exact(&inst).unwrap();
            assert!(p0.abs() <= 1e-12);
            assert_abs_diff_eq!(p1, 1.0, epsilon = 1e-12);
        }
        assert!(matches!(
            PromiseInstance::generate_fixed_point_free(3, 1, &mut rng(0)),
            Err(Error::SubsetTooSmallForDerangement)
        ));
    }

    #[test]
    fn swap_test_reproduces_the_overlap_formula() {
        let zero = Complex64::new(0.0, 0.0);
        for c in [0.0f64, 0.5, std::f64::consts::FRAC_1_SQRT_2] {
            let a = [Complex64::new(1.0, 0.0), zero];
            let b = [
                Complex64::new(c, 0.0),
                Complex64::new((1.0 - c * c).sqrt(), 0.0),
            ];
            let (p0, p1) = swap_test_on_states(&a, &b).unwrap();
            assert_abs_diff_eq!(p0, (1.0 - c * c) / 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p0 + p1, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn swap_test_rejects_mismatched_or_ragged_lengths() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!(swap_test_on_states(&[one, zero], &[one]).is_err());
        assert!(swap_test_on_states(&[one, zero, zero], &[one, zero, zero]).is_err());
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let a = PromiseInstance::generate(PromiseCase::Disjoint, 4, 3, &mut rng(77)).unwrap();
        let b = PromiseInstance::generate(PromiseCase::Disjoint, 4, 3, &mut rng(77)).unwrap();
        assert_eq!(a.subset(), b.subset());
        assert_eq!(a.alpha().table().images(), b.alpha().table().images());
        assert_eq!(a.beta().table().images(), b.beta().table().images());
    }
}
