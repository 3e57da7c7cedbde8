//! Oracle-conversion identities, each realized as a short composed
//! circuit and checked against the directly constructed target.
//!
//! Eight conversions are implemented, all acting on an argument register
//! `x` and an ancilla register `b` of equal width n (N = 2^n):
//!
//! * `phase_from_standard`:            (I x F)  S_f (I x F^-1)  = P_f
//! * `standard_from_phase`:            (I x F^-1) P_f (I x F)   = S_f
//! * `standard_inverse_by_reflection`: (I x R)  S_f (I x R)     = S_f^-1
//! * `phase_inverse_by_reflection`:    (I x R)  P_f (I x R)     = P_f^-1
//! * `standard_from_minimal`:          (M_f^-1 x I) A (M_f x I) = S_f
//! * `minimal_from_standard_pair`:     (S_{f^-1})^-1 X S_f      = M_f x I
//! * `bit_phase_from_bit_standard`:    (I x H..H) S^bit_f (I x H..H) = P^bit_f
//! * `bit_standard_from_bit_phase`:    (I x H..H) P^bit_f (I x H..H) = S^bit_f
//!
//! with F the register Fourier transform, R = F^2 the parity reflection,
//! A the modular adder, X the register swap, and H..H the Hadamard layer.
//!
//! `minimal_from_standard_pair` is special: the composed circuit agrees
//! with M_f x I exactly on the b = |0> subspace (the ancilla is borrowed
//! and returned, as in any compute-copy-uncompute construction) and
//! nowhere else, so its verification domain is that subspace. Every
//! circuit here is built from invertible steps, and `reversed()` gives
//! the gate-by-gate inverse of the whole conversion on the full space.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::oracle::{CountedOracle, Direction, OracleKind};
use crate::perm::Permutation;
use crate::state::{StateVector, Tolerance};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityKind {
    PhaseFromStandard,
    StandardFromPhase,
    StandardInverseByReflection,
    PhaseInverseByReflection,
    StandardFromMinimal,
    MinimalFromStandardPair,
    BitPhaseFromBitStandard,
    BitStandardFromBitPhase,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 8] = [
        IdentityKind::PhaseFromStandard,
        IdentityKind::StandardFromPhase,
        IdentityKind::StandardInverseByReflection,
        IdentityKind::PhaseInverseByReflection,
        IdentityKind::StandardFromMinimal,
        IdentityKind::MinimalFromStandardPair,
        IdentityKind::BitPhaseFromBitStandard,
        IdentityKind::BitStandardFromBitPhase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::PhaseFromStandard => "phase_from_standard",
            IdentityKind::StandardFromPhase => "standard_from_phase",
            IdentityKind::StandardInverseByReflection => "standard_inverse_by_reflection",
            IdentityKind::PhaseInverseByReflection => "phase_inverse_by_reflection",
            IdentityKind::StandardFromMinimal => "standard_from_minimal",
            IdentityKind::MinimalFromStandardPair => "minimal_from_standard_pair",
            IdentityKind::BitPhaseFromBitStandard => "bit_phase_from_bit_standard",
            IdentityKind::BitStandardFromBitPhase => "bit_standard_from_bit_phase",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::UnknownIdentity {
                name: name.to_owned(),
            })
    }

    /// Conversions routed through a Fourier transform or a phase family
    /// accumulate irrational-phase rounding and are held to `abs_eps`;
    /// the rest are pure basis permutations held to `exact_eps`.
    pub fn fourier_type(self) -> bool {
        matches!(
            self,
            IdentityKind::PhaseFromStandard
                | IdentityKind::StandardFromPhase
                | IdentityKind::PhaseInverseByReflection
        )
    }

    pub fn tolerance_for(self, tol: Tolerance) -> f64 {
        if self.fourier_type() {
            tol.abs_eps
        } else {
            tol.exact_eps
        }
    }

    /// Identities whose agreement domain is the b = |0> subspace rather
    /// than the full two-register space.
    fn zero_ancilla_domain(self) -> bool {
        matches!(self, IdentityKind::MinimalFromStandardPair)
    }
}

/// Which counted oracle a circuit step queries. Most conversions use one
/// oracle; `minimal_from_standard_pair` also queries a standard oracle
/// wrapping f^{-1} (the companion).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Primary,
    Companion,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Qft,
    QftInverse,
    HadamardLayer,
    ParityReflection,
    Adder,
    AdderInverse,
    SwapRegisters,
    Query(Slot, Direction),
}

impl Step {
    fn inverted(self) -> Self {
        match self {
            Step::Qft => Step::QftInverse,
            Step::QftInverse => Step::Qft,
            Step::HadamardLayer => Step::HadamardLayer,
            Step::ParityReflection => Step::ParityReflection,
            Step::Adder => Step::AdderInverse,
            Step::AdderInverse => Step::Adder,
            Step::SwapRegisters => Step::SwapRegisters,
            Step::Query(slot, dir) => Step::Query(slot, dir.flipped()),
        }
    }
}

/// The oracles a conversion is allowed to query.
pub struct OracleSet {
    pub primary: CountedOracle,
    pub companion: Option<CountedOracle>,
}

impl OracleSet {
    /// The oracle bank a given identity expects, built from one
    /// permutation: the primary holds f, the companion (when present)
    /// is a standard oracle for f^{-1}.
    pub fn for_identity(kind: IdentityKind, perm: &Permutation) -> Self {
        let table = perm.table().clone();
        let (primary, companion) = match kind {
            IdentityKind::PhaseFromStandard | IdentityKind::StandardInverseByReflection => {
                (CountedOracle::standard(table), None)
            }
            IdentityKind::StandardFromPhase | IdentityKind::PhaseInverseByReflection => {
                (CountedOracle::phase(table), None)
            }
            IdentityKind::StandardFromMinimal => (CountedOracle::minimal(perm), None),
            IdentityKind::MinimalFromStandardPair => (
                CountedOracle::standard(table),
                Some(CountedOracle::standard(perm.inverted().table().clone())),
            ),
            IdentityKind::BitPhaseFromBitStandard => (CountedOracle::bit_standard(table), None),
            IdentityKind::BitStandardFromBitPhase => (CountedOracle::bit_phase(table), None),
        };
        Self { primary, companion }
    }

    /// Query totals keyed by oracle role, for reporting.
    pub fn queries(&self) -> BTreeMap<String, u64> {
        let mut map = BTreeMap::new();
        map.insert(
            self.primary.kind().name().to_owned(),
            self.primary.query_count(),
        );
        if let Some(companion) = &self.companion {
            map.insert(
                format!("{}-of-f-inverse", companion.kind().name()),
                companion.query_count(),
            );
        }
        map
    }
}

/// A conversion circuit as an explicit step list, so that reversing it
/// is a mechanical step-by-step inversion rather than a re-derivation.
#[derive(Clone, Debug)]
pub struct ConversionCircuit {
    steps: Vec<Step>,
}

impl ConversionCircuit {
    pub fn for_identity(kind: IdentityKind) -> Self {
        use Direction::{Forward, Inverse};
        use Slot::{Companion, Primary};
        let steps = match kind {
            IdentityKind::PhaseFromStandard => {
                vec![Step::QftInverse, Step::Query(Primary, Forward), Step::Qft]
            }
            IdentityKind::StandardFromPhase => {
                vec![Step::Qft, Step::Query(Primary, Forward), Step::QftInverse]
            }
            IdentityKind::StandardInverseByReflection | IdentityKind::PhaseInverseByReflection => {
                vec![
                    Step::ParityReflection,
                    Step::Query(Primary, Forward),
                    Step::ParityReflection,
                ]
            }
            IdentityKind::StandardFromMinimal => vec![
                Step::Query(Primary, Forward),
                Step::Adder,
                Step::Query(Primary, Inverse),
            ],
            IdentityKind::MinimalFromStandardPair => vec![
                Step::Query(Primary, Forward),
                Step::SwapRegisters,
                Step::Query(Companion, Inverse),
            ],
            IdentityKind::BitPhaseFromBitStandard | IdentityKind::BitStandardFromBitPhase => vec![
                Step::HadamardLayer,
                Step::Query(Primary, Forward),
                Step::HadamardLayer,
            ],
        };
        Self { steps }
    }

    /// Gate-by-gate inverse of the whole circuit.
    pub fn reversed(&self) -> Self {
        Self {
            steps: self.steps.iter().rev().map(|s| s.inverted()).collect(),
        }
    }

    /// Runs the circuit on `state`. `primary` serves most queries;
    /// `companion` is only consulted by the two-oracle conversion.
    pub fn apply(
        &self,
        state: &mut StateVector,
        primary: &mut CountedOracle,
        mut companion: Option<&mut CountedOracle>,
        x: &str,
        b: &str,
    ) -> Result<()> {
        for step in &self.steps {
            match step {
                Step::Qft => state.apply_qft(b)?,
                Step::QftInverse => state.apply_qft_inverse(b)?,
                Step::HadamardLayer => state.apply_hadamard_layer(b)?,
                Step::ParityReflection => state.apply_parity_reflection(b)?,
                Step::Adder => state.apply_adder(x, b)?,
                Step::AdderInverse => state.apply_adder_inverse(x, b)?,
                Step::SwapRegisters => state.apply_swap(x, b)?,
                Step::Query(slot, dir) => {
                    let oracle = match slot {
                        Slot::Primary => &mut *primary,
                        Slot::Companion => companion
                            .as_deref_mut()
                            .expect("companion oracle present for this identity"),
                    };
                    apply_query(oracle, *dir, state, x, b)?;
                }
            }
        }
        Ok(())
    }
}

fn apply_query(
    oracle: &mut CountedOracle,
    dir: Direction,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    match (oracle.kind(), dir) {
        (OracleKind::Standard, Direction::Forward) => oracle.apply_standard(state, x, b),
        (OracleKind::Standard, Direction::Inverse) => oracle.apply_standard_inverse(state, x, b),
        (OracleKind::Phase, Direction::Forward) => oracle.apply_phase(state, x, b),
        (OracleKind::Phase, Direction::Inverse) => oracle.apply_phase_inverse(state, x, b),
        (OracleKind::Minimal, Direction::Forward) => oracle.apply_minimal(state, x),
        (OracleKind::Minimal, Direction::Inverse) => oracle.apply_minimal_inverse(state, x),
        (OracleKind::BitStandard, Direction::Forward) => oracle.apply_bit_standard(state, x, b),
        (OracleKind::BitStandard, Direction::Inverse) => {
            oracle.apply_bit_standard_inverse(state, x, b)
        }
        (OracleKind::BitPhase, Direction::Forward) => oracle.apply_bit_phase(state, x, b),
        (OracleKind::BitPhase, Direction::Inverse) => oracle.apply_bit_phase_inverse(state, x, b),
    }
}

/// Applies the direct form of the identity's target operator, with a
/// throwaway oracle so the composed circuit's counters stay clean.
fn apply_direct_target(
    kind: IdentityKind,
    perm: &Permutation,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    let table = perm.table().clone();
    match kind {
        IdentityKind::PhaseFromStandard => CountedOracle::phase(table).apply_phase(state, x, b),
        IdentityKind::StandardFromPhase | IdentityKind::StandardFromMinimal => {
            CountedOracle::standard(table).apply_standard(state, x, b)
        }
        IdentityKind::StandardInverseByReflection => {
            CountedOracle::standard(table).apply_standard_inverse(state, x, b)
        }
        IdentityKind::PhaseInverseByReflection => {
            CountedOracle::phase(table).apply_phase_inverse(state, x, b)
        }
        IdentityKind::MinimalFromStandardPair => {
            CountedOracle::minimal(perm).apply_minimal(state, x)
        }
        IdentityKind::BitPhaseFromBitStandard => {
            CountedOracle::bit_phase(table).apply_bit_phase(state, x, b)
        }
        IdentityKind::BitStandardFromBitPhase => {
            CountedOracle::bit_standard(table).apply_bit_standard(state, x, b)
        }
    }
}

// Convenience wrappers applying one conversion to a caller's state,
// querying the caller's counted oracle.

/// (I x F) S_f (I x F^-1) applied via one standard-oracle query.
pub fn phase_from_standard(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    apply_single(IdentityKind::PhaseFromStandard, oracle, state, x, b)
}

/// (I x F^-1) P_f (I x F) applied via one phase-oracle query.
pub fn standard_from_phase(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    apply_single(IdentityKind::StandardFromPhase, oracle, state, x, b)
}

/// (I x R) S_f (I x R), the inverse standard oracle from one forward query.
pub fn standard_inverse_by_reflection(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    apply_single(
        IdentityKind::StandardInverseByReflection,
        oracle,
        state,
        x,
        b,
    )
}

/// (I x R) P_f (I x R), the inverse phase oracle from one forward query.
pub fn phase_inverse_by_reflection(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    apply_single(IdentityKind::PhaseInverseByReflection, oracle, state, x, b)
}

/// (M_{f^-1} x I) A (M_f x I), the standard oracle from two minimal queries.
pub fn standard_from_minimal(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    apply_single(IdentityKind::StandardFromMinimal, oracle, state, x, b)
}

/// (S_{f^-1})^-1 X S_f, the minimal oracle on `x` with `b` as a borrowed
/// |0> ancilla; one query to each standard oracle.
pub fn minimal_from_standard_pair(
    sf: &mut CountedOracle,
    sf_of_inverse: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    ConversionCircuit::for_identity(IdentityKind::MinimalFromStandardPair).apply(
        state,
        sf,
        Some(sf_of_inverse),
        x,
        b,
    )
}

/// Hadamard-layer conjugation of the bit-standard oracle, yielding the
/// bit-phase oracle.
pub fn bit_phase_from_bit_standard(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    apply_single(IdentityKind::BitPhaseFromBitStandard, oracle, state, x, b)
}

/// Hadamard-layer conjugation of the bit-phase oracle, yielding the
/// bit-standard oracle.
pub fn bit_standard_from_bit_phase(
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    apply_single(IdentityKind::BitStandardFromBitPhase, oracle, state, x, b)
}

fn apply_single(
    kind: IdentityKind,
    oracle: &mut CountedOracle,
    state: &mut StateVector,
    x: &str,
    b: &str,
) -> Result<()> {
    ConversionCircuit::for_identity(kind).apply(state, oracle, None, x, b)
}

/// How verification inputs are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every basis state of the identity's agreement domain. Capped at
    /// n <= 3: the sweep is N^2 inputs of dimension N^2 each.
    ExhaustiveBasis,
    /// Seeded random normalized states on the agreement domain.
    RandomStates { count: usize, seed: u64 },
}

impl VerifyMode {
    fn label(self) -> &'static str {
        match self {
            VerifyMode::ExhaustiveBasis => "exhaustive-basis",
            VerifyMode::RandomStates { .. } => "random-state",
        }
    }
}

/// Default number of random states used above the exhaustive cap.
pub const RANDOM_STATE_COUNT: usize = 100;
/// Exhaustive two-register sweeps stop here.
pub const EXHAUSTIVE_CAP: usize = 3;
/// No verification runs above this width.
pub const VERIFY_CAP: usize = 6;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityCheckResult {
    pub identity: String,
    pub n: usize,
    pub mode: String,
    pub max_deviation: f64,
    pub queries_used: BTreeMap<String, u64>,
    pub passed: bool,
}

/// Runs one identity's composed circuit and direct target over the
/// agreed input set and reports the largest amplitude deviation.
pub fn verify_identity(
    kind: IdentityKind,
    perm: &Permutation,
    mode: VerifyMode,
    tol: Tolerance,
) -> Result<IdentityCheckResult> {
    verify_identity_against(kind, perm, perm, mode, tol)
}

/// [`verify_identity`] with the direct target built from a different
/// function. With `direct_perm != perm` the comparison must fail; the
/// harness uses this to prove the checker rejects mismatches rather
/// than passing vacuously.
pub fn verify_identity_against(
    kind: IdentityKind,
    perm: &Permutation,
    direct_perm: &Permutation,
    mode: VerifyMode,
    tol: Tolerance,
) -> Result<IdentityCheckResult> {
    let n = perm.n();
    if n > VERIFY_CAP {
        return Err(Error::VerifyTooWide { n, cap: VERIFY_CAP });
    }
    if matches!(mode, VerifyMode::ExhaustiveBasis) && n > EXHAUSTIVE_CAP {
        return Err(Error::VerifyTooWide {
            n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let layout = RegisterLayout::new(&[("x", n), ("b", n)])?;
    let circuit = ConversionCircuit::for_identity(kind);
    let mut set = OracleSet::for_identity(kind, perm);
    let mut max_deviation: f64 = 0.0;
    for input in verification_inputs(kind, &layout, mode)? {
        let mut composed = input.clone();
        circuit.apply(
            &mut composed,
            &mut set.primary,
            set.companion.as_mut(),
            "x",
            "b",
        )?;
        let mut direct = input;
        apply_direct_target(kind, direct_perm, &mut direct, "x", "b")?;
        max_deviation = max_deviation.max(composed.max_amplitude_distance(&direct)?);
    }
    Ok(IdentityCheckResult {
        identity: kind.name().to_owned(),
        n,
        mode: mode.label().to_owned(),
        max_deviation,
        queries_used: set.queries(),
        passed: max_deviation <= kind.tolerance_for(tol),
    })
}

/// Convenience driver: all eight identities on one permutation, with the
/// mode picked by width (exhaustive up to n = 3, random states above).
pub fn verify_all(
    perm: &Permutation,
    seed: u64,
    tol: Tolerance,
) -> Result<Vec<IdentityCheckResult>> {
    let mode = if perm.n() <= EXHAUSTIVE_CAP {
        VerifyMode::ExhaustiveBasis
    } else {
        VerifyMode::RandomStates {
            count: RANDOM_STATE_COUNT,
            seed,
        }
    };
    IdentityKind::ALL
        .into_iter()
        .map(|kind| verify_identity(kind, perm, mode, tol))
        .collect()
}

fn verification_inputs(
    kind: IdentityKind,
    layout: &RegisterLayout,
    mode: VerifyMode,
) -> Result<Vec<StateVector>> {
    let n = layout.register("x")?.width();
    let dim = 1usize << n;
    match mode {
        VerifyMode::ExhaustiveBasis => {
            let mut inputs = Vec::new();
            for x in 0..dim {
                if kind.zero_ancilla_domain() {
                    inputs.push(StateVector::basis(layout.clone(), &[("x", x)])?);
                } else {
                    for b in 0..dim {
                        inputs.push(StateVector::basis(layout.clone(), &[("x", x), ("b", b)])?);
                    }
                }
            }
            Ok(inputs)
        }
        VerifyMode::RandomStates { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| random_domain_state(kind, layout, &mut rng))
                .collect()
        }
    }
}

/// A random normalized state on the identity's agreement domain: the
/// full two-register space, or its b = |0> slice.
fn random_domain_state(
    kind: IdentityKind,
    layout: &RegisterLayout,
    rng: &mut impl Rng,
) -> Result<StateVector> {
    let b_field = layout.register("b")?.field();
    let dim = layout.dimension();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut norm = 0.0;
    for (i, amp) in amps.iter_mut().enumerate() {
        if kind.zero_ancilla_domain() && b_field.value_in(i) != 0 {
            continue;
        }
        *amp = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        norm += amp.norm_sqr();
    }
    let scale = 1.0 / norm.sqrt();
    for amp in &mut amps {
        *amp = amp.scale(scale);
    }
    StateVector::from_amplitudes(layout.clone(), amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn layout(n: usize) -> RegisterLayout {
        RegisterLayout::new(&[("x", n), ("b", n)]).unwrap()
    }

    fn seeded_perm(n: usize, seed: u64) -> Permutation {
        Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    }

    #[test]
    fn every_identity_passes_exhaustively_at_small_widths() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            for seed in 0..4u64 {
                let perm = seeded_perm(n, seed);
                for kind in IdentityKind::ALL {
                    let result =
                        verify_identity(kind, &perm, VerifyMode::ExhaustiveBasis, tol).unwrap();
                    assert!(
                        result.passed,
                        "{} failed at n={n} seed={seed}: deviation {}",
                        result.identity, result.max_deviation
                    );
                }
            }
        }
    }

    #[test]
    fn every_identity_passes_on_random_states_up_to_cap() {
        let tol = Tolerance::default();
        for n in 4..=VERIFY_CAP {
            let perm = seeded_perm(n, 17);
            for kind in IdentityKind::ALL {
                let mode = VerifyMode::RandomStates {
                    count: 20,
                    seed: 99,
                };
                let result = verify_identity(kind, &perm, mode, tol).unwrap();
                assert!(
                    result.passed,
                    "{} failed at n={n}: deviation {}",
                    result.identity, result.max_deviation
                );
                assert_eq!(result.mode, "random-state");
            }
        }
    }

    #[test]
    fn phase_from_standard_matches_direct_phase_for_fixed_table() {
        // f = [2, 3, 0, 1] over n = 2, swept over all 16 basis states.
        let perm = Permutation::new(2, vec![2, 3, 0, 1]).unwrap();
        let result = verify_identity(
            IdentityKind::PhaseFromStandard,
            &perm,
            VerifyMode::ExhaustiveBasis,
            Tolerance::default(),
        )
        .unwrap();
        assert!(result.passed);
        assert!(result.max_deviation < 1e-10);
        // one standard query per input state
        assert_eq!(result.queries_used["standard"], 16);
    }

    #[test]
    fn phase_from_standard_on_identity_permutation_fixes_zero_ancilla() {
        let perm = Permutation::identity(2).unwrap();
        let mut oracle = CountedOracle::standard(perm.table().clone());
        for x in 0..4usize {
            let mut state = StateVector::basis(layout(2), &[("x", x)]).unwrap();
            let before = state.clone();
            phase_from_standard(&mut oracle, &mut state, "x", "b").unwrap();
            assert!(state.max_amplitude_distance(&before).unwrap() < 1e-12);
        }
        assert_eq!(oracle.query_count(), 4);
    }

    #[test]
    fn phase_from_standard_places_single_negative_phase_at_one_qubit() {
        // n = 1, f swaps 0 and 1. The resulting phase oracle multiplies
        // |x>|b> by exp(pi i f(x) b), i.e. -1 exactly at (x, b) = (0, 1).
        let perm = Permutation::new(1, vec![1, 0]).unwrap();
        let mut oracle = CountedOracle::standard(perm.table().clone());
        for (x, b, expect) in [
            (0usize, 0usize, 1.0),
            (0, 1, -1.0),
            (1, 0, 1.0),
            (1, 1, 1.0),
        ] {
            let mut state = StateVector::basis(layout(1), &[("x", x), ("b", b)]).unwrap();
            phase_from_standard(&mut oracle, &mut state, "x", "b").unwrap();
            let amp = state.amplitudes()[x * 2 + b];
            assert_abs_diff_eq!(amp.re, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(amp.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn standard_from_phase_writes_image_into_zero_ancilla() {
        let perm = seeded_perm(3, 23);
        let mut oracle = CountedOracle::phase(perm.table().clone());
        for x in 0..8usize {
            let mut state = StateVector::basis(layout(3), &[("x", x)]).unwrap();
            standard_from_phase(&mut oracle, &mut state, "x", "b").unwrap();
            assert_abs_diff_eq!(
                state.probability("b", perm.image(x)).unwrap(),
                1.0,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn composed_phase_oracle_is_undone_by_direct_phase_inverse() {
        let perm = seeded_perm(2, 31);
        let mut standard = CountedOracle::standard(perm.table().clone());
        let mut phase = CountedOracle::phase(perm.table().clone());
        for x in 0..4usize {
            for b in 0..4usize {
                let mut state = StateVector::basis(layout(2), &[("x", x), ("b", b)]).unwrap();
                let before = state.clone();
                phase_from_standard(&mut standard, &mut state, "x", "b").unwrap();
                phase.apply_phase_inverse(&mut state, "x", "b").unwrap();
                assert!(state.max_amplitude_distance(&before).unwrap() < 1e-10);
            }
        }
        assert_eq!(standard.query_count(), 16);
        assert_eq!(phase.inverse_queries(), 16);
    }

    #[test]
    fn reflection_conjugation_inverts_standard_oracle() {
        let perm = seeded_perm(3, 5);
        let result = verify_identity(
            IdentityKind::StandardInverseByReflection,
            &perm,
            VerifyMode::ExhaustiveBasis,
            Tolerance::default(),
        )
        .unwrap();
        assert!(result.passed);
        assert!(result.max_deviation < 1e-12);
    }

    #[test]
    fn reflection_conjugation_fixes_identity_permutation_zero_ancilla() {
        let perm = Permutation::identity(2).unwrap();
        let mut oracle = CountedOracle::standard(perm.table().clone());
        // b = 0 and f = identity: R, S_f, R leaves |x>|0>... S_id adds x.
        // |x>|0> -> R -> |x>|0> -> S -> |x>|x> -> R -> |x>|-x>; the direct
        // inverse gives |x>|0 - x> = |x>|-x> as well.
        for x in 0..4usize {
            let mut state = StateVector::basis(layout(2), &[("x", x)]).unwrap();
            standard_inverse_by_reflection(&mut oracle, &mut state, "x", "b").unwrap();
            assert_eq!(state.probability("b", (4 - x) % 4).unwrap(), 1.0);
        }
    }

    #[test]
    fn phase_reflection_matches_direct_phase_inverse() {
        let perm = seeded_perm(3, 7);
        let result = verify_identity(
            IdentityKind::PhaseInverseByReflection,
            &perm,
            VerifyMode::RandomStates {
                count: 100,
                seed: 3,
            },
            Tolerance::default(),
        )
        .unwrap();
        assert!(result.passed);
        assert!(result.max_deviation < 1e-10);
    }

    #[test]
    fn standard_from_minimal_uses_exactly_two_minimal_queries() {
        let perm = seeded_perm(2, 41);
        let mut oracle = CountedOracle::minimal(&perm);
        let mut state = StateVector::basis(layout(2), &[("x", 1), ("b", 2)]).unwrap();
        standard_from_minimal(&mut oracle, &mut state, "x", "b").unwrap();
        assert_eq!(oracle.forward_queries(), 1);
        assert_eq!(oracle.inverse_queries(), 1);
        assert_eq!(oracle.query_count(), 2);
        assert_eq!(
            state.probability("b", (2 + perm.image(1)) % 4).unwrap(),
            1.0
        );
        assert_eq!(state.probability("x", 1).unwrap(), 1.0);
    }

    #[test]
    fn standard_from_minimal_with_identity_is_plain_adder() {
        let perm = Permutation::identity(3).unwrap();
        let mut oracle = CountedOracle::minimal(&perm);
        for x in 0..8usize {
            for b in [0usize, 3, 7] {
                let mut state = StateVector::basis(layout(3), &[("x", x), ("b", b)]).unwrap();
                standard_from_minimal(&mut oracle, &mut state, "x", "b").unwrap();
                assert_eq!(state.probability("b", (x + b) % 8).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn standard_from_minimal_verifies_exhaustively() {
        let perm = seeded_perm(3, 7);
        let result = verify_identity(
            IdentityKind::StandardFromMinimal,
            &perm,
            VerifyMode::ExhaustiveBasis,
            Tolerance::default(),
        )
        .unwrap();
        assert!(result.passed);
        assert!(result.max_deviation < 1e-12);
    }

    #[test]
    fn minimal_from_standard_pair_relabels_with_clean_ancilla() {
        for seed in 0..5u64 {
            let perm = seeded_perm(3, seed);
            let mut sf = CountedOracle::standard(perm.table().clone());
            let mut sf_inv = CountedOracle::standard(perm.inverted().table().clone());
            for x in 0..8usize {
                let mut state = StateVector::basis(layout(3), &[("x", x)]).unwrap();
                minimal_from_standard_pair(&mut sf, &mut sf_inv, &mut state, "x", "b").unwrap();
                assert_eq!(state.probability("x", perm.image(x)).unwrap(), 1.0);
                assert_eq!(state.probability("b", 0).unwrap(), 1.0);
            }
            assert_eq!(sf.query_count(), 8);
            assert_eq!(sf_inv.query_count(), 8);
            assert_eq!(sf.forward_queries(), 8);
            assert_eq!(sf_inv.inverse_queries(), 8);
        }
    }

    #[test]
    fn minimal_from_standard_pair_with_identity_function_is_identity() {
        let perm = Permutation::identity(2).unwrap();
        let mut sf = CountedOracle::standard(perm.table().clone());
        let mut sf_inv = CountedOracle::standard(perm.inverted().table().clone());
        for x in 0..4usize {
            let mut state = StateVector::basis(layout(2), &[("x", x)]).unwrap();
            let before = state.clone();
            minimal_from_standard_pair(&mut sf, &mut sf_inv, &mut state, "x", "b").unwrap();
            assert!(state.max_amplitude_distance(&before).unwrap() < 1e-15);
        }
    }

    #[test]
    fn bitwise_equivalences_hold_both_ways() {
        let perm = seeded_perm(3, 13);
        for kind in [
            IdentityKind::BitPhaseFromBitStandard,
            IdentityKind::BitStandardFromBitPhase,
        ] {
            let result = verify_identity(
                kind,
                &perm,
                VerifyMode::ExhaustiveBasis,
                Tolerance::default(),
            )
            .unwrap();
            assert!(
                result.passed,
                "{}: {}",
                result.identity, result.max_deviation
            );
            assert!(result.max_deviation < 1e-12);
        }
    }

    #[test]
    fn bitwise_equivalence_on_constant_zero_table_is_identity() {
        // A non-bijective table exercises the general-function path.
        let table = crate::perm::FunctionTable::constant(2, 0).unwrap();
        let mut oracle = CountedOracle::bit_standard(table);
        for x in 0..4usize {
            for b in 0..4usize {
                let mut state = StateVector::basis(layout(2), &[("x", x), ("b", b)]).unwrap();
                let before = state.clone();
                bit_phase_from_bit_standard(&mut oracle, &mut state, "x", "b").unwrap();
                assert!(state.max_amplitude_distance(&before).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn reversed_circuits_undo_their_conversions_on_the_full_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for kind in IdentityKind::ALL {
            let perm = seeded_perm(2, 55);
            let circuit = ConversionCircuit::for_identity(kind);
            let reversed = circuit.reversed();
            let mut set = OracleSet::for_identity(kind, &perm);
            for _ in 0..10 {
                // random state over the full two-register space
                let the_layout = layout(2);
                let mut amps: Vec<Complex64> = (0..the_layout.dimension())
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect();
                let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                for a in &mut amps {
                    *a = a.scale(1.0 / norm);
                }
                let state = StateVector::from_amplitudes(the_layout, amps).unwrap();
                let mut worked = state.clone();
                circuit
                    .apply(
                        &mut worked,
                        &mut set.primary,
                        set.companion.as_mut(),
                        "x",
                        "b",
                    )
                    .unwrap();
                reversed
                    .apply(
                        &mut worked,
                        &mut set.primary,
                        set.companion.as_mut(),
                        "x",
                        "b",
                    )
                    .unwrap();
                assert!(
                    worked.max_amplitude_distance(&state).unwrap() < 1e-10,
                    "reversal failed for {}",
                    kind.name()
                );
            }
        }
    }

    #[test]
    fn verify_rejects_widths_over_caps() {
        let perm = seeded_perm(4, 1);
        assert!(matches!(
            verify_identity(
                IdentityKind::PhaseFromStandard,
                &perm,
                VerifyMode::ExhaustiveBasis,
                Tolerance::default()
            ),
            Err(Error::VerifyTooWide { cap: 3, .. })
        ));
        let wide = seeded_perm(7, 1);
        assert!(matches!(
            verify_identity(
                IdentityKind::PhaseFromStandard,
                &wide,
                VerifyMode::RandomStates { count: 1, seed: 0 },
                Tolerance::default()
            ),
            Err(Error::VerifyTooWide { cap: 6, .. })
        ));
    }

    #[test]
    fn mismatched_direct_targets_are_caught() {
        let perm = seeded_perm(2, 9);
        // swap two images to fabricate a wrong reference
        let mut images = perm.table().images().to_vec();
        images.swap(0, 1);
        let wrong = Permutation::new(2, images).unwrap();
        for kind in IdentityKind::ALL {
            let result = verify_identity_against(
                kind,
                &perm,
                &wrong,
                VerifyMode::ExhaustiveBasis,
                Tolerance::default(),
            )
            .unwrap();
            assert!(
                !result.passed,
                "{} passed against a wrong target",
                kind.name()
            );
        }
    }

    #[test]
    fn identity_names_round_trip() {
        for kind in IdentityKind::ALL {
            assert_eq!(IdentityKind::from_name(kind.name()).unwrap(), kind);
        }
        assert!(matches!(
            IdentityKind::from_name("no_such_identity"),
            Err(Error::UnknownIdentity { .. })
        ));
    }

    #[test]
    fn verify_all_reports_eight_results() {
        let perm = seeded_perm(2, 3);
        let results = verify_all(&perm, 11, Tolerance::default()).unwrap();
        assert_eq!(results.len(), 8);
        assert!(results.iter().all(|r| r.passed));
        assert!(results.iter().all(|r| r.mode == "exhaustive-basis"));
    }
}
