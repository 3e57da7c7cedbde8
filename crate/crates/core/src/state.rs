//! Dense statevector over a named-register layout.
//!
//! Amplitudes are stored as one contiguous `Vec<Complex64>` of length
//! 2^total_qubits. Every operation here is unitary, so the squared norm
//! is preserved to within a few ulps; preparation routines check it
//! explicitly and measurement refuses to run on an unnormalized state.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::layout::{Field, RegisterLayout};

/// Numerical acceptance thresholds used throughout the crate.
///
/// `exact_eps` guards quantities that are exact up to rounding, such as
/// basis permutations; `abs_eps` guards quantities that accumulate
/// floating-point error through irrational factors, such as Fourier
/// transforms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub exact_eps: f64,
    pub abs_eps: f64,
}

impl Tolerance {
    pub fn new(exact_eps: f64, abs_eps: f64) -> Result<Self> {
        if exact_eps > 0.0 && exact_eps <= abs_eps && abs_eps < 1e-3 {
            Ok(Self { exact_eps, abs_eps })
        } else {
            Err(Error::BadTolerance {
                exact: exact_eps,
                abs: abs_eps,
            })
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            exact_eps: 1e-12,
            abs_eps: 1e-10,
        }
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Basis state with the given register assignments; registers not
    /// mentioned start in |0>.
    pub fn basis(layout: RegisterLayout, assignments: &[(&str, usize)]) -> Result<Self> {
        let mut index = 0usize;
        let mut seen: Vec<&str> = Vec::new();
        for (name, value) in assignments {
            if seen.contains(name) {
                return Err(Error::DuplicateRegister {
                    name: (*name).to_owned(),
                });
            }
            seen.push(name);
            let reg = layout.register(name)?;
            if *value >= reg.dimension() {
                return Err(Error::ValueOutOfRange {
                    register: (*name).to_owned(),
                    value: *value,
                    dimension: reg.dimension(),
                });
            }
            index = reg.field().replace_in(index, *value);
        }
        let mut amps = vec![ZERO; layout.dimension()];
        amps[index] = ONE;
        Ok(Self { layout, amps })
    }

    /// Product state from per-register amplitude factors; registers not
    /// mentioned start in |0>. Each factor must match its register's
    /// dimension, and the resulting state must be normalized.
    pub fn product(layout: RegisterLayout, factors: &[(&str, &[Complex64])]) -> Result<Self> {
        let mut seen: Vec<&str> = Vec::new();
        for (name, factor) in factors {
            if seen.contains(name) {
                return Err(Error::DuplicateRegister {
                    name: (*name).to_owned(),
                });
            }
            seen.push(name);
            let reg = layout.register(name)?;
            if factor.len() != reg.dimension() {
                return Err(Error::AmplitudeLength {
                    got: factor.len(),
                    want: reg.dimension(),
                });
            }
        }
        let basis_zero = [ONE];
        let fields: Vec<(Field, &[Complex64])> = layout
            .registers()
            .map(|reg| {
                let factor = factors
                    .iter()
                    .find(|(name, _)| name == &reg.name())
                    .map(|(_, f)| *f)
                    .unwrap_or(&basis_zero);
                (reg.field(), factor)
            })
            .collect();
        let amps = (0..layout.dimension())
            .map(|i| {
                fields.iter().fold(ONE, |acc, (field, factor)| {
                    let v = field.value_in(i);
                    if v < factor.len() {
                        acc * factor[v]
                    } else {
                        ZERO
                    }
                })
            })
            .collect();
        Self::from_amplitudes(layout, amps)
    }

    /// Wraps a raw amplitude vector, checking length and normalization.
    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dimension() {
            return Err(Error::AmplitudeLength {
                got: amps.len(),
                want: layout.dimension(),
            });
        }
        let state = Self { layout, amps };
        let eps = Tolerance::default().abs_eps;
        if !state.is_normalized(eps) {
            return Err(Error::NotNormalized {
                norm: state.norm_sqr(),
                eps,
            });
        }
        Ok(state)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, eps: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= eps
    }

    /// <self|other>. Layouts must agree register for register.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_layout(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest entrywise amplitude difference, the metric used by the
    /// identity-verification drivers.
    pub fn max_amplitude_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_layout(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn check_same_layout(&self, other: &Self) -> Result<()> {
        if self.layout != other.layout {
            return Err(Error::AmplitudeLength {
                got: other.amps.len(),
                want: self.amps.len(),
            });
        }
        Ok(())
    }

    /// Probability of reading `value` from `reg`.
    pub fn probability(&self, reg: &str, value: usize) -> Result<f64> {
        let field = self.layout.register(reg)?.field();
        if value >= field.dimension() {
            return Err(Error::ValueOutOfRange {
                register: reg.to_owned(),
                value,
                dimension: field.dimension(),
            });
        }
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| field.value_in(*i) == value)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Full outcome distribution of `reg`.
    pub fn distribution(&self, reg: &str) -> Result<Vec<f64>> {
        let field = self.layout.register(reg)?.field();
        let mut dist = vec![0.0; field.dimension()];
        for (i, a) in self.amps.iter().enumerate() {
            dist[field.value_in(i)] += a.norm_sqr();
        }
        Ok(dist)
    }

    /// Samples a measurement of `reg` and collapses the state onto the
    /// observed value. Deterministic for a given RNG stream.
    pub fn measure(&mut self, reg: &str, rng: &mut impl Rng) -> Result<usize> {
        let eps = Tolerance::default().abs_eps;
        if !self.is_normalized(eps) {
            return Err(Error::NotNormalized {
                norm: self.norm_sqr(),
                eps,
            });
        }
        let dist = self.distribution(reg)?;
        let draw: f64 = rng.gen();
        let mut acc = 0.0;
        let mut outcome = dist.len() - 1;
        for (v, p) in dist.iter().enumerate() {
            acc += p;
            if draw < acc {
                outcome = v;
                break;
            }
        }
        // Guard against landing in the rounding tail on a zero-probability value.
        while dist[outcome] == 0.0 {
            outcome -= 1;
        }
        let field = self.layout.register(reg)?.field();
        let scale = 1.0 / dist[outcome].sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if field.value_in(i) == outcome {
                *a = a.scale(scale);
            } else {
                *a = ZERO;
            }
        }
        Ok(outcome)
    }

    /// Hadamard on one qubit of a register (qubit 0 is the register MSB).
    pub fn apply_hadamard(&mut self, reg: &str, qubit: usize) -> Result<()> {
        let pos = self.layout.register(reg)?.qubit_bit(qubit)?;
        let bit = 1usize << pos;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let j = i | bit;
                let x = self.amps[i];
                let y = self.amps[j];
                self.amps[i] = (x + y).scale(FRAC_1_SQRT_2);
                self.amps[j] = (x - y).scale(FRAC_1_SQRT_2);
            }
        }
        Ok(())
    }

    /// Hadamard on every qubit of a register; self-inverse.
    pub fn apply_hadamard_layer(&mut self, reg: &str) -> Result<()> {
        let width = self.layout.register(reg)?.width();
        for qubit in 0..width {
            self.apply_hadamard(reg, qubit)?;
        }
        Ok(())
    }

    /// Fourier transform on one register:
    /// |j> -> N^{-1/2} sum_k exp(2 pi i j k / N) |k>.
    pub fn apply_qft(&mut self, reg: &str) -> Result<()> {
        self.fourier(reg, 1.0)
    }

    /// Inverse of [`apply_qft`].
    pub fn apply_qft_inverse(&mut self, reg: &str) -> Result<()> {
        self.fourier(reg, -1.0)
    }

    fn fourier(&mut self, reg: &str, sign: f64) -> Result<()> {
        let field = self.layout.register(reg)?.field();
        let n = field.dimension();
        // One shared table of N-th roots keeps the transform exactly
        // unitary against its inverse: both directions read the same
        // values, so F^{-1} F |psi> = |psi> to machine precision.
        let roots: Vec<Complex64> = (0..n)
            .map(|t| Complex64::from_polar(1.0, sign * 2.0 * PI * t as f64 / n as f64))
            .collect();
        let scale = 1.0 / (n as f64).sqrt();
        let stride = 1usize << field.shift;
        let span = stride * n;
        let mut lane = vec![ZERO; n];
        for base in (0..self.amps.len()).step_by(span) {
            for low in 0..stride {
                for (v, slot) in lane.iter_mut().enumerate() {
                    *slot = self.amps[base | (v * stride) | low];
                }
                for k in 0..n {
                    let mut acc = ZERO;
                    for (v, x) in lane.iter().enumerate() {
                        acc += roots[(v * k) % n] * x;
                    }
                    self.amps[base | (k * stride) | low] = acc.scale(scale);
                }
            }
        }
        Ok(())
    }

    /// Register-level reflection |j> -> |(N - j) mod N>, equal to the
    /// Fourier transform applied twice.
    pub fn apply_parity_reflection(&mut self, reg: &str) -> Result<()> {
        let field = self.layout.register(reg)?.field();
        let mask = field.dimension() - 1;
        self.permute_indices(|i| {
            let v = field.value_in(i);
            field.replace_in(i, v.wrapping_neg() & mask)
        });
        Ok(())
    }

    /// Exchanges the contents of two equal-width registers.
    pub fn apply_swap(&mut self, a: &str, b: &str) -> Result<()> {
        let (ra, rb) = self.layout.matched_pair(a, b)?;
        let (fa, fb) = (ra.field(), rb.field());
        self.permute_indices(|i| {
            let (va, vb) = (fa.value_in(i), fb.value_in(i));
            fb.replace_in(fa.replace_in(i, vb), va)
        });
        Ok(())
    }

    /// Exchanges two equal-width registers on the branch where one qubit
    /// of a third register is |1>.
    pub fn apply_controlled_swap(
        &mut self,
        ctrl: &str,
        ctrl_qubit: usize,
        a: &str,
        b: &str,
    ) -> Result<()> {
        let (ra, rb) = self.layout.matched_pair(a, b)?;
        let (fa, fb) = (ra.field(), rb.field());
        if ctrl == a || ctrl == b {
            return Err(Error::RegisterAliased {
                name: ctrl.to_owned(),
            });
        }
        let pos = self.layout.register(ctrl)?.qubit_bit(ctrl_qubit)?;
        let bit = 1usize << pos;
        self.permute_indices(|i| {
            if i & bit == 0 {
                i
            } else {
                let (va, vb) = (fa.value_in(i), fb.value_in(i));
                fb.replace_in(fa.replace_in(i, vb), va)
            }
        });
        Ok(())
    }

    /// Flips one qubit of a flag register wherever two equal-width
    /// registers hold the same value; self-inverse.
    pub fn apply_equality_flip(
        &mut self,
        a: &str,
        b: &str,
        flag: &str,
        flag_qubit: usize,
    ) -> Result<()> {
        let (ra, rb) = self.layout.matched_pair(a, b)?;
        let (fa, fb) = (ra.field(), rb.field());
        if flag == a || flag == b {
            return Err(Error::RegisterAliased {
                name: flag.to_owned(),
            });
        }
        let pos = self.layout.register(flag)?.qubit_bit(flag_qubit)?;
        let bit = 1usize << pos;
        self.permute_indices(|i| {
            if fa.value_in(i) == fb.value_in(i) {
                i ^ bit
            } else {
                i
            }
        });
        Ok(())
    }

    /// In-place modular addition |a>|b> -> |a>|(b + a) mod N>.
    pub fn apply_adder(&mut self, src: &str, dst: &str) -> Result<()> {
        let (rs, rd) = self.layout.matched_pair(src, dst)?;
        let (fs, fd) = (rs.field(), rd.field());
        let n = fd.dimension();
        self.permute_indices(|i| {
            let (a, b) = (fs.value_in(i), fd.value_in(i));
            fd.replace_in(i, (b + n - a) & (n - 1))
        });
        Ok(())
    }

    /// Inverse of [`apply_adder`]: |a>|b> -> |a>|(b - a) mod N>.
    pub fn apply_adder_inverse(&mut self, src: &str, dst: &str) -> Result<()> {
        let (rs, rd) = self.layout.matched_pair(src, dst)?;
        let (fs, fd) = (rs.field(), rd.field());
        let n = fd.dimension();
        self.permute_indices(|i| {
            let (a, b) = (fs.value_in(i), fd.value_in(i));
            fd.replace_in(i, (b + a) & (n - 1))
        });
        Ok(())
    }

    /// Reflection about the uniform vector on one register,
    /// 2|u><u| - 1 with u the uniform superposition.
    pub fn apply_inversion_about_mean(&mut self, reg: &str) -> Result<()> {
        let field = self.layout.register(reg)?.field();
        let n = field.dimension();
        let stride = 1usize << field.shift;
        let span = stride * n;
        let scale = 2.0 / n as f64;
        let mut means = vec![ZERO; stride];
        for base in (0..self.amps.len()).step_by(span) {
            means.fill(ZERO);
            for v in 0..n {
                let off = base | (v * stride);
                for (low, mean) in means.iter_mut().enumerate() {
                    *mean += self.amps[off | low];
                }
            }
            for mean in means.iter_mut() {
                *mean = mean.scale(scale);
            }
            for v in 0..n {
                let off = base | (v * stride);
                for (low, mean) in means.iter().enumerate() {
                    self.amps[off | low] = mean - self.amps[off | low];
                }
            }
        }
        Ok(())
    }

    /// Relabels one register's basis: amp_new[v] = amp_old[preimage(v)].
    /// `preimage` must be the inverse of the intended forward map and a
    /// bijection on 0..N, or the result will not be unitary.
    pub(crate) fn permute_register(
        &mut self,
        reg: &str,
        preimage: impl Fn(usize) -> usize,
    ) -> Result<()> {
        let field = self.layout.register(reg)?.field();
        self.permute_indices(|i| field.replace_in(i, preimage(field.value_in(i))));
        Ok(())
    }

    /// Relabels a target register conditioned on a control register:
    /// amp_new[c, t] = amp_old[c, preimage(c, t)]. The control register
    /// is untouched; `preimage(c, .)` must be a bijection for every c.
    pub(crate) fn permute_conditioned(
        &mut self,
        ctrl: &str,
        tgt: &str,
        preimage: impl Fn(usize, usize) -> usize,
    ) -> Result<()> {
        let (rc, rt) = self.layout.register_pair(ctrl, tgt)?;
        let (fc, ft) = (rc.field(), rt.field());
        self.permute_indices(|i| ft.replace_in(i, preimage(fc.value_in(i), ft.value_in(i))));
        Ok(())
    }

    /// Multiplies each basis amplitude by a phase depending on two
    /// register values. `phase` must be unimodular to preserve the norm.
    pub(crate) fn phase_conditioned(
        &mut self,
        a: &str,
        b: &str,
        phase: impl Fn(usize, usize) -> Complex64,
    ) -> Result<()> {
        let (ra, rb) = self.layout.register_pair(a, b)?;
        let (fa, fb) = (ra.field(), rb.field());
        for (i, amp) in self.amps.iter_mut().enumerate() {
            *amp *= phase(fa.value_in(i), fb.value_in(i));
        }
        Ok(())
    }

    /// Whole-index basis relabeling: amp_new[i] = amp_old[preimage(i)].
    fn permute_indices(&mut self, preimage: impl Fn(usize) -> usize) {
        let mut out = Vec::with_capacity(self.amps.len());
        out.extend((0..self.amps.len()).map(|i| self.amps[preimage(i)]));
        self.amps = out;
    }
}

/// Equal-amplitude unit vector supported on `subset`, as a factor for
/// [`StateVector::product`].
pub fn uniform_subset_factor(dimension: usize, subset: &[usize]) -> Result<Vec<Complex64>> {
    if subset.is_empty() {
        return Err(Error::BadSubset { dimension });
    }
    let mut factor = vec![ZERO; dimension];
    let amp = 1.0 / (subset.len() as f64).sqrt();
    for &v in subset {
        if v >= dimension {
            return Err(Error::BadSubset { dimension });
        }
        if factor[v] != ZERO {
            return Err(Error::BadSubset { dimension });
        }
        factor[v] = Complex64::new(amp, 0.0);
    }
    Ok(factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn single(n: usize) -> RegisterLayout {
        RegisterLayout::new(&[("r", n)]).unwrap()
    }

    fn random_state(layout: RegisterLayout, rng: &mut impl Rng) -> StateVector {
        let mut amps: Vec<Complex64> = (0..layout.dimension())
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a = a.scale(1.0 / norm);
        }
        StateVector::from_amplitudes(layout, amps).unwrap()
    }

    #[test]
    fn basis_preparation_places_single_amplitude() {
        let layout = RegisterLayout::new(&[("x", 2), ("b", 2)]).unwrap();
        let state = StateVector::basis(layout, &[("x", 3), ("b", 1)]).unwrap();
        for (i, a) in state.amplitudes().iter().enumerate() {
            let expect = if i == 3 * 4 + 1 { 1.0 } else { 0.0 };
            assert_eq!(a.re, expect);
            assert_eq!(a.im, 0.0);
        }
        assert_eq!(state.probability("x", 3).unwrap(), 1.0);
        assert_eq!(state.probability("b", 1).unwrap(), 1.0);
    }

    #[test]
    fn basis_rejects_out_of_range_value() {
        let layout = single(2);
        assert!(matches!(
            StateVector::basis(layout, &[("r", 4)]),
            Err(Error::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn hadamard_layer_gives_uniform_state_and_is_self_inverse() {
        let mut state = StateVector::basis(single(3), &[]).unwrap();
        state.apply_hadamard_layer("r").unwrap();
        let amp = 1.0 / 8f64.sqrt();
        for a in state.amplitudes() {
            assert_abs_diff_eq!(a.re, amp, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-15);
        }
        state.apply_hadamard_layer("r").unwrap();
        assert_abs_diff_eq!(state.amplitudes()[0].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn qft_inverse_undoes_qft() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let layout = RegisterLayout::new(&[("x", 2), ("b", 3)]).unwrap();
        let state = random_state(layout, &mut rng);
        let mut worked = state.clone();
        worked.apply_qft("b").unwrap();
        assert!(worked.is_normalized(1e-12));
        worked.apply_qft_inverse("b").unwrap();
        assert!(worked.max_amplitude_distance(&state).unwrap() < 1e-13);
    }

    #[test]
    fn qft_squared_equals_parity_reflection() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=5 {
            let state = random_state(single(n), &mut rng);
            let mut twice = state.clone();
            twice.apply_qft("r").unwrap();
            twice.apply_qft("r").unwrap();
            let mut reflected = state.clone();
            reflected.apply_parity_reflection("r").unwrap();
            assert!(twice.max_amplitude_distance(&reflected).unwrap() < 1e-12);
        }
    }

    #[test]
    fn parity_reflection_maps_basis_to_negated_value() {
        let n = 3;
        for j in 0..8usize {
            let mut state = StateVector::basis(single(n), &[("r", j)]).unwrap();
            state.apply_parity_reflection("r").unwrap();
            let expect = (8 - j) % 8;
            assert_eq!(state.probability("r", expect).unwrap(), 1.0);
        }
    }

    #[test]
    fn adder_adds_modulo_register_dimension() {
        let layout = RegisterLayout::new(&[("a", 2), ("b", 2)]).unwrap();
        for a in 0..4usize {
            for b in 0..4usize {
                let mut state = StateVector::basis(layout.clone(), &[("a", a), ("b", b)]).unwrap();
                state.apply_adder("a", "b").unwrap();
                assert_eq!(state.probability("b", (a + b) % 4).unwrap(), 1.0);
                assert_eq!(state.probability("a", a).unwrap(), 1.0);
                state.apply_adder_inverse("a", "b").unwrap();
                assert_eq!(state.probability("b", b).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn adder_applied_dimension_times_is_identity() {
        let layout = RegisterLayout::new(&[("a", 2), ("b", 2)]).unwrap();
        for a in 0..4usize {
            for b in 0..4usize {
                let mut state = StateVector::basis(layout.clone(), &[("a", a), ("b", b)]).unwrap();
                for _ in 0..4 {
                    state.apply_adder("a", "b").unwrap();
                }
                assert_eq!(state.probability("a", a).unwrap(), 1.0);
                assert_eq!(state.probability("b", b).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn swap_exchanges_register_contents() {
        let layout = RegisterLayout::new(&[("a", 2), ("b", 2)]).unwrap();
        let mut state = StateVector::basis(layout, &[("a", 1), ("b", 3)]).unwrap();
        state.apply_swap("a", "b").unwrap();
        assert_eq!(state.probability("a", 3).unwrap(), 1.0);
        assert_eq!(state.probability("b", 1).unwrap(), 1.0);
    }

    #[test]
    fn controlled_swap_fires_only_on_set_control() {
        let layout = RegisterLayout::new(&[("a", 2), ("b", 2), ("c", 1)]).unwrap();
        for ctrl in 0..2usize {
            let mut state =
                StateVector::basis(layout.clone(), &[("a", 2), ("b", 1), ("c", ctrl)]).unwrap();
            state.apply_controlled_swap("c", 0, "a", "b").unwrap();
            let (ea, eb) = if ctrl == 1 { (1, 2) } else { (2, 1) };
            assert_eq!(state.probability("a", ea).unwrap(), 1.0);
            assert_eq!(state.probability("b", eb).unwrap(), 1.0);
        }
    }

    #[test]
    fn equality_flip_marks_matching_registers() {
        let layout = RegisterLayout::new(&[("a", 2), ("b", 2), ("f", 1)]).unwrap();
        for a in 0..4usize {
            for b in 0..4usize {
                let mut state = StateVector::basis(layout.clone(), &[("a", a), ("b", b)]).unwrap();
                state.apply_equality_flip("a", "b", "f", 0).unwrap();
                let expect = usize::from(a == b);
                assert_eq!(state.probability("f", expect).unwrap(), 1.0);
                // self-inverse
                state.apply_equality_flip("a", "b", "f", 0).unwrap();
                assert_eq!(state.probability("f", 0).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn inversion_about_mean_fixes_uniform_state() {
        let mut state = StateVector::basis(single(3), &[]).unwrap();
        state.apply_hadamard_layer("r").unwrap();
        let before = state.clone();
        state.apply_inversion_about_mean("r").unwrap();
        assert!(state.max_amplitude_distance(&before).unwrap() < 1e-15);
    }

    #[test]
    fn inversion_about_mean_on_basis_state() {
        let mut state = StateVector::basis(single(2), &[("r", 0)]).unwrap();
        state.apply_inversion_about_mean("r").unwrap();
        let amps = state.amplitudes();
        assert_abs_diff_eq!(amps[0].re, 2.0 / 4.0 - 1.0, epsilon = 1e-15);
        for amp in &amps[1..] {
            assert_abs_diff_eq!(amp.re, 2.0 / 4.0, epsilon = 1e-15);
        }
        assert!(state.is_normalized(1e-12));
    }

    #[test]
    fn gates_preserve_norm_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 1..=4 {
            let layout = RegisterLayout::new(&[("a", n), ("b", n), ("f", 1)]).unwrap();
            for _ in 0..100 {
                let mut state = random_state(layout.clone(), &mut rng);
                state.apply_hadamard("a", 0).unwrap();
                state.apply_qft("b").unwrap();
                state.apply_adder("a", "b").unwrap();
                state.apply_controlled_swap("f", 0, "a", "b").unwrap();
                state.apply_equality_flip("a", "b", "f", 0).unwrap();
                state.apply_parity_reflection("a").unwrap();
                state.apply_inversion_about_mean("b").unwrap();
                assert!(state.is_normalized(1e-10));
            }
        }
    }

    #[test]
    fn measure_on_basis_state_is_deterministic_and_collapses() {
        let layout = RegisterLayout::new(&[("x", 2), ("b", 2)]).unwrap();
        let mut state = StateVector::basis(layout, &[("x", 2), ("b", 3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(state.measure("x", &mut rng).unwrap(), 2);
        assert!(state.is_normalized(1e-12));
        assert_eq!(state.probability("b", 3).unwrap(), 1.0);
    }

    #[test]
    fn measure_statistics_follow_amplitudes() {
        let mut zeros = 0u32;
        for trial in 0..2000u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + trial);
            let mut state = StateVector::basis(single(1), &[]).unwrap();
            state.apply_hadamard("r", 0).unwrap();
            if state.measure("r", &mut rng).unwrap() == 0 {
                zeros += 1;
            }
        }
        // 3 sigma around p = 1/2 over 2000 draws
        assert!((zeros as f64 / 2000.0 - 0.5).abs() < 0.034);
    }

    #[test]
    fn measure_rejects_unnormalized_state() {
        let mut state = StateVector::basis(single(2), &[]).unwrap();
        state.amps[0] = Complex64::new(0.5, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            state.measure("r", &mut rng),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn from_amplitudes_validates_shape_and_norm() {
        let layout = single(2);
        assert!(matches!(
            StateVector::from_amplitudes(layout.clone(), vec![ZERO; 3]),
            Err(Error::AmplitudeLength { .. })
        ));
        assert!(matches!(
            StateVector::from_amplitudes(layout, vec![ZERO; 4]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn product_state_multiplies_factors() {
        let layout = RegisterLayout::new(&[("l", 2), ("r", 2), ("anc", 1)]).unwrap();
        let subset = uniform_subset_factor(4, &[0, 2]).unwrap();
        let anc = [ZERO, ONE];
        let state =
            StateVector::product(layout, &[("l", &subset), ("r", &subset), ("anc", &anc)]).unwrap();
        assert!(state.is_normalized(1e-12));
        assert_abs_diff_eq!(state.probability("anc", 1).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(state.probability("l", 0).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(state.probability("l", 2).unwrap(), 0.5, epsilon = 1e-12);
        assert_eq!(state.probability("l", 1).unwrap(), 0.0);
    }

    #[test]
    fn uniform_subset_factor_rejects_bad_subsets() {
        assert!(uniform_subset_factor(4, &[]).is_err());
        assert!(uniform_subset_factor(4, &[4]).is_err());
        assert!(uniform_subset_factor(4, &[1, 1]).is_err());
    }

    #[test]
    fn tolerance_ordering_is_enforced() {
        assert!(Tolerance::new(1e-12, 1e-10).is_ok());
        assert!(Tolerance::new(1e-9, 1e-10).is_err());
        assert!(Tolerance::new(0.0, 1e-10).is_err());
        assert!(Tolerance::new(1e-4, 1e-3).is_err());
    }
}
