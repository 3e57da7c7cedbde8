//! The five black-box oracle families for a function f on Z_{2^n}, with
//! query counting.
//!
//! For N = 2^n and registers |x> (argument) and |b> (ancilla):
//!
//! * standard:      |x>|b> -> |x>|(b + f(x)) mod N>   (modular addition)
//! * phase:         |x>|b> -> exp(2 pi i f(x) b / N) |x>|b>
//! * minimal:       |x>    -> |f(x)>                  (bijective f only)
//! * bit-standard:  |x>|b> -> |x>|b XOR f(x)>         (self-inverse)
//! * bit-phase:     |x>|b> -> (-1)^(f(x).b) |x>|b>    (self-inverse)
//!
//! where f(x).b is the inner product of bit strings mod 2. The modular
//! addition in the standard family and the XOR in the bit-standard
//! family coincide only at n = 1; the two families are kept strictly
//! apart by the kind tag.
//!
//! Every `apply_*` call, forward or inverse, bumps the query counter by
//! exactly one. The counter is the currency of the conversion and
//! search routines, so nothing here touches a state without paying.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{FunctionTable, Permutation};
use crate::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Standard,
    Phase,
    Minimal,
    BitStandard,
    BitPhase,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Standard => "standard",
            OracleKind::Phase => "phase",
            OracleKind::Minimal => "minimal",
            OracleKind::BitStandard => "bit-standard",
            OracleKind::BitPhase => "bit-phase",
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Direction of a query. Inverse queries to self-inverse kinds apply the
/// same operator but are still tallied as inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

/// A black-box oracle of one fixed kind with a monotone query counter.
#[derive(Clone, Debug)]
pub struct CountedOracle {
    kind: OracleKind,
    table: FunctionTable,
    /// Image table of f^{-1}; present exactly for the minimal kind.
    inverse: Option<Vec<usize>>,
    forward_queries: u64,
    inverse_queries: u64,
}

impl CountedOracle {
    pub fn standard(table: FunctionTable) -> Self {
        Self::of_kind(OracleKind::Standard, table)
    }

    pub fn phase(table: FunctionTable) -> Self {
        Self::of_kind(OracleKind::Phase, table)
    }

    pub fn bit_standard(table: FunctionTable) -> Self {
        Self::of_kind(OracleKind::BitStandard, table)
    }

    pub fn bit_phase(table: FunctionTable) -> Self {
        Self::of_kind(OracleKind::BitPhase, table)
    }

    /// Minimal oracles exist only for bijections, so construction takes
    /// a checked permutation rather than a bare table.
    pub fn minimal(perm: &Permutation) -> Self {
        Self {
            kind: OracleKind::Minimal,
            table: perm.table().clone(),
            inverse: Some((0..perm.dimension()).map(|y| perm.preimage(y)).collect()),
            forward_queries: 0,
            inverse_queries: 0,
        }
    }

    fn of_kind(kind: OracleKind, table: FunctionTable) -> Self {
        Self {
            kind,
            table,
            inverse: None,
            forward_queries: 0,
            inverse_queries: 0,
        }
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn dimension(&self) -> usize {
        self.table.dimension()
    }

    pub fn table(&self) -> &FunctionTable {
        &self.table
    }

    /// Total queries answered since construction or the last reset,
    /// forward and inverse alike.
    pub fn query_count(&self) -> u64 {
        self.forward_queries + self.inverse_queries
    }

    pub fn forward_queries(&self) -> u64 {
        self.forward_queries
    }

    pub fn inverse_queries(&self) -> u64 {
        self.inverse_queries
    }

    pub fn reset_queries(&mut self) {
        self.forward_queries = 0;
        self.inverse_queries = 0;
    }

    /// |x>|b> -> |x>|(b + f(x)) mod N>.
    pub fn apply_standard(&mut self, state: &mut StateVector, x: &str, b: &str) -> Result<()> {
        self.expect(OracleKind::Standard, "standard")?;
        self.check_width(state, x)?;
        self.check_width(state, b)?;
        let (table, n) = (&self.table, self.dimension());
        state.permute_conditioned(x, b, |xv, bv| (bv + n - table.image(xv)) & (n - 1))?;
        self.forward_queries += 1;
        Ok(())
    }

    /// |x>|b> -> |x>|(b - f(x)) mod N>.
    pub fn apply_standard_inverse(
        &mut self,
        state: &mut StateVector,
        x: &str,
        b: &str,
    ) -> Result<()> {
        self.expect(OracleKind::Standard, "standard-inverse")?;
        self.check_width(state, x)?;
        self.check_width(state, b)?;
        let (table, n) = (&self.table, self.dimension());
        state.permute_conditioned(x, b, |xv, bv| (bv + table.image(xv)) & (n - 1))?;
        self.inverse_queries += 1;
        Ok(())
    }

    /// Multiplies |x>|b> by exp(2 pi i f(x) b / N).
    pub fn apply_phase(&mut self, state: &mut StateVector, x: &str, b: &str) -> Result<()> {
        self.phase_with_sign(state, x, b, 1.0, "phase")?;
        self.forward_queries += 1;
        Ok(())
    }

    /// Multiplies |x>|b> by exp(-2 pi i f(x) b / N).
    pub fn apply_phase_inverse(&mut self, state: &mut StateVector, x: &str, b: &str) -> Result<()> {
        self.phase_with_sign(state, x, b, -1.0, "phase-inverse")?;
        self.inverse_queries += 1;
        Ok(())
    }

    fn phase_with_sign(
        &self,
        state: &mut StateVector,
        x: &str,
        b: &str,
        sign: f64,
        requested: &str,
    ) -> Result<()> {
        self.expect(OracleKind::Phase, requested)?;
        self.check_width(state, x)?;
        self.check_width(state, b)?;
        let table = &self.table;
        let step = sign * 2.0 * PI / self.dimension() as f64;
        state.phase_conditioned(x, b, |xv, bv| {
            Complex64::from_polar(1.0, step * (table.image(xv) * bv) as f64)
        })
    }

    /// |x> -> |f(x)> on a single register.
    pub fn apply_minimal(&mut self, state: &mut StateVector, x: &str) -> Result<()> {
        self.expect(OracleKind::Minimal, "minimal")?;
        self.check_width(state, x)?;
        let inverse = self
            .inverse
            .as_deref()
            .expect("minimal oracle holds its inverse");
        state.permute_register(x, |v| inverse[v])?;
        self.forward_queries += 1;
        Ok(())
    }

    /// |y> -> |f^{-1}(y)> on a single register.
    pub fn apply_minimal_inverse(&mut self, state: &mut StateVector, x: &str) -> Result<()> {
        self.expect(OracleKind::Minimal, "minimal-inverse")?;
        self.check_width(state, x)?;
        let table = &self.table;
        state.permute_register(x, |v| table.image(v))?;
        self.inverse_queries += 1;
        Ok(())
    }

    /// |x>|b> -> |x>|b XOR f(x)>; its own inverse.
    pub fn apply_bit_standard(&mut self, state: &mut StateVector, x: &str, b: &str) -> Result<()> {
        self.bit_standard_map(state, x, b, "bit-standard")?;
        self.forward_queries += 1;
        Ok(())
    }

    /// Same operator as [`apply_bit_standard`], tallied as an inverse query.
    pub fn apply_bit_standard_inverse(
        &mut self,
        state: &mut StateVector,
        x: &str,
        b: &str,
    ) -> Result<()> {
        self.bit_standard_map(state, x, b, "bit-standard-inverse")?;
        self.inverse_queries += 1;
        Ok(())
    }

    fn bit_standard_map(
        &self,
        state: &mut StateVector,
        x: &str,
        b: &str,
        requested: &str,
    ) -> Result<()> {
        self.expect(OracleKind::BitStandard, requested)?;
        self.check_width(state, x)?;
        self.check_width(state, b)?;
        let table = &self.table;
        state.permute_conditioned(x, b, |xv, bv| bv ^ table.image(xv))
    }

    /// Multiplies |x>|b> by (-1)^(f(x).b); its own inverse.
    pub fn apply_bit_phase(&mut self, state: &mut StateVector, x: &str, b: &str) -> Result<()> {
        self.bit_phase_map(state, x, b, "bit-phase")?;
        self.forward_queries += 1;
        Ok(())
    }

    /// Same operator as [`apply_bit_phase`], tallied as an inverse query.
    pub fn apply_bit_phase_inverse(
        &mut self,
        state: &mut StateVector,
        x: &str,
        b: &str,
    ) -> Result<()> {
        self.bit_phase_map(state, x, b, "bit-phase-inverse")?;
        self.inverse_queries += 1;
        Ok(())
    }

    fn bit_phase_map(
        &self,
        state: &mut StateVector,
        x: &str,
        b: &str,
        requested: &str,
    ) -> Result<()> {
        self.expect(OracleKind::BitPhase, requested)?;
        self.check_width(state, x)?;
        self.check_width(state, b)?;
        let table = &self.table;
        let signs = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        state.phase_conditioned(x, b, |xv, bv| {
            signs[((table.image(xv) & bv).count_ones() & 1) as usize]
        })
    }

    fn expect(&self, kind: OracleKind, requested: &str) -> Result<()> {
        if self.kind != kind {
            return Err(Error::WrongOracleKind {
                actual: self.kind.name().to_owned(),
                requested: requested.to_owned(),
            });
        }
        Ok(())
    }

    fn check_width(&self, state: &StateVector, reg: &str) -> Result<()> {
        let width = state.layout().register(reg)?.width();
        if width != self.table.n() {
            return Err(Error::OracleWidth {
                n: self.table.n(),
                register: reg.to_owned(),
                width,
            });
        }
        Ok(())
    }
}
