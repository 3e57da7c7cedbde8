use crate::error::{Error, Result};

/// Widest layout the dense simulator will allocate. 2^26 amplitudes is
/// one gigabyte of complex doubles; anything wider is refused up front.
pub const MAX_QUBITS: usize = 26;

/// One named field of qubits inside a layout.
///
/// The first register declared in a layout occupies the most significant
/// bits of the basis index, so a layout `[("x", n), ("b", n)]` encodes the
/// basis state |x>|b> at index `x * 2^n + b`. Within a register, qubit 0
/// is the register's most significant bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    name: String,
    width: usize,
    shift: usize,
}

impl Register {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of qubits in this register.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of basis values this register can hold (2^width).
    pub fn dimension(&self) -> usize {
        1 << self.width
    }

    /// Register contents encoded in a full basis index.
    #[inline]
    pub fn value_in(&self, index: usize) -> usize {
        (index >> self.shift) & (self.dimension() - 1)
    }

    /// Global bit position of one qubit; qubit 0 is the register's MSB.
    pub(crate) fn qubit_bit(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.width {
            return Err(Error::QubitOutOfRange {
                register: self.name.clone(),
                index: qubit,
                width: self.width,
            });
        }
        Ok(self.shift + (self.width - 1 - qubit))
    }

    /// Copyable view of the register's position, for use inside hot loops
    /// where borrowing the layout would get in the way.
    pub(crate) fn field(&self) -> Field {
        Field {
            shift: self.shift,
            width: self.width,
        }
    }
}

/// Position of a register inside the basis index, detached from its name.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub shift: usize,
    pub width: usize,
}

impl Field {
    #[inline]
    pub fn dimension(self) -> usize {
        1 << self.width
    }

    #[inline]
    pub fn value_in(self, index: usize) -> usize {
        (index >> self.shift) & (self.dimension() - 1)
    }

    #[inline]
    pub fn replace_in(self, index: usize, value: usize) -> usize {
        let mask = (self.dimension() - 1) << self.shift;
        (index & !mask) | (value << self.shift)
    }
}

/// Ordered set of named registers spanning a dense statevector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    registers: Vec<Register>,
    qubits: usize,
}

impl RegisterLayout {
    /// Builds a layout from `(name, width)` pairs, first pair at the top
    /// (most significant bits). Names must be unique and widths >= 1.
    pub fn new(spec: &[(&str, usize)]) -> Result<Self> {
        let qubits: usize = spec.iter().map(|(_, w)| w).sum();
        if qubits > MAX_QUBITS {
            return Err(Error::LayoutTooWide {
                qubits,
                cap: MAX_QUBITS,
            });
        }
        let mut registers = Vec::with_capacity(spec.len());
        let mut used = qubits;
        for (name, width) in spec {
            if *width == 0 {
                return Err(Error::EmptyRegister {
                    name: (*name).to_owned(),
                });
            }
            if registers.iter().any(|r: &Register| r.name == *name) {
                return Err(Error::DuplicateRegister {
                    name: (*name).to_owned(),
                });
            }
            used -= width;
            registers.push(Register {
                name: (*name).to_owned(),
                width: *width,
                shift: used,
            });
        }
        Ok(Self { registers, qubits })
    }

    pub fn total_qubits(&self) -> usize {
        self.qubits
    }

    /// Length of the amplitude vector (2^total_qubits).
    pub fn dimension(&self) -> usize {
        1 << self.qubits
    }

    pub fn register(&self, name: &str) -> Result<&Register> {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownRegister {
                name: name.to_owned(),
            })
    }

    pub fn registers(&self) -> impl Iterator<Item = &Register> {
        self.registers.iter()
    }

    /// Two distinct registers, checked to be non-aliased.
    pub(crate) fn register_pair(&self, a: &str, b: &str) -> Result<(&Register, &Register)> {
        if a == b {
            return Err(Error::RegisterAliased { name: a.to_owned() });
        }
        Ok((self.register(a)?, self.register(b)?))
    }

    /// Like `register_pair` but additionally demands equal widths, which
    /// every two-register arithmetic operation relies on.
    pub(crate) fn matched_pair(&self, a: &str, b: &str) -> Result<(&Register, &Register)> {
        let (ra, rb) = self.register_pair(a, b)?;
        if ra.width() != rb.width() {
            return Err(Error::WidthMismatch {
                a: ra.name().to_owned(),
                a_width: ra.width(),
                b: rb.name().to_owned(),
                b_width: rb.width(),
            });
        }
        Ok((ra, rb))
    }
}
