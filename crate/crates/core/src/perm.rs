//! Function tables and permutations on Z_{2^n}.
//!
//! Oracles are black boxes over explicit image tables. Tables are capped
//! at n = 12 (4096 entries); the dense simulator runs out of qubits long
//! before that bound matters, but the cap keeps accidental huge
//! allocations out of file parsing.

use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Widest domain a function table may have.
pub const MAX_TABLE_QUBITS: usize = 12;

/// An arbitrary function f: Z_{2^n} -> Z_{2^n}, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    n: usize,
    images: Vec<usize>,
}

impl FunctionTable {
    pub fn new(n: usize, images: Vec<usize>) -> Result<Self> {
        if n > MAX_TABLE_QUBITS {
            return Err(Error::TableTooWide {
                n,
                cap: MAX_TABLE_QUBITS,
            });
        }
        let want = 1usize << n;
        if images.len() != want {
            return Err(Error::TableLength {
                n,
                want,
                got: images.len(),
            });
        }
        if let Some(&image) = images.iter().find(|&&v| v >= want) {
            return Err(Error::ImageOutOfRange {
                image,
                dimension: want,
            });
        }
        Ok(Self { n, images })
    }

    /// The constant function x -> value.
    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::new(n, vec![value; 1usize << n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

/// A bijection on Z_{2^n}, carrying its inverse table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    table: FunctionTable,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn new(n: usize, images: Vec<usize>) -> Result<Self> {
        Self::from_table(FunctionTable::new(n, images)?)
    }

    pub fn from_table(table: FunctionTable) -> Result<Self> {
        let mut inverse = vec![usize::MAX; table.dimension()];
        for (x, &y) in table.images().iter().enumerate() {
            if inverse[y] != usize::MAX {
                return Err(Error::NotBijective { image: y });
            }
            inverse[y] = x;
        }
        Ok(Self { table, inverse })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (0..1usize << n).collect())
    }

    /// Uniformly random permutation via a seeded Fisher-Yates shuffle.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        if n > MAX_TABLE_QUBITS {
            return Err(Error::TableTooWide {
                n,
                cap: MAX_TABLE_QUBITS,
            });
        }
        let mut images: Vec<usize> = (0..1usize << n).collect();
        images.shuffle(rng);
        Self::new(n, images)
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn dimension(&self) -> usize {
        self.table.dimension()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.table.image(x)
    }

    #[inline]
    pub fn preimage(&self, y: usize) -> usize {
        self.inverse[y]
    }

    pub fn table(&self) -> &FunctionTable {
        &self.table
    }

    /// The inverse bijection as its own permutation.
    pub fn inverted(&self) -> Self {
        Self {
            table: FunctionTable {
                n: self.table.n,
                images: self.inverse.clone(),
            },
            inverse: self.table.images.clone(),
        }
    }

    /// Composition (self . other): x -> self(other(x)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::TableLength {
                n: self.n(),
                want: self.dimension(),
                got: other.dimension(),
            });
        }
        Self::new(
            self.n(),
            (0..self.dimension())
                .map(|x| self.image(other.image(x)))
                .collect(),
        )
    }

    /// Renders the two-line text form: `n` on the first line, the image
    /// table space-separated on the second.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n());
        let mut first = true;
        for v in self.table.images() {
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
            first = false;
        }
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_named(text, "<input>")
    }

    fn parse_named(text: &str, path: &str) -> Result<Self> {
        let fail = |line: usize, reason: String| Error::FileFormat {
            path: path.to_owned(),
            line,
            reason,
        };
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| fail(1, "missing width line".into()))?;
        let n: usize = header.trim().parse().map_err(|_| {
            fail(
                1,
                format!("expected the width n, found `{}`", header.trim()),
            )
        })?;
        if n > MAX_TABLE_QUBITS {
            return Err(fail(
                1,
                format!("n={n} above the table cap of {MAX_TABLE_QUBITS}"),
            ));
        }
        let body = lines
            .next()
            .ok_or_else(|| fail(2, "missing image line".into()))?;
        for (extra_no, extra) in lines.enumerate() {
            if !extra.trim().is_empty() {
                return Err(fail(extra_no + 3, "unexpected trailing content".into()));
            }
        }
        let mut images = Vec::with_capacity(1 << n);
        for token in body.split_whitespace() {
            let v: usize = token
                .parse()
                .map_err(|_| fail(2, format!("`{token}` is not an integer image")))?;
            images.push(v);
        }
        Self::new(n, images).map_err(|e| fail(2, e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_named(&text, &path.display().to_string())
    }

    pub fn to_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.render()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}
