//! Isomorphism testing for small asymmetric graphs by comparing
//! relabeling superpositions.
//!
//! A graph on V vertices is encoded as the bits of its upper-triangular
//! adjacency matrix in row-major order. For an asymmetric graph (one
//! whose only automorphism is the identity) the V! relabelings produce
//! V! distinct encodings, so the uniform superposition over them is a
//! well-defined state with exactly V! support keys. Two asymmetric
//! graphs are isomorphic exactly when their superpositions coincide as
//! sets, and non-isomorphic graphs share no key at all, so the overlap
//! is exactly 1 or exactly 0 and the ancilla-swap comparison from the
//! subset-promise circuit applies unchanged.
//!
//! States live in a sparse map keyed by encoding: V = 6 already needs
//! 15 adjacency bits per register, and a dense two-register simulation
//! would exceed the simulator's qubit budget, while the support never
//! exceeds V!.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::promise::{TrialSummary, Verdict};

use itertools::Itertools;
use num_complex::Complex64;
use rand::Rng;

/// Brute-force automorphism checks stop here (8! = 40320 relabelings).
pub const AUTOMORPHISM_CAP: usize = 8;
/// Superposition construction stops here (7! = 5040 support keys).
pub const SUPERPOSITION_CAP: usize = 7;

/// An undirected simple graph with a canonical sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates and canonicalizes: endpoints in range, no self-loops,
    /// no duplicates (in either orientation), edges stored as sorted
    /// (low, high) pairs.
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertices > AUTOMORPHISM_CAP {
            return Err(Error::GraphTooLarge {
                vertices,
                cap: AUTOMORPHISM_CAP,
            });
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v || u >= vertices || v >= vertices {
                return Err(Error::BadEdge { u, v, vertices });
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        for pair in canonical.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateEdge {
                    u: pair[0].0,
                    v: pair[0].1,
                });
            }
        }
        Ok(Self {
            vertices,
            edges: canonical,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Bit position of the pair (i, j), i < j, in the row-major
    /// upper-triangular adjacency encoding.
    fn pair_bit(&self, i: usize, j: usize) -> u32 {
        (i * self.vertices - i * (i + 1) / 2 + (j - i - 1)) as u32
    }

    /// The canonical encoding of this graph's adjacency matrix.
    pub fn encode(&self) -> u64 {
        self.edges
            .iter()
            .fold(0u64, |acc, &(i, j)| acc | 1u64 << self.pair_bit(i, j))
    }

    /// The graph with vertex i renamed to `relabeling[i]`.
    pub fn relabeled(&self, relabeling: &[usize]) -> Result<Self> {
        if relabeling.len() != self.vertices {
            return Err(Error::VertexCountMismatch {
                a: self.vertices,
                b: relabeling.len(),
            });
        }
        let mut seen = vec![false; self.vertices];
        for &v in relabeling {
            if v >= self.vertices || seen[v] {
                return Err(Error::NotBijective { image: v });
            }
            seen[v] = true;
        }
        let moved: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (relabeling[u], relabeling[v]))
            .collect();
        Self::new(self.vertices, &moved)
    }

    /// Number of relabelings that map the graph onto itself, by
    /// exhaustive enumeration; at least 1 (the identity).
    pub fn automorphism_count(&self) -> usize {
        let own = self.encode();
        (0..self.vertices)
            .permutations(self.vertices)
            .filter(|p| {
                self.relabeled(p)
                    .expect("enumerated relabeling is valid")
                    .encode()
                    == own
            })
            .count()
    }

    /// True when the identity is the only automorphism, which makes
    /// relabeling injective on encodings.
    pub fn is_asymmetric(&self) -> bool {
        self.automorphism_count() == 1
    }

    /// Renders the text form: `V E` on the first line, one `u v` edge
    /// per following line, in canonical order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.vertices, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
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
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| fail(1, "missing header line `V E`".into()))?;
        let mut head = header.split_whitespace();
        let (v_tok, e_tok) = match (head.next(), head.next(), head.next()) {
            (Some(v), Some(e), None) => (v, e),
            _ => {
                return Err(fail(
                    1,
                    format!("expected `V E`, found `{}`", header.trim()),
                ))
            }
        };
        let vertices: usize = v_tok
            .parse()
            .map_err(|_| fail(1, format!("`{v_tok}` is not a vertex count")))?;
        let edge_count: usize = e_tok
            .parse()
            .map_err(|_| fail(1, format!("`{e_tok}` is not an edge count")))?;
        if vertices > AUTOMORPHISM_CAP {
            return Err(fail(
                1,
                format!("{vertices} vertices above the cap of {AUTOMORPHISM_CAP}"),
            ));
        }

        let mut edges = Vec::with_capacity(edge_count);
        let mut partial = Graph::new(vertices, &[]).expect("empty graph within cap");
        for _ in 0..edge_count {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| fail(edges.len() + 2, "missing edge line".into()))?;
            let mut tokens = line.split_whitespace();
            let (u_tok, v_tok) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => {
                    return Err(fail(
                        idx + 1,
                        format!("expected `u v`, found `{}`", line.trim()),
                    ))
                }
            };
            let u: usize = u_tok
                .parse()
                .map_err(|_| fail(idx + 1, format!("`{u_tok}` is not a vertex")))?;
            let v: usize = v_tok
                .parse()
                .map_err(|_| fail(idx + 1, format!("`{v_tok}` is not a vertex")))?;
            edges.push((u, v));
            // validate incrementally so errors name the offending line
            partial = Graph::new(vertices, &edges).map_err(|e| fail(idx + 1, e.to_string()))?;
        }
        for (idx, extra) in lines {
            if !extra.trim().is_empty() {
                return Err(fail(idx + 1, "unexpected trailing content".into()));
            }
        }
        Ok(partial)
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

/// A normalized state over graph encodings, stored sparsely.
#[derive(Clone, Debug)]
pub struct SparseState {
    amps: BTreeMap<u64, Complex64>,
}

impl SparseState {
    /// Wraps an amplitude map, checking normalization.
    pub fn from_amplitudes(amps: BTreeMap<u64, Complex64>) -> Result<Self> {
        let norm: f64 = amps.values().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm, eps: 1e-10 });
        }
        Ok(Self { amps })
    }

    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, key: u64) -> Complex64 {
        self.amps
            .get(&key)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u64, &Complex64)> {
        self.amps.iter()
    }

    /// <self|other> over the shared support.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .filter_map(|(key, amp)| other.amps.get(key).map(|b| amp.conj() * b))
            .sum()
    }

    /// Number of keys carrying weight in both states.
    pub fn shared_support(&self, other: &Self) -> usize {
        self.amps
            .keys()
            .filter(|key| other.amps.contains_key(key))
            .count()
    }
}

/// The uniform superposition over all V! relabelings of an asymmetric
/// graph: V! distinct keys, each with amplitude 1/sqrt(V!).
pub fn relabeling_superposition(g: &Graph) -> Result<SparseState> {
    if g.vertices() > SUPERPOSITION_CAP {
        return Err(Error::GraphTooLarge {
            vertices: g.vertices(),
            cap: SUPERPOSITION_CAP,
        });
    }
    if !g.is_asymmetric() {
        return Err(Error::AutomorphicGraph);
    }
    let factorial: usize = (1..=g.vertices()).product();
    let amp = Complex64::new(1.0 / (factorial as f64).sqrt(), 0.0);
    let mut amps = BTreeMap::new();
    for relabeling in (0..g.vertices()).permutations(g.vertices()) {
        let key = g.relabeled(&relabeling)?.encode();
        let collided = amps.insert(key, amp).is_some();
        debug_assert!(!collided, "asymmetric graphs relabel injectively");
    }
    debug_assert_eq!(amps.len(), factorial);
    SparseState::from_amplitudes(amps)
}

/// Everything one isomorphism comparison produces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphComparison {
    pub vertices: usize,
    /// |<psi1|psi2>|, exactly 1.0 or 0.0 for asymmetric inputs.
    pub overlap: f64,
    /// Per-round probability of the disjointness witness |0>.
    pub p_zero: f64,
    #[serde(flatten)]
    pub summary: TrialSummary,
}

/// Builds both relabeling superpositions, evaluates the ancilla-swap
/// comparison analytically (p-zero = (1 - overlap^2) / 2, the uniform
/// amplitudes make the overlap an exact support-count ratio), then
/// samples `trials` rounds, round i drawing from the rng seeded with
/// `master_seed + i`.
pub fn compare_graphs(
    g1: &Graph,
    g2: &Graph,
    trials: usize,
    master_seed: u64,
) -> Result<GraphComparison> {
    if g1.vertices() != g2.vertices() {
        return Err(Error::VertexCountMismatch {
            a: g1.vertices(),
            b: g2.vertices(),
        });
    }
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let psi1 = relabeling_superposition(g1)?;
    let psi2 = relabeling_superposition(g2)?;
    let factorial: usize = (1..=g1.vertices()).product();
    let overlap = psi1.shared_support(&psi2) as f64 / factorial as f64;
    let p_zero = (1.0 - overlap * overlap) / 2.0;

    let mut zero_count = 0usize;
    for trial in 0..trials {
        let mut rng = crate::trial_rng(master_seed, trial as u64);
        if rng.gen_bool(p_zero) {
            zero_count += 1;
        }
    }
    Ok(GraphComparison {
        vertices: g1.vertices(),
        overlap,
        p_zero,
        summary: TrialSummary::from_counts(
            trials,
            zero_count,
            (Verdict::Isomorphic, Verdict::NonIsomorphic),
        ),
    })
}
