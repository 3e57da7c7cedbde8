use thiserror::Error;

/// Errors produced by state preparation, oracle application, and the
/// verification drivers. Every variant names the offending quantity so
/// callers can surface the message without extra context.
#[derive(Debug, Error)]
pub enum Error {
    #[error("register `{name}` is not part of this layout")]
    UnknownRegister { name: String },

    #[error("register name `{name}` declared twice in one layout")]
    DuplicateRegister { name: String },

    #[error("register `{name}` must have width >= 1")]
    EmptyRegister { name: String },

    #[error("layout spans {qubits} qubits, above the simulator cap of {cap}")]
    LayoutTooWide { qubits: usize, cap: usize },

    #[error("qubit {index} out of range for register `{register}` of width {width}")]
    QubitOutOfRange {
        register: String,
        index: usize,
        width: usize,
    },

    #[error("value {value} does not fit in register `{register}` ({dimension} basis states)")]
    ValueOutOfRange {
        register: String,
        value: usize,
        dimension: usize,
    },

    #[error(
        "registers `{a}` ({a_width} qubits) and `{b}` ({b_width} qubits) must have equal width"
    )]
    WidthMismatch {
        a: String,
        a_width: usize,
        b: String,
        b_width: usize,
    },

    #[error("register `{name}` used twice where distinct registers are required")]
    RegisterAliased { name: String },

    #[error("amplitude vector has length {got}, layout needs {want}")]
    AmplitudeLength { got: usize, want: usize },

    #[error("state norm is {norm}, not 1 within tolerance {eps}")]
    NotNormalized { norm: f64, eps: f64 },

    #[error(
        "tolerances must satisfy 0 < exact_eps <= abs_eps < 1e-3 (got exact={exact}, abs={abs})"
    )]
    BadTolerance { exact: f64, abs: f64 },

    #[error("function table for n={n} must list {want} images, got {got}")]
    TableLength { n: usize, want: usize, got: usize },

    #[error("image {image} out of range for a function on {dimension} points")]
    ImageOutOfRange { image: usize, dimension: usize },

    #[error("function is not a bijection: image {image} appears more than once")]
    NotBijective { image: usize },

    #[error("width n={n} above the table cap of {cap}")]
    TableTooWide { n: usize, cap: usize },

    #[error("oracle of kind `{actual}` cannot answer `{requested}` queries")]
    WrongOracleKind { actual: String, requested: String },

    #[error("oracle over {n} qubits cannot act on register `{register}` of width {width}")]
    OracleWidth {
        n: usize,
        register: String,
        width: usize,
    },

    #[error(
        "marking oracle needs its scratch register in |0>, found weight {weight:.3e} elsewhere"
    )]
    ScratchNotClear { weight: f64 },

    #[error("target value {value} out of range for a search over {dimension} points")]
    TargetOutOfRange { value: usize, dimension: usize },

    #[error("unknown identity `{name}`")]
    UnknownIdentity { name: String },

    #[error("identity verification for n={n} above cap of {cap}")]
    VerifyTooWide { n: usize, cap: usize },

    #[error("subset must be non-empty, within 0..{dimension}, and free of repeats")]
    BadSubset { dimension: usize },

    #[error("disjoint-image instances need 2*|S| <= {dimension}, got |S| = {subset}")]
    SubsetTooLarge { subset: usize, dimension: usize },

    #[error("subset of size 1 cannot be shuffled without fixed points")]
    SubsetTooSmallForDerangement,

    #[error("image sets are neither equal nor disjoint ({shared} shared of {size})")]
    PromiseViolated { shared: usize, size: usize },

    #[error("trial count must be >= 1")]
    NoTrials,

    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    GraphTooLarge { vertices: usize, cap: usize },

    #[error("edge ({u}, {v}) invalid for a graph on {vertices} vertices")]
    BadEdge { u: usize, v: usize, vertices: usize },

    #[error("edge ({u}, {v}) listed twice")]
    DuplicateEdge { u: usize, v: usize },

    #[error("graph has a non-trivial automorphism, relabeling superposition would lose terms")]
    AutomorphicGraph,

    #[error("graphs must have the same vertex count to compare ({a} vs {b})")]
    VertexCountMismatch { a: usize, b: usize },

    #[error("{path}:{line}: {reason}")]
    FileFormat {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("could not read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
