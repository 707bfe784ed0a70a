use thiserror::Error;

/// Errors raised by construction, parsing, recall, and search operations.
///
/// Neuron numbers carried in error payloads are 1-based, matching all
/// printed notation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a bipolar vector needs at least one entry")]
    EmptyVector,

    #[error("entry {position} is {value}; only +1 and -1 are allowed")]
    NotBipolar { position: usize, value: i64 },

    #[error("memory set is empty")]
    EmptyMemorySet,

    #[error("dimension mismatch: expected {expected} neurons, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight matrix is not symmetric at ({row}, {col})")]
    AsymmetricWeights { row: usize, col: usize },

    #[error("weight matrix has a nonzero diagonal entry at neuron {neuron}")]
    NonzeroDiagonal { neuron: usize },

    #[error("weight matrix rows must all have length {n}")]
    RaggedMatrix { n: usize },

    #[error("fragment has no assignments")]
    EmptyFragment,

    #[error("neuron {neuron} appears more than once")]
    DuplicateNeuron { neuron: usize },

    #[error("neuron {neuron} is out of range for a {n}-neuron network")]
    NeuronOutOfRange { neuron: usize, n: usize },

    #[error("fragment does not clamp neurons 1..k; use an ordered recall instead")]
    NonPrefixFragment,

    #[error("update order is not a permutation of 1..{n}")]
    NotAPermutation { n: usize },

    #[error("seed count {seed_count} is out of range 1..={n}")]
    InvalidSeedCount { seed_count: usize, n: usize },

    #[error("seed assignments do not match the first {seed_count} positions of the update order")]
    SeedsOrderMismatch { seed_count: usize },

    #[error("{n} neurons exceed the enumeration cap of {cap}")]
    EnumerationCapExceeded { n: usize, cap: usize },

    #[error("{n} neurons exceed the order-search cap of {cap}")]
    SearchSpaceExceeded { n: usize, cap: usize },

    #[error("spread size {size} is out of range 1..={n}")]
    InvalidSpreadSize { size: usize, n: usize },

    #[error("no coordinates given for neuron {neuron}")]
    MissingCoordinate { neuron: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
