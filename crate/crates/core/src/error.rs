use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {seq:?}")]
    NotAPermutation { n: usize, seq: Vec<usize> },
    #[error("taxon count {0} is outside the supported range 3..=31")]
    BadTaxonCount(usize),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("ambient taxon counts differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("bridges {0} and {1} cross")]
    CrossingBridges(String, String),
    #[error("bridge {0} is trivial")]
    TrivialBridge(String),
    #[error("{k} bridges requested but at most {max} fit on {n} taxa")]
    TooManyBridges { n: usize, k: usize, max: usize },
    #[error("split {0} is not an arc of the ordering")]
    NotAnArc(String),
    #[error("split {0} is not a bridge of the network")]
    NotABridge(String),
    #[error("pair ({0}, {0}) does not name two distinct taxa")]
    SameTaxon(usize),
    #[error("(n, k) = ({n}, {k}) is out of range")]
    OutOfRange { n: usize, k: usize },
    #[error("weighted split system does not match the displayed splits of the network")]
    WeightSystemMismatch,
    #[error("distance matrix is not Kalmanson for the given ordering: {0}")]
    NotKalmanson(String),
    #[error("graph has unweighted edges")]
    UnweightedGraph,
    #[error("brute-force ordering search is limited to n <= 9 (got {0})")]
    TooLarge(usize),
    #[error("split {0} is trivial")]
    TrivialSplit(String),
    #[error("{requested} bridges requested but the split system only has {available}")]
    TooManyBridgesRequested { requested: usize, available: usize },
    #[error("search would evaluate {needed} networks, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("empty input")]
    EmptyInput,
    #[error("negative weight or distance: {0}")]
    NegativeValue(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("asymmetric distance matrix at ({0}, {1})")]
    AsymmetricInput(usize, usize),
    #[error("negative distance at ({0}, {1})")]
    NegativeDistance(usize, usize),
}
