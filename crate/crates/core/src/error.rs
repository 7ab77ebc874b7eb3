use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{}", match .line { Some(l) => format!("line {l}: {message}"), None => message.clone() })]
    Parse { line: Option<usize>, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not bidirected")]
    NotBidirected,

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not regular: {0}")]
    NotRegular(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid connection: {0}")]
    InvalidConnection(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),

    #[error("group is not abelian")]
    NotAbelian,
}
