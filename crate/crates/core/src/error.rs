use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("edge {{{0}, {1}}} references a vertex outside the vertex set")]
    DanglingEdge(String, String),

    #[error("no image assigned to domain vertex `{0}`")]
    MissingAssignment(String),

    #[error("edge {{{0}, {1}}} is sent to {{{2}, {3}}}, which is not an edge of the codomain")]
    NotEdgePreserving(String, String, String, String),

    #[error("maps do not compose: {0}")]
    DomainMismatch(&'static str),

    #[error("invalid size {n} for the {family} family")]
    InvalidFamilySize { family: &'static str, n: usize },

    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),

    #[error("`{v}` does not fold to `{target}`: N({v}) is not contained in N({target})")]
    NotAFold { v: String, target: String },

    #[error("map is not injective")]
    NotInjective,

    #[error("map is not an induced subgraph inclusion")]
    NotInducedInclusion,

    #[error("search space of {bound} candidates exceeds the size guard cap of {cap}")]
    GuardExceeded { bound: String, cap: u128 },

    #[error("graph `{0}` is not connected")]
    Disconnected(&'static str),

    #[error("square does not commute at `{0}`")]
    SquareDoesNotCommute(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
