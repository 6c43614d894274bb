use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("{what} exceeds the configured cap ({actual} > {limit})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("the identity generates the trivial subgroup and has no proper class")]
    IdentityClass,

    #[error("vertex {0} is not in the graph")]
    MissingVertex(usize),

    #[error("vertex classes do not partition the vertex set: {0}")]
    NotAPartition(String),

    #[error("map is not a graph homomorphism: edge {{{0}, {1}}} is not preserved")]
    NotHomomorphism(usize, usize),

    #[error("map refers to target vertex {0}, which does not exist")]
    TargetOutOfRange(usize),

    #[error("generator {0} is not an automorphism of the source graph")]
    NotAutomorphism(usize),

    #[error("permutation {0} does not normalize the group")]
    NotInNormalizer(String),

    #[error("group is not fusion controlled: {0}")]
    NotFusionControlled(String),

    #[error("division {numerator} / {denominator} is not exact for type {context}")]
    InexactDivision {
        numerator: String,
        denominator: String,
        context: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(what: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
        reason: reason.into(),
    }
}
