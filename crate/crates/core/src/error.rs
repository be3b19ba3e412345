use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("incompatible: {0}")]
    Incompatible(String),

    #[error("matrix data has {found} entries, expected {expected}")]
    BadMatrixData { expected: usize, found: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),

    #[error("stabilization cap exceeded ({cap} iterations)")]
    StabilizationCapExceeded { cap: usize },

    #[error("undefined bracket argument")]
    UndefinedBracketArgument,

    #[error("requires m<n (got n={n}, m={m})")]
    RequiresMLessThanN { n: String, m: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex set {which} is not hereditary and saturated")]
    NotHereditarySaturated { which: &'static str },

    #[error("lower vertex set is not contained in the upper one")]
    NotNested,

    #[error("vertex {vertex} emits no edge inside the subquotient")]
    NoInternalEdge { vertex: String },

    #[error("prim computation requires every vertex on a cycle (vertex {vertex} is not)")]
    PrimRequiresCycles { vertex: String },
}
