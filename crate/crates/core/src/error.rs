use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field size {0}: expected a prime in 2..=7")]
    UnsupportedField(u8),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(u8, u8),

    #[error("entry {entry} is not reduced modulo {p}")]
    EntryOutOfRange { entry: u8, p: u8 },

    #[error("enumeration guard exceeded: {what} needs {size} items, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("vector does not lie in the target subspace")]
    NotInSubspace,

    #[error("{0} is not a subspace of the enclosing space")]
    NotSubspace(&'static str),

    #[error("morphisms are not composable")]
    NotComposable,

    #[error("linear map is not an epimorphism")]
    NotEpimorphism,

    #[error("endomorphism is invertible, expected a singular one")]
    NotSingular,

    #[error("endomorphism is singular, expected an automorphism")]
    NotInvertible,

    #[error("Cayley table is malformed: {0}")]
    MalformedTable(String),

    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative {
        a: String,
        b: String,
        c: String,
        witness: (usize, usize, usize),
    },

    #[error("semigroup is not regular: element {0} has no inverse witness")]
    NotRegular(String),

    #[error("map is not a valid element mapping: {0}")]
    MalformedMorphism(String),

    #[error("cone is not normal")]
    NotNormal,

    #[error("cone is not idempotent")]
    NotIdempotent,

    #[error("cone is ill-formed: {0}")]
    IllFormedCone(String),

    #[error("set is not closed under the product: {0}")]
    NotClosed(String),

    #[error("object is not part of the category")]
    UnknownObject,

    #[error("invalid fiber family: {0}")]
    InvalidFamily(String),

    #[error("core dimension {m} out of range 1..={max}")]
    CoreDimension { m: usize, max: usize },

    #[error("embedding into fiber {fiber} failed: {reason}")]
    Embedding { fiber: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
