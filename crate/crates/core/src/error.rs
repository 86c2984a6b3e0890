use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic error: {0}")]
    Arith(String),

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("result did not stabilize between truncations {v} and {v_next}: {context}")]
    NonStabilized { v: u32, v_next: u32, context: String },

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),

    #[error("leading term mismatch at (eps={eps}, m={m}, v={v}): {detail}")]
    LeadingTerm { eps: u8, m: i64, v: u32, detail: String },

    #[error("splitting hypothesis failed: {0}")]
    Splitting(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
