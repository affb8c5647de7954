use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system `{0}` (expected A1 or A2)")]
    UnsupportedType(String),
    #[error("weight {0} is not integral")]
    NonIntegral(String),
    #[error("weight {weight} is not dominant integral for the Levi set {levi}")]
    NotLeviDominant { weight: String, levi: String },
    #[error("irrational or non-real eigenvalue: unresolved factor {0}")]
    IrrationalEigenvalue(String),
    #[error("matrix span is not closed under multiplication")]
    NotClosed,
    #[error("algebra is not unital (identity not in span)")]
    NotUnital,
    #[error("could not decide locality of a {0}-dimensional semisimple quotient")]
    Undecided(usize),
    #[error("window error: {0}")]
    Window(String),
    #[error("subspace is not closed under the {generator} action at weight {weight}")]
    NotSubmodule { generator: String, weight: String },
    #[error("incompatible modules: {0}")]
    Incompatible(String),
    #[error("unsupported central element: {0}")]
    UnsupportedCentral(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid specification: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
