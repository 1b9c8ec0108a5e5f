use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("invalid exponent at position {pos}: {msg}")]
    Exponent { pos: usize, msg: String },
    #[error("invalid variable list: {0}")]
    Variables(String),
    #[error("variable contexts differ")]
    ContextMismatch,
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("field error: {0}")]
    Field(String),
    #[error("relation is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("relation of degree < 2: {0}")]
    LowDegree(String),
    #[error("quotient is not Artinian: no pure power of '{0}' in the leading-term ideal")]
    NotArtinian(String),
    #[error("variable name collision: '{0}'")]
    Collision(String),
    #[error("ring is not Gorenstein (socle dimension {0})")]
    NotGorenstein(usize),
    #[error("socle degrees differ: {0} vs {1}")]
    SocleDegreeMismatch(usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("inconsistent presentation: {0}")]
    Presentation(String),
    #[error("matrix-size cap exceeded: {columns} columns > cap {cap} at step {step}, degree {degree}")]
    Budget {
        step: usize,
        degree: i32,
        columns: usize,
        cap: usize,
    },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("insufficient data: {0}")]
    Insufficient(String),
    #[error("not a Poincare series: {0}")]
    NotPoincare(String),
    #[error("refused: {0}")]
    Refused(String),
}
