use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at token `{token}`: {reason}")]
    Syntax { token: String, reason: String },
    #[error("semantic error: {0}")]
    Semantics(String),
    #[error("diagram is not planar: {0}")]
    NonPlanar(String),
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("Gauss diagram is not realizable by a planar diagram")]
    NotRealizable,
    #[error("expected a knot (one component), found {0} components")]
    NotAKnot(usize),
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("bad component pair ({0}, {1})")]
    BadComponent(usize, usize),
    #[error("move `{rule}` cannot be applied to a {found} diagram")]
    LevelMismatch { rule: String, found: &'static str },
    #[error("stale site: {0}")]
    StaleSite(String),
    #[error("unknown move `{0}`")]
    UnknownMove(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Syntax { token: token.into(), reason: reason.into() }
    }
}
