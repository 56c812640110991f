use thiserror::Error;

/// A syntax error in a tree, coefficient or series expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {position}: {message}")]
pub struct ParseError {
    /// 0-based byte offset of the offending input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("arity mismatch: expected {expected} argument(s), got {given}")]
    ArityMismatch { expected: usize, given: usize },
    #[error("element {element} does not belong to operad instance {instance}")]
    WrongInstance { instance: String, element: String },
    #[error("{0} is not an associative element")]
    NotAssociative(String),
    #[error("invalid operad element: {0}")]
    InvalidElement(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("t-product of a tree of order {order} takes {order} argument(s), got {given}")]
    ArityMismatch { order: usize, given: usize },
    #[error("t-product arguments must not be the leaf (argument {0})")]
    LeafArgument(usize),
    #[error("operation requires a tree of order at least 1")]
    LeafInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: String, right: String },
    #[error("expected {expected} carrier, got {got}")]
    WrongCarrier { expected: &'static str, got: String },
    #[error("leading coefficient of {what} must be 1, found {found}")]
    NotInvertible { what: &'static str, found: String },
    #[error("key {key} has grading {grading} above truncation {truncation}")]
    AboveTruncation {
        key: String,
        grading: usize,
        truncation: usize,
    },
    #[error("term x^{key} is not in the image of the {side} embedding")]
    NotEmbedded { key: String, side: &'static str },
    #[error("series is not of the form comb-section composed with a rho-series: coefficient of x^{key} is {found}, factorization requires {expected}")]
    NotFactorizable {
        key: String,
        found: String,
        expected: String,
    },
    #[error(transparent)]
    Operad(#[from] OperadError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("{0} is not a generator of {1}")]
    NotAGenerator(String, String),
    #[error("coproduct {coproduct} cannot act on algebra {algebra}")]
    KindMismatch { coproduct: String, algebra: String },
    #[error("not graded connected: coefficient of {0} (x) 1 in its coproduct is not 1")]
    NotConnected(String),
}

/// Failure to read a series or tensor document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid document: {0}")]
    Document(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
