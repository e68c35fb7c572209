use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("{op}: requires {constraint}, got {value}")]
    Domain {
        op: &'static str,
        constraint: &'static str,
        value: u64,
    },

    /// A classification label whose parameters violate its row constraint.
    #[error("invalid case {label}: {constraint}")]
    InvalidCase {
        label: String,
        constraint: &'static str,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    /// A recursion disagreed with the closed form it is supposed to certify.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("render error: {0}")]
    Render(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, constraint: &'static str, value: u64) -> Self {
        Error::Domain {
            op,
            constraint,
            value,
        }
    }
}
