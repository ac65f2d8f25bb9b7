//! Crate-wide error type.

use thiserror::Error;

/// Which of the two interleaved coordinate grids a vertex was expected on.
///
/// `Y` is the grid carrying the `Y` variables and the coordinates of
/// indecomposable objects; `A` is the complementary grid carrying the `A`
/// variables and stratum dimension vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Y,
    A,
}

impl std::fmt::Display for GridKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridKind::Y => write!(f, "Y"),
            GridKind::A => write!(f, "A"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A quiver description failed structural validation. `field` names the
    /// offending part of the input.
    #[error("quiver field `{field}`: {message}")]
    InvalidSpec {
        field: &'static str,
        message: String,
    },

    #[error("height rule violated on arrow {tail}->{head}: {lhs} - {rhs} != 1")]
    HeightRule {
        tail: i64,
        head: i64,
        lhs: i64,
        rhs: i64,
    },

    #[error("vertex index {0} is not a diagram vertex")]
    UnknownVertex(i64),

    #[error("({i},{p}) does not lie on the {expected}-grid")]
    WrongGrid { i: i64, p: i64, expected: GridKind },

    #[error("monomial is not dominant: exponent of Y[{i},{p}] is {exponent}")]
    NonDominant { i: i64, p: i64, exponent: i64 },

    #[error("{0} is undefined on the zero object")]
    ZeroObject(&'static str),

    #[error("{0} requires a type A quiver")]
    TypeAOnly(&'static str),

    #[error("parse error in {what}: {message}")]
    Parse { what: &'static str, message: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// Two independent computation routes disagreed. This indicates a bug in
    /// the engine, never a property of valid input.
    #[error("cross-check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
