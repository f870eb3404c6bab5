use std::fmt;

use thiserror::Error;

/// Requirement clause that a solver entry point found violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// The rounding mode is not regular.
    IrregularRounding,
    /// The starting point is not a normal floating-point number.
    XNotNormal,
    /// The chosen numerator is infinite, zero or subnormal.
    ZNotNormal,
    /// The exact quotient `z/x` is subnormal or above the largest finite value.
    QuotientOutOfRange,
    /// `beta > 2` and the numerator significand is not in `(1, 2]`.
    SignificandClause,
    /// The significand `m_x` is not in `[beta^(p-1), beta^p)`.
    SignificandRange,
    /// Neither `|m_x| <= |m_z| <= 2 beta^(p-1)` nor `beta |m_z| = beta^p <= 2 beta^(p-1)`.
    NumeratorBounds,
    /// One of `a`, `b`, `n` is zero, or `0` is not in the remainder interval.
    DivisorArguments,
    /// `n` is zero in a quadratic-by-linear search.
    ZeroModulus,
    /// A member of the target set was expected but not supplied.
    EmptyTarget,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::IrregularRounding => "irregular-rounding",
            Clause::XNotNormal => "x-not-normal",
            Clause::ZNotNormal => "z-not-normal",
            Clause::QuotientOutOfRange => "quotient-out-of-range",
            Clause::SignificandClause => "significand-clause",
            Clause::SignificandRange => "significand-range",
            Clause::NumeratorBounds => "numerator-bounds",
            Clause::DivisorArguments => "divisor-arguments",
            Clause::ZeroModulus => "zero-modulus",
            Clause::EmptyTarget => "empty-target",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("undefined product 0 * inf")]
    UndefinedProduct,
    #[error("precondition failed: {0}")]
    Precondition(Clause),
    #[error("{what} exceeds cap {cap}")]
    Resource { what: &'static str, cap: u64 },
    #[error("iteration cap {0} reached without a feasible value")]
    Exhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
