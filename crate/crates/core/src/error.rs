//! Error type shared by all public operations of the crate.

use std::fmt;

/// Failure modes of the algebraic and telescoping operations.
///
/// Operations that cannot fail simply do not return a `Result`; everything
/// that checks a precondition reports the violated precondition here.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input that must be nonzero (or a denominator) was zero.
    ZeroInput(&'static str),
    /// A polynomial argument was required to be irreducible but is not.
    NotIrreducible,
    /// A polynomial argument was required to be shift-free in y but is not.
    NotShiftFree,
    /// The kernel passed to a shift-structure predicate is not shift-reduced.
    KernelNotShiftReduced,
    /// `p^alpha` does not divide the designated kernel numerator/denominator.
    NotAFactor,
    /// A direction pair (lambda, mu) violated `mu >= 0` or `gcd(lambda, mu) = 1`.
    BadDirection,
    /// A factor that is not of the form `P(lambda*x + mu*y)` was encountered
    /// where integer-linearity is required.  Carries the offending factor,
    /// rendered as a string, as evidence.
    NotIntegerLinear { factor: String },
    /// A residual could not be aligned to the requested target denominator.
    NotAlignable,
    /// No telescoper exists for the term; carries the non-integer-linear
    /// denominator factor witnessing this.
    NoTelescoper { witness: String },
    /// The operation only applies to non-summable terms (or requires an
    /// existing telescoper) and the input does not qualify.
    NotApplicable,
    /// The x- and y-shift quotients do not satisfy the mixed compatibility
    /// identity `sigma_x(g) * f = sigma_y(f) * g`.
    CompatibilityViolation,
    /// A telescoper exists, but not within the requested order cap.
    OrderCapExceeded { cap: usize },
    /// A term expression could not be interpreted (bad atom arguments etc.).
    BadTerm(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInput(what) => write!(f, "zero input: {what}"),
            Error::NotIrreducible => write!(f, "polynomial is not irreducible"),
            Error::NotShiftFree => write!(f, "polynomial is not shift-free in y"),
            Error::KernelNotShiftReduced => write!(f, "kernel is not shift-reduced"),
            Error::NotAFactor => write!(f, "not a factor of the required multiplicity"),
            Error::BadDirection => write!(f, "invalid direction: need mu >= 0 and gcd(lambda, mu) = 1"),
            Error::NotIntegerLinear { factor } => {
                write!(f, "factor is not integer-linear: {factor}")
            }
            Error::NotAlignable => write!(f, "residual cannot be aligned to the requested target"),
            Error::NoTelescoper { witness } => {
                write!(f, "no telescoper exists; non-integer-linear factor: {witness}")
            }
            Error::NotApplicable => write!(f, "operation does not apply to this input"),
            Error::CompatibilityViolation => {
                write!(f, "shift quotients violate sigma_x(g)*f = sigma_y(f)*g")
            }
            Error::OrderCapExceeded { cap } => {
                write!(f, "no telescoper of order at most {cap}")
            }
            Error::BadTerm(msg) => write!(f, "invalid term: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
