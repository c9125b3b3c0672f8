//! Error types shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while building schedules, discounting, or
/// solving for rates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PvError {
    /// A cashflow amount is NaN or infinite. Index 0 is the initial flow,
    /// indices 1..=N are the periodic flows.
    #[error("non-finite cashflow amount at period {index}")]
    NonFiniteAmount { index: usize },

    /// A rate at or below -100% makes the discount factor non-positive.
    #[error("rate {rate} out of domain: 1 + r must be positive")]
    RateOutOfDomain { rate: f64 },

    /// Rate uncertainty must be a finite, non-negative half-width.
    #[error("rate uncertainty {value} must be finite and non-negative")]
    InvalidUncertainty { value: f64 },

    /// Period index outside 0..=N.
    #[error("period index {k} out of range for a schedule of {n} periods")]
    IndexOutOfRange { k: usize, n: usize },

    /// The IRR bracket search covered the whole rate domain without finding
    /// a sign change in NPV.
    #[error("no sign change in NPV over the search domain; IRR undefined")]
    NoSignChange,

    /// Bisection failed to reach the requested tolerance within the budget.
    #[error("IRR solver exceeded {max_iter} iterations")]
    MaxIterationsExceeded { max_iter: usize },

    /// Two series that must be compared point-by-point have different lengths.
    #[error("series length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Theoretical error models need a strictly positive rate uncertainty.
    #[error("rate uncertainty is zero; error models need a positive \u{394}r")]
    ZeroUncertainty,

    /// Loan principal must be strictly positive.
    #[error("loan principal {principal} must be positive")]
    NonPositivePrincipal { principal: f64 },

    /// Loan parameters violate a structural invariant other than the
    /// principal sign (for example zero periods).
    #[error("invalid loan: {reason}")]
    InvalidLoan { reason: &'static str },

    /// Precision configuration breaks the oracle-headroom invariant.
    #[error("oracle precision ({oracle_digits} digits) must be at least twice the working precision ({working_digits} digits)")]
    InvalidPrecision {
        working_digits: f64,
        oracle_digits: u32,
    },
}
