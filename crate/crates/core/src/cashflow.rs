//! Core value types: cashflow schedules, rates, and precision configuration.
//!
//! Sign convention (documentation contract, not validated): cash outflows
//! are negative, inflows positive. The archetypal schedule is a loan seen
//! from the lender: `initial` is the negative amount disbursed at period 0
//! and `flows[m-1]` is the payment received at period `m`.

use serde::{Deserialize, Serialize};

use crate::error::PvError;

/// Label for the length of one period. Descriptive only; no arithmetic
/// depends on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodLabel {
    Month,
    Year,
}

/// A dated stream of money amounts: `initial` at period 0 (C_0) and one
/// amount per period thereafter (C_1..C_N, 1-based).
///
/// Trailing zero flows are permitted and never change any PV result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CashflowSchedule {
    pub initial: f64,
    pub flows: Vec<f64>,
    pub period_label: PeriodLabel,
}

impl CashflowSchedule {
    pub fn new(initial: f64, flows: Vec<f64>) -> Self {
        CashflowSchedule {
            initial,
            flows,
            period_label: PeriodLabel::Month,
        }
    }

    pub fn with_label(mut self, label: PeriodLabel) -> Self {
        self.period_label = label;
        self
    }

    /// Number of periods N (period 0 not counted).
    pub fn n(&self) -> usize {
        self.flows.len()
    }

    /// Rejects non-finite amounts; anything finite is acceptable.
    /// The reported index is 0 for the initial flow, m for flow C_m.
    pub fn validate(&self) -> Result<(), PvError> {
        if !self.initial.is_finite() {
            return Err(PvError::NonFiniteAmount { index: 0 });
        }
        for (i, c) in self.flows.iter().enumerate() {
            if !c.is_finite() {
                return Err(PvError::NonFiniteAmount { index: i + 1 });
            }
        }
        Ok(())
    }
}

/// A per-period rate together with the absolute uncertainty attached to it.
///
/// Construction rejects values at or below -100% uniformly for every module,
/// so downstream code can rely on a positive discount factor. Uncertainty 0
/// means the rate is treated as exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rate {
    value: f64,
    uncertainty: f64,
}

impl Rate {
    pub fn new(value: f64) -> Result<Self, PvError> {
        Rate::with_uncertainty(value, 0.0)
    }

    pub fn with_uncertainty(value: f64, uncertainty: f64) -> Result<Self, PvError> {
        if !value.is_finite() || value <= -1.0 {
            return Err(PvError::RateOutOfDomain { rate: value });
        }
        if !uncertainty.is_finite() || uncertainty < 0.0 {
            return Err(PvError::InvalidUncertainty { value: uncertainty });
        }
        Ok(Rate { value, uncertainty })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Absolute half-width of the error interval on the rate; 0 = exact.
    pub fn uncertainty(&self) -> f64 {
        self.uncertainty
    }

    pub fn one_plus(&self) -> f64 {
        1.0 + self.value
    }
}

/// Declares the precision split between working arithmetic and the oracle.
///
/// The oracle in this crate is exact rational arithmetic, which satisfies
/// any finite `oracle_digits` requirement; the config exists to state (and
/// check) the minimum headroom the error measurements rely on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Significant decimal digits of the working arithmetic.
    pub working_digits: f64,
    /// Minimum significant decimal digits the oracle must guarantee.
    pub oracle_digits: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        // binary64 carries 53 bits ~ 15.95 decimal digits.
        PrecisionConfig {
            working_digits: 15.95,
            oracle_digits: 34,
        }
    }
}

impl PrecisionConfig {
    /// The oracle must have at least twice the working digits, otherwise
    /// scheme error and oracle error would be indistinguishable.
    pub fn validate(&self) -> Result<(), PvError> {
        if (self.oracle_digits as f64) < 2.0 * self.working_digits {
            return Err(PvError::InvalidPrecision {
                working_digits: self.working_digits,
                oracle_digits: self.oracle_digits,
            });
        }
        Ok(())
    }
}
