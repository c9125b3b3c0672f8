//! Present-value arithmetic with its numerical stability made visible.
//!
//! A stream of cashflows has one present value but several ways to compute
//! it, and they are not numerically equivalent:
//!
//! * **direct** — independent discounted sums per period; no error coupling
//!   between periods;
//! * **forward** — roll the time-0 value forward one period at a time, the
//!   way amortization ledgers do; any error in the seed or the rate is
//!   multiplied by (1+r) at every step;
//! * **backward** — accumulate from the final period toward time 0; each
//!   step divides by (1+r), so errors decay instead of compounding.
//!
//! The crate provides those engines over any [`scalar::PvScalar`] (f64,
//! f32, or exact rationals), an exact-arithmetic oracle for ground truth,
//! a bracketing IRR solver whose result carries a certified uncertainty,
//! an error lab that measures and classifies the growth of each scheme's
//! error, and a level-yield amortization-schedule builder that reproduces
//! published ledger tables with either carrying-amount engine.
//!
//! # Quick start
//!
//! ```
//! use pvlab_core::{CashflowSchedule, Rate};
//!
//! let schedule = CashflowSchedule::new(-100.0, vec![110.0]);
//! let rate = Rate::new(0.1)?;
//! assert!((pvlab_core::pv(&schedule, &rate) - 100.0).abs() < 1e-12);
//! assert!(pvlab_core::npv(&schedule, &rate).abs() < 1e-12);
//! # Ok::<(), pvlab_core::PvError>(())
//! ```

pub mod cashflow;
pub mod error;
pub mod errorlab;
pub mod fas91;
pub mod irr;
pub mod kernel;
pub mod pv;
pub mod recursive;
pub mod scalar;

pub use cashflow::{CashflowSchedule, PeriodLabel, PrecisionConfig, Rate};
pub use error::PvError;
pub use errorlab::{
    backward_error_model, default_noise_floor, forward_error_model, measure, run_experiment,
    DrSweepPoint, ErrorTrajectory, ExperimentConfig, ExperimentReport, Reference, SchemeReport,
    TheoreticalErrorModel, Verdict,
};
pub use fas91::{
    annuity_payment, build_schedule, build_schedule_with, carrying_amount_equals_partial_pv,
    round_to_cents, total_amortization, AmortizationRow, CarryingCheck, Engine, LoanSpec, Rounding,
};
pub use irr::{npv_derivative, solve_irr, solve_irr_with, IrrOptions, IrrResult, IrrWarning};
pub use pv::{
    npv, oracle_pv_series, oracle_pv_series_exact, partial_pv, pv, pv_series_direct, PvSeries,
    Scheme,
};
pub use recursive::{backward_series, forward_series, round_trip_residual};
pub use scalar::{ulp, PvScalar};

/// Working-precision money amount.
pub type Money = f64;

/// Exact rational scalar used by the oracle; every finite f64 converts into
/// it losslessly.
pub type Exact = num_rational::BigRational;
