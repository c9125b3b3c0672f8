//! The two recursive PV schemes: forward (unstable for r > 0) and
//! backward (robust for r > 0).
//!
//! Forward propagates PV_k = (1+r)·PV_{k-1} - C_k from a caller-supplied
//! seed; any seed error is amplified by (1+r) every period, which is the
//! instability the error lab measures. Backward propagates
//! PV_{k-1} = (PV_k + C_k)/(1+r) from the exact anchor PV_N = 0 and keeps
//! rounding errors at the ulp level instead.

use crate::cashflow::{CashflowSchedule, Rate};
use crate::kernel;
use crate::pv::{PvSeries, Scheme};

/// Forward recursion seeded with `pv0`.
///
/// The seed is explicit because the amortization use case starts from the
/// carrying amount -C_0 at the IRR, while error experiments seed from an
/// oracle PV or a deliberately perturbed value. Step order inside the loop
/// is multiply, then subtract — one rounding each.
pub fn forward_series(schedule: &CashflowSchedule, rate: &Rate, pv0: f64) -> PvSeries {
    PvSeries {
        values: kernel::forward_series(&schedule.flows, &rate.value(), pv0),
        scheme: Scheme::Forward,
        rate: *rate,
    }
}

/// Backward recursion anchored at PV_N = 0 exactly.
///
/// Step order inside the loop is add, then divide — matching the
/// recurrence's parenthesization, one rounding each.
pub fn backward_series(schedule: &CashflowSchedule, rate: &Rate) -> PvSeries {
    PvSeries {
        values: kernel::backward_series(&schedule.flows, &rate.value()),
        scheme: Scheme::Backward,
        rate: *rate,
    }
}

/// Diagnostic round trip: run backward to get PV_0, feed it to forward,
/// return |forward PV_N| (0 in exact arithmetic).
pub fn round_trip_residual(schedule: &CashflowSchedule, rate: &Rate) -> f64 {
    let back = backward_series(schedule, rate);
    let fwd = forward_series(schedule, rate, back.values[0]);
    fwd.values[schedule.n()].abs()
}
