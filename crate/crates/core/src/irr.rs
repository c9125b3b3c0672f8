//! Internal-rate-of-return solver: bracketed bisection with a short Newton
//! polish.
//!
//! Bisection is not the fastest way to find the root, but it certifies a
//! bracket: the returned uncertainty is the final bracket half-width, a
//! hard bound the error lab uses as its rate displacement. Newton (at most a few
//! steps, confined to the bracket) then sharpens the point estimate without
//! invalidating the certificate.

use serde::{Deserialize, Serialize};

use crate::cashflow::{CashflowSchedule, Rate};
use crate::error::PvError;
use crate::kernel;

/// Rates below this are outside the search domain (1+r would underflow the
/// useful range); rates above `DOMAIN_HI` (1000% per period) are treated as
/// absurd rather than searched.
const DOMAIN_LO: f64 = -1.0 + 1e-9;
const DOMAIN_HI: f64 = 10.0;
const EXPANSION_LIMIT: usize = 80;

/// Solver knobs. `polish_steps = 0` returns the raw bisection midpoint,
/// which error experiments use when they want the rate error to be of the
/// same order as the certified uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IrrOptions {
    /// Target half-width of the final bracket. Non-positive values never
    /// satisfy the bisection exit test and end in `MaxIterationsExceeded`.
    pub tolerance: f64,
    pub max_iter: usize,
    pub polish_steps: usize,
}

impl Default for IrrOptions {
    fn default() -> Self {
        IrrOptions {
            tolerance: 1e-12,
            max_iter: 200,
            polish_steps: 3,
        }
    }
}

/// Non-fatal observations from the solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum IrrWarning {
    /// More than one sign change in C_0..C_N: multiple IRRs may exist; the
    /// solver still reports the root found in its bracket.
    AmbiguousRoot { sign_changes: usize },
}

/// A solved rate with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrrResult {
    /// `value` is the polished root, `uncertainty` the certified bracket
    /// half-width (always positive: the root is found numerically).
    pub rate: Rate,
    pub iterations: usize,
    /// NPV at the returned rate.
    pub residual: f64,
    pub warnings: Vec<IrrWarning>,
}

/// Solve NPV(r) = 0 with the given tolerance and iteration budget and the
/// default 3-step polish.
pub fn solve_irr(
    schedule: &CashflowSchedule,
    tolerance: f64,
    max_iter: usize,
) -> Result<IrrResult, PvError> {
    solve_irr_with(
        schedule,
        &IrrOptions {
            tolerance,
            max_iter,
            polish_steps: 3,
        },
    )
}

/// Solve NPV(r) = 0 with full control over the options.
pub fn solve_irr_with(
    schedule: &CashflowSchedule,
    options: &IrrOptions,
) -> Result<IrrResult, PvError> {
    schedule.validate()?;
    let flows = &schedule.flows;
    let f = |r: f64| schedule.initial + kernel::pv(flows, &r);

    let mut lo = 0.0_f64;
    let mut hi = 0.1_f64;
    let mut flo = f(lo);
    let mut fhi = f(hi);
    let mut iterations = 0usize;

    // Geometric expansion from the initial bracket until NPV changes sign.
    // Each widened flank is checked on its own so the bracket shrinks back
    // to the segment that actually contains the crossing.
    while flo * fhi > 0.0 {
        if lo <= DOMAIN_LO && hi >= DOMAIN_HI {
            return Err(PvError::NoSignChange);
        }
        let width = hi - lo;
        let nlo = (lo - width).max(DOMAIN_LO);
        let nhi = (hi + width).min(DOMAIN_HI);
        let nflo = if nlo != lo { f(nlo) } else { flo };
        let nfhi = if nhi != hi { f(nhi) } else { fhi };
        iterations += 1;
        if iterations > EXPANSION_LIMIT {
            return Err(PvError::NoSignChange);
        }
        if nflo * flo <= 0.0 && nlo != lo {
            hi = lo;
            fhi = flo;
            lo = nlo;
            flo = nflo;
            break;
        }
        if fhi * nfhi <= 0.0 && nhi != hi {
            lo = hi;
            flo = fhi;
            hi = nhi;
            fhi = nfhi;
            break;
        }
        lo = nlo;
        flo = nflo;
        hi = nhi;
        fhi = nfhi;
    }

    // Bisection down to the requested bracket half-width.
    while (hi - lo) / 2.0 > options.tolerance {
        let mid = lo + (hi - lo) / 2.0;
        let fmid = f(mid);
        iterations += 1;
        if iterations > options.max_iter {
            return Err(PvError::MaxIterationsExceeded {
                max_iter: options.max_iter,
            });
        }
        if fmid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if flo * fmid < 0.0 {
            hi = mid;
            fhi = fmid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    debug_assert!(
        (flo <= 0.0 && fhi >= 0.0) || (flo >= 0.0 && fhi <= 0.0),
        "bisection lost its sign-change bracket"
    );
    let midpoint = lo + (hi - lo) / 2.0;
    let half_width = (hi - lo) / 2.0;

    // Newton polish: keep every accepted step inside the certified bracket
    // and require it to reduce |NPV|, otherwise stop.
    let mut x = midpoint;
    let mut fx = f(x);
    for _ in 0..options.polish_steps {
        let dfx = kernel::npv_derivative(flows, &x);
        if dfx == 0.0 {
            break;
        }
        let x2 = x - fx / dfx;
        if !(lo..=hi).contains(&x2) || !x2.is_finite() {
            break;
        }
        let fx2 = f(x2);
        if fx2.abs() >= fx.abs() {
            break;
        }
        x = x2;
        fx = fx2;
        iterations += 1;
    }

    let mut warnings = Vec::new();
    let sign_changes = count_sign_changes(schedule);
    if sign_changes > 1 {
        warnings.push(IrrWarning::AmbiguousRoot { sign_changes });
    }

    Ok(IrrResult {
        rate: Rate::with_uncertainty(x, half_width)?,
        iterations,
        residual: fx,
        warnings,
    })
}

/// Derivative of NPV with respect to the rate, Σ -m·C_m/(1+r)^(m+1).
pub fn npv_derivative(schedule: &CashflowSchedule, rate: &Rate) -> f64 {
    kernel::npv_derivative(&schedule.flows, &rate.value())
}

/// Sign changes across C_0..C_N ignoring zero amounts; more than one means
/// the IRR polynomial may have several positive roots.
fn count_sign_changes(schedule: &CashflowSchedule) -> usize {
    let mut changes = 0usize;
    let mut last: Option<bool> = None;
    for c in std::iter::once(schedule.initial).chain(schedule.flows.iter().copied()) {
        if c == 0.0 {
            continue;
        }
        let positive = c > 0.0;
        if let Some(prev) = last {
            if prev != positive {
                changes += 1;
            }
        }
        last = Some(positive);
    }
    changes
}
