//! Direct-summation present values in working precision and the
//! exact-arithmetic oracle series.
//!
//! The direct scheme deliberately mirrors what a spreadsheet or naive
//! implementation does: ascending-period plain accumulation with the
//! discount factor maintained by repeated division. It is the honest
//! "practice" baseline; high accuracy is the oracle's job.
//!
//! A note on the partial-PV convention: `partial_pv(s, r, k)` is the value
//! of the remaining flows *as seen from period k* (each flow C_m discounted
//! by (1+r)^(m-k)). This is the quantity that equals an amortization
//! carrying amount at the IRR and that the forward/backward recurrences
//! propagate. Discounting the tail all the way to period 0 instead would
//! break both recurrences and the carrying-amount identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cashflow::{CashflowSchedule, PrecisionConfig, Rate};
use crate::error::PvError;
use crate::kernel;

/// Which recurrence produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Direct,
    Forward,
    Backward,
}

/// A full PV_0..PV_N series (N+1 values) tagged with the scheme and rate
/// that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PvSeries {
    pub values: Vec<f64>,
    pub scheme: Scheme,
    pub rate: Rate,
}

impl PvSeries {
    /// Largest absolute value in the series; the natural magnitude scale
    /// for noise floors and deviation bounds.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Present value of the periodic flows (C_0 excluded), Σ C_m/(1+r)^m.
pub fn pv(schedule: &CashflowSchedule, rate: &Rate) -> f64 {
    kernel::pv(&schedule.flows, &rate.value())
}

/// Net present value: C_0 + pv.
pub fn npv(schedule: &CashflowSchedule, rate: &Rate) -> f64 {
    schedule.initial + pv(schedule, rate)
}

/// Time-k value of the flows strictly after period k; see the module notes
/// for the convention. `k = 0` equals [`pv`] bit for bit, `k = N` is 0.
pub fn partial_pv(schedule: &CashflowSchedule, rate: &Rate, k: usize) -> Result<f64, PvError> {
    let n = schedule.n();
    if k > n {
        return Err(PvError::IndexOutOfRange { k, n });
    }
    Ok(kernel::partial_pv(&schedule.flows, &rate.value(), k))
}

/// The direct series: every PV_k computed by its own independent summation,
/// with no reuse between k's. The deliberate redundancy is what the error
/// lab diffs the recursive schemes against.
pub fn pv_series_direct(schedule: &CashflowSchedule, rate: &Rate) -> PvSeries {
    let values = (0..=schedule.n())
        .map(|k| kernel::partial_pv(&schedule.flows, &rate.value(), k))
        .collect();
    PvSeries {
        values,
        scheme: Scheme::Direct,
        rate: *rate,
    }
}

/// Exact-arithmetic partial-PV series, rounded to working precision only at
/// the very end.
///
/// Flows and the rate are widened exactly from their working-precision
/// values (the rate is *not* re-solved: error experiments isolate scheme
/// error at a fixed r). In exact rational arithmetic the per-k direct sums
/// coincide term-for-term with one backward sweep, so the series is built
/// in O(N) by that sweep; the results are identical, not approximately so.
///
/// The `cfg` states the minimum precision contract; rational arithmetic
/// satisfies any finite `oracle_digits`, the call still validates the
/// config so misconfigured experiments fail loudly.
pub fn oracle_pv_series(
    schedule: &CashflowSchedule,
    rate: &Rate,
    cfg: &PrecisionConfig,
) -> Result<PvSeries, PvError> {
    cfg.validate()?;
    schedule.validate()?;
    Ok(PvSeries {
        values: oracle_values(schedule, rate),
        scheme: Scheme::Direct,
        rate: *rate,
    })
}

/// The exact backward sweep with every value held as A·2^e / P^j, where
/// 1 + r = P/2^d exactly in working precision.
///
/// General rational arithmetic reduces after each operation, and on this
/// chain the operands reach tens of kilobits, so those gcd calls dominate
/// the runtime by orders of magnitude. Since every input is dyadic, the
/// only denominator factors that ever appear are 2 and P; tracking them
/// explicitly keeps each step at a few shifts plus one short multiply, and
/// the final conversion is value-based, so skipping reduction cannot
/// change the rounded result.
fn oracle_values(schedule: &CashflowSchedule, rate: &Rate) -> Vec<f64> {
    // 1 + r = p / 2^d; a finite f64 always reduces to a power-of-two
    // denominator. The 1 is added in rational arithmetic: the f64 sum
    // 1.0 + r re-rounds, which would silently divide by a slightly
    // different number than the exact sweep does.
    let one_plus = BigRational::one() + BigRational::from_f64(rate.value()).expect("finite rate");
    let p = one_plus.numer().clone();
    let d = one_plus.denom().trailing_zeros().expect("nonzero denominator");
    debug_assert!((one_plus.denom() >> d).is_one());

    let n = schedule.n();
    let mut values = vec![0.0; n + 1];
    // PV_k = a · 2^e / p^j with j = n - k; `ppow` carries p^j incrementally.
    let mut a = BigInt::zero();
    let mut e: i64 = 0;
    let mut ppow = BigInt::one();
    for k in (0..n).rev() {
        let flow = BigRational::from_f64(schedule.flows[k]).expect("finite flow");
        let u = flow.numer();
        let f = -(flow.denom().trailing_zeros().expect("nonzero denominator") as i64);
        debug_assert!((flow.denom() >> (-f) as u64).is_one());
        // PV_k = (PV_{k+1} + C_{k+1}) / (1 + r). Align the two binary
        // exponents, add, then append one factor of p and 2^d.
        let g = e.min(f);
        a = (a << (e - g) as u64) + ((u * &ppow) << (f - g) as u64);
        e = g + d as i64;
        ppow *= &p;
        let (numer, denom) = if e >= 0 {
            (a.clone() << e as u64, ppow.clone())
        } else {
            (a.clone(), ppow.clone() << (-e) as u64)
        };
        // `new_raw` skips reduction; the f64 conversion rounds the exact
        // quotient, which is the same for any representation of the value.
        values[k] = BigRational::new_raw(numer, denom)
            .to_f64()
            .expect("oracle value convertible to f64");
    }
    values
}

/// The oracle series as exact rationals, for callers that need to measure
/// errors without a second rounding (subtract working-precision values
/// from these before any conversion to f64).
pub fn oracle_pv_series_exact(schedule: &CashflowSchedule, rate: &Rate) -> Vec<BigRational> {
    let flows: Vec<BigRational> = schedule
        .flows
        .iter()
        .map(|&c| BigRational::from_f64(c).expect("finite flow"))
        .collect();
    let r = BigRational::from_f64(rate.value()).expect("finite rate");
    kernel::backward_series(&flows, &r)
}
