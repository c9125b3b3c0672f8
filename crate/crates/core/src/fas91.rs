//! Level-yield amortization schedules for a loan with deferred net fees,
//! in the style of the FAS 91 worked example.
//!
//! The schedule's columns follow the published layout: (1) cash inflow,
//! (2) stated interest, (3) amortization, (4) interest income,
//! (5) unamortized principal, (6) unamortized fees, (7) carrying amount.
//! Column (7) is the interesting one numerically: ledger practice rolls it
//! forward year by year, which is exactly the forward recursion whose error
//! grows like (1+r)^k, so the builder can alternatively fill it by backward
//! recursion and the two tables can be diffed.

use serde::{Deserialize, Serialize};

use crate::cashflow::{CashflowSchedule, PeriodLabel, Rate};
use crate::error::PvError;
use crate::irr::{solve_irr, IrrResult};
use crate::kernel;
use crate::pv;

/// Loan inputs for one schedule: column (1) is `payment`, the column (5)
/// basis starts at `principal`, the column (6) basis at `net_fees`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoanSpec {
    pub principal: f64,
    /// May be negative (net costs rather than net fees).
    pub net_fees: f64,
    /// Contractual per-period rate.
    pub stated_rate: f64,
    pub payment: f64,
    pub periods: usize,
}

impl LoanSpec {
    pub fn new(
        principal: f64,
        net_fees: f64,
        stated_rate: f64,
        payment: f64,
        periods: usize,
    ) -> Result<Self, PvError> {
        let loan = LoanSpec {
            principal,
            net_fees,
            stated_rate,
            payment,
            periods,
        };
        loan.validate()?;
        Ok(loan)
    }

    pub fn validate(&self) -> Result<(), PvError> {
        if !self.principal.is_finite() || self.principal <= 0.0 {
            return Err(PvError::NonPositivePrincipal {
                principal: self.principal,
            });
        }
        if self.periods == 0 {
            return Err(PvError::InvalidLoan {
                reason: "periods must be at least 1",
            });
        }
        if !self.net_fees.is_finite() {
            return Err(PvError::InvalidLoan {
                reason: "net_fees must be finite",
            });
        }
        if !self.payment.is_finite() {
            return Err(PvError::InvalidLoan {
                reason: "payment must be finite",
            });
        }
        if !self.stated_rate.is_finite() || self.stated_rate <= -1.0 {
            return Err(PvError::RateOutOfDomain {
                rate: self.stated_rate,
            });
        }
        Ok(())
    }

    /// Carrying amount at inception, column (7) basis: principal − net fees.
    pub fn inception_carrying(&self) -> f64 {
        self.principal - self.net_fees
    }

    /// The loan as an investment cashflow: pay out the carrying amount at
    /// time 0, receive the contractual payments. The effective rate is the
    /// IRR of exactly this schedule.
    pub fn cashflow(&self) -> CashflowSchedule {
        CashflowSchedule::new(-self.inception_carrying(), vec![self.payment; self.periods])
            .with_label(PeriodLabel::Year)
    }

    /// Solve the effective (level-yield) rate from the loan's cashflow.
    pub fn solve_effective_rate(&self) -> Result<IrrResult, PvError> {
        self.validate()?;
        solve_irr(&self.cashflow(), 1e-12, 200)
    }
}

/// Payment of a level annuity fully amortizing `principal` over `periods`
/// at per-period `rate`: P·r/(1 − (1+r)^−N), or P/N at r = 0.
pub fn annuity_payment(principal: f64, rate: f64, periods: usize) -> f64 {
    let n = periods as f64;
    if rate == 0.0 {
        return principal / n;
    }
    principal * rate / (1.0 - (1.0 + rate).powf(-n))
}

/// Cell treatment: `Cents` reproduces a published ledger (every derived
/// cell rounded half-even to 0.01 right after computation); `None` keeps
/// full working precision, which the stability experiments require since
/// cent-rounding would mask floating-point effects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    None,
    Cents,
}

/// How column (7) is generated: `Forward` rolls the carrying amount
/// forward from inception (ledger practice), `Backward` fills it by
/// backward recursion from the final zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Forward,
    Backward,
}

/// One schedule row; column numbers in the field docs refer to the
/// published layout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmortizationRow {
    pub period: usize,
    /// Column (1).
    pub cash_inflow: f64,
    /// Column (2): prior (5) × stated rate.
    pub stated_interest: f64,
    /// Column (3): (4) − (2).
    pub amortization: f64,
    /// Column (4): prior (7) × effective rate.
    pub interest_income: f64,
    /// Column (5): prior (5) − ((1) − (2)).
    pub unamortized_principal: f64,
    /// Column (6): net fees − cumulative (3).
    pub unamortized_fees: f64,
    /// Column (7): (5) − (6), or the selected recursion engine's value.
    pub carrying_amount: f64,
}

/// Round half-even to cents.
pub fn round_to_cents(x: f64) -> f64 {
    (x * 100.0).round_ties_even() / 100.0
}

/// Build the amortization schedule with the forward (ledger-practice)
/// carrying engine.
pub fn build_schedule(
    loan: &LoanSpec,
    effective_rate: &Rate,
    rounding: Rounding,
) -> Result<Vec<AmortizationRow>, PvError> {
    build_schedule_with(loan, effective_rate, rounding, Engine::Forward)
}

/// Build the amortization schedule with an explicit column (7) engine.
pub fn build_schedule_with(
    loan: &LoanSpec,
    effective_rate: &Rate,
    rounding: Rounding,
    engine: Engine,
) -> Result<Vec<AmortizationRow>, PvError> {
    loan.validate()?;
    let rnd = |x: f64| match rounding {
        Rounding::Cents => round_to_cents(x),
        Rounding::None => x,
    };
    let eff = effective_rate.value();
    let onepr = effective_rate.one_plus();

    // Backward engine: column (7) at period k is the time-k value of the
    // remaining payments, computed from the far end.
    let backward_values = match engine {
        Engine::Backward => {
            let flows = vec![loan.payment; loan.periods];
            Some(kernel::backward_series(&flows, &eff))
        }
        Engine::Forward => None,
    };

    let mut prior_principal = loan.principal;
    let mut prior_carrying = rnd(loan.inception_carrying());
    let mut cumulative_amortization = 0.0;
    let mut rows = Vec::with_capacity(loan.periods);
    for k in 1..=loan.periods {
        let cash_inflow = loan.payment;
        let stated_interest = rnd(prior_principal * loan.stated_rate);
        let interest_income = rnd(prior_carrying * eff);
        let amortization = rnd(interest_income - stated_interest);
        let unamortized_principal = rnd(prior_principal - (cash_inflow - stated_interest));
        cumulative_amortization = rnd(cumulative_amortization + amortization);
        let unamortized_fees = rnd(loan.net_fees - cumulative_amortization);
        let carrying_amount = match (engine, rounding) {
            // Full-precision forward mode is the raw recursion step, kept
            // bit-identical to the recursive forward series.
            (Engine::Forward, Rounding::None) => onepr * prior_carrying - cash_inflow,
            (Engine::Forward, Rounding::Cents) => {
                rnd(unamortized_principal - unamortized_fees)
            }
            (Engine::Backward, _) => rnd(backward_values.as_ref().unwrap()[k]),
        };
        rows.push(AmortizationRow {
            period: k,
            cash_inflow,
            stated_interest,
            amortization,
            interest_income,
            unamortized_principal,
            unamortized_fees,
            carrying_amount,
        });
        prior_principal = unamortized_principal;
        prior_carrying = carrying_amount;
    }
    Ok(rows)
}

/// Footer line of the published table: Σ column (3).
pub fn total_amortization(rows: &[AmortizationRow]) -> f64 {
    rows.iter().map(|r| r.amortization).sum()
}

/// Numerical check that the ledger's carrying amount is the same thing as
/// the partial present value of the remaining payments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarryingCheck {
    /// |carrying_k − partial PV at k| for k = 0..=N (k = 0 is inception).
    pub per_k_deviation: Vec<f64>,
    pub max_abs_deviation: f64,
}

/// Compare the full-precision forward-built carrying amounts against
/// independent partial-PV sums at every period.
pub fn carrying_amount_equals_partial_pv(
    loan: &LoanSpec,
    effective_rate: &Rate,
) -> Result<CarryingCheck, PvError> {
    let rows = build_schedule(loan, effective_rate, Rounding::None)?;
    let schedule = loan.cashflow();
    let mut per_k_deviation = Vec::with_capacity(loan.periods + 1);
    let inception = loan.inception_carrying();
    per_k_deviation.push((inception - pv::pv(&schedule, effective_rate)).abs());
    for (k, row) in rows.iter().enumerate() {
        let partial = pv::partial_pv(&schedule, effective_rate, k + 1)?;
        per_k_deviation.push((row.carrying_amount - partial).abs());
    }
    let max_abs_deviation = per_k_deviation.iter().cloned().fold(0.0, f64::max);
    Ok(CarryingCheck {
        per_k_deviation,
        max_abs_deviation,
    })
}
