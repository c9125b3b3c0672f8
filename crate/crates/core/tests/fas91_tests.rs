//! Amortization-schedule construction against the published ten-year
//! example table, plus loan validation and the carrying-amount check.

use pvlab_core::{
    annuity_payment, backward_series, build_schedule, build_schedule_with,
    carrying_amount_equals_partial_pv, forward_error_model, forward_series, round_to_cents,
    solve_irr, total_amortization, Engine, LoanSpec, PvError, Rate, Rounding,
};

// Published ten-year schedule for the 100,000 / 2,000 / 10% / 16,274.54
// loan: columns (1) cash inflow, (2) stated interest, (3) amortization,
// (4) interest income, (7) carrying amount.
const PUBLISHED: [(f64, f64, f64, f64, f64); 10] = [
    (16_274.54, 10_000.00, 263.52, 10_263.52, 91_988.98),
    (16_274.54, 9_372.55, 261.44, 9_633.99, 85_348.43),
    (16_274.54, 8_682.35, 256.18, 8_938.53, 78_012.42),
    (16_274.54, 7_923.13, 247.10, 8_170.23, 69_908.11),
    (16_274.54, 7_087.99, 233.48, 7_321.46, 60_955.04),
    (16_274.54, 6_169.33, 214.48, 6_383.81, 51_064.31),
    (16_274.54, 5_158.81, 189.15, 5_347.96, 40_137.72),
    (16_274.54, 4_047.24, 156.38, 4_203.62, 28_066.80),
    (16_274.54, 2_824.51, 114.92, 2_939.43, 14_731.69),
    (16_274.54, 1_479.50, 63.34, 1_542.85, 0.00),
];

fn fas91_loan() -> LoanSpec {
    LoanSpec::new(100_000.0, 2_000.0, 0.10, 16_274.54, 10).unwrap()
}

fn fas91_rate() -> Rate {
    fas91_loan().solve_effective_rate().unwrap().rate
}

#[test]
fn loan_validation_rejects_bad_inputs() {
    assert!(matches!(
        LoanSpec::new(0.0, 0.0, 0.1, 10.0, 5),
        Err(PvError::NonPositivePrincipal { .. })
    ));
    assert!(matches!(
        LoanSpec::new(-5.0, 0.0, 0.1, 10.0, 5),
        Err(PvError::NonPositivePrincipal { .. })
    ));
    assert!(matches!(
        LoanSpec::new(100.0, 0.0, 0.1, 10.0, 0),
        Err(PvError::InvalidLoan { .. })
    ));
    assert!(matches!(
        LoanSpec::new(100.0, 0.0, -1.5, 10.0, 5),
        Err(PvError::RateOutOfDomain { .. })
    ));
    assert!(matches!(
        LoanSpec::new(100.0, 0.0, 0.1, f64::NAN, 5),
        Err(PvError::InvalidLoan { .. })
    ));
}

#[test]
fn annuity_payment_reproduces_published_payment() {
    let payment = annuity_payment(100_000.0, 0.10, 10);
    assert!((payment - 16_274.54).abs() < 0.005, "payment = {payment}");
}

#[test]
fn annuity_payment_at_zero_rate_is_level_principal() {
    assert_eq!(annuity_payment(120.0, 0.0, 12), 10.0);
}

#[test]
fn round_to_cents_is_half_even() {
    // Exact half-cent ties (dyadic values) round to the even cent; 2.135
    // is not a tie because its nearest double is fractionally below it.
    assert_eq!(round_to_cents(2.125), 2.12);
    assert_eq!(round_to_cents(0.375), 0.38);
    assert_eq!(round_to_cents(-2.125), -2.12);
    assert_eq!(round_to_cents(2.135), 2.13);
    assert_eq!(round_to_cents(2.136), 2.14);
    assert_eq!(round_to_cents(1999.994), 1999.99);
}

#[test]
fn ledger_schedule_reproduces_published_table() {
    // Cells live on the cents grid, so a one-cent deviation measures as
    // 0.01 plus representation fuzz; 0.015 means "at most one cent off".
    fn within_one_cent(a: f64, b: f64) -> bool {
        (a - b).abs() <= 0.015
    }
    let rows = build_schedule(&fas91_loan(), &fas91_rate(), Rounding::Cents).unwrap();
    assert_eq!(rows.len(), 10);
    for (row, (c1, c2, c3, c4, c7)) in rows.iter().zip(PUBLISHED.iter()) {
        assert!(within_one_cent(row.cash_inflow, *c1), "period {}", row.period);
        assert!(
            within_one_cent(row.stated_interest, *c2),
            "period {} col2: {} vs {c2}",
            row.period,
            row.stated_interest
        );
        assert!(
            within_one_cent(row.amortization, *c3),
            "period {} col3: {} vs {c3}",
            row.period,
            row.amortization
        );
        assert!(
            within_one_cent(row.interest_income, *c4),
            "period {} col4: {} vs {c4}",
            row.period,
            row.interest_income
        );
        assert!(
            within_one_cent(row.carrying_amount, *c7),
            "period {} col7: {} vs {c7}",
            row.period,
            row.carrying_amount
        );
    }
}

#[test]
fn ledger_schedule_lands_on_zero_carrying() {
    let rows = build_schedule(&fas91_loan(), &fas91_rate(), Rounding::Cents).unwrap();
    assert!(rows[9].carrying_amount.abs() <= 0.01);
}

#[test]
fn total_amortization_recovers_net_fees() {
    let rate = fas91_rate();
    let ledger = build_schedule(&fas91_loan(), &rate, Rounding::Cents).unwrap();
    let total = total_amortization(&ledger);
    assert!((total - 2_000.00).abs() <= 0.02, "ledger total = {total}");
    let exact = build_schedule(&fas91_loan(), &rate, Rounding::None).unwrap();
    let total = total_amortization(&exact);
    assert!(
        (total - 2_000.00).abs() <= 10.0 * 0.005,
        "full-precision total = {total}"
    );
}

#[test]
fn column_identities_hold_per_row() {
    let rows = build_schedule(&fas91_loan(), &fas91_rate(), Rounding::None).unwrap();
    // Identity deviations are rounding residue at the scale of the
    // inception carrying amount, not of the (vanishing) row values.
    let scale_ulp = pvlab_core::ulp(fas91_loan().inception_carrying());
    for row in &rows {
        let d3 = (row.amortization - (row.interest_income - row.stated_interest)).abs();
        assert_eq!(d3, 0.0, "period {}", row.period);
        let d7 = (row.carrying_amount - (row.unamortized_principal - row.unamortized_fees)).abs();
        assert!(
            d7 <= 4.0 * scale_ulp,
            "period {}: (7)-((5)-(6)) = {d7}",
            row.period
        );
    }
}

#[test]
fn forward_engine_carrying_is_bit_identical_to_forward_series() {
    let loan = fas91_loan();
    let rate = fas91_rate();
    let rows = build_schedule(&loan, &rate, Rounding::None).unwrap();
    let series = forward_series(&loan.cashflow(), &rate, loan.inception_carrying());
    for (row, value) in rows.iter().zip(series.values.iter().skip(1)) {
        assert_eq!(row.carrying_amount.to_bits(), value.to_bits());
    }
}

#[test]
fn backward_engine_carrying_is_bit_identical_to_backward_series() {
    let loan = fas91_loan();
    let rate = fas91_rate();
    let rows = build_schedule_with(&loan, &rate, Rounding::None, Engine::Backward).unwrap();
    let series = backward_series(&loan.cashflow(), &rate);
    for (row, value) in rows.iter().zip(series.values.iter().skip(1)) {
        assert_eq!(row.carrying_amount.to_bits(), value.to_bits());
    }
}

#[test]
fn backward_engine_shares_contractual_columns_with_forward() {
    let loan = fas91_loan();
    let rate = fas91_rate();
    let fwd = build_schedule_with(&loan, &rate, Rounding::Cents, Engine::Forward).unwrap();
    let bwd = build_schedule_with(&loan, &rate, Rounding::Cents, Engine::Backward).unwrap();
    for (f, b) in fwd.iter().zip(bwd.iter()) {
        assert_eq!(f.cash_inflow, b.cash_inflow);
        assert_eq!(f.stated_interest, b.stated_interest);
        // Each engine may land a cent away from the exact value on its own
        // side, so the cross-engine gap can reach two cents.
        assert!((f.carrying_amount - b.carrying_amount).abs() <= 0.02);
    }
    assert_eq!(bwd[9].carrying_amount, 0.0);
}

#[test]
fn zero_fee_loan_has_no_amortization_and_stated_yield() {
    let payment = annuity_payment(100_000.0, 0.10, 10);
    let loan = LoanSpec::new(100_000.0, 0.0, 0.10, payment, 10).unwrap();
    let solved = loan.solve_effective_rate().unwrap();
    assert!(
        (solved.rate.value() - 0.10).abs() < 1e-9,
        "effective = {}",
        solved.rate.value()
    );
    let rows = build_schedule(&loan, &solved.rate, Rounding::Cents).unwrap();
    for row in &rows {
        assert_eq!(row.amortization, 0.0, "period {}", row.period);
        assert_eq!(row.unamortized_fees, 0.0);
        assert_eq!(row.carrying_amount, row.unamortized_principal);
    }
    assert_eq!(total_amortization(&rows), 0.0);
}

#[test]
fn zero_fee_carrying_matches_closed_form_balance() {
    let principal = 250_000.0;
    let r = 0.004;
    let n = 60;
    let payment = annuity_payment(principal, r, n);
    let loan = LoanSpec::new(principal, 0.0, r, payment, n).unwrap();
    let solved = loan.solve_effective_rate().unwrap();
    let rows = build_schedule(&loan, &solved.rate, Rounding::None).unwrap();
    for (k, row) in rows.iter().enumerate() {
        let periods_done = (k + 1) as i32;
        let growth = (1.0 + r).powi(periods_done);
        let balance = principal * growth - payment * (growth - 1.0) / r;
        assert!(
            ((row.carrying_amount - balance) / principal).abs() < 1e-8,
            "k={periods_done}: {} vs {balance}",
            row.carrying_amount
        );
    }
}

#[test]
fn carrying_amounts_are_partial_pvs_within_forward_error() {
    let loan = fas91_loan();
    let solved = loan.solve_effective_rate().unwrap();
    let check = carrying_amount_equals_partial_pv(&loan, &solved.rate).unwrap();
    assert_eq!(check.per_k_deviation.len(), 11);
    let model = forward_error_model(&loan.cashflow(), &solved.rate).unwrap();
    let bound = model.per_k_bound.iter().cloned().fold(0.0, f64::max);
    assert!(
        check.max_abs_deviation <= bound,
        "max deviation {} vs first-order bound {bound}",
        check.max_abs_deviation
    );
}

#[test]
fn one_period_loan_carrying_deviation_is_ulp_scale() {
    let loan = LoanSpec::new(100.0, 0.0, 0.10, 110.0, 1).unwrap();
    let solved = loan.solve_effective_rate().unwrap();
    let check = carrying_amount_equals_partial_pv(&loan, &solved.rate).unwrap();
    assert!(
        check.max_abs_deviation <= 2.0 * pvlab_core::ulp(110.0),
        "max deviation {}",
        check.max_abs_deviation
    );
}

#[test]
fn final_carrying_vanishes_at_tight_tolerance() {
    let loan = fas91_loan();
    let rate = solve_irr(&loan.cashflow(), 1e-12, 200).unwrap().rate;
    let rows = build_schedule(&loan, &rate, Rounding::None).unwrap();
    assert!(
        rows[9].carrying_amount.abs() <= 1e-5,
        "final carrying = {}",
        rows[9].carrying_amount
    );
}
