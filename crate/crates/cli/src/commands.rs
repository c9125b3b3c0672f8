//! Subcommand execution: connects parsed arguments to the core library.

use pvlab_core::{
    backward_series, build_schedule_with, forward_series, pv, run_experiment, solve_irr,
    total_amortization, CashflowSchedule, Engine, ExperimentConfig, Rate, Reference, Rounding,
    Scheme,
};

use crate::input::{self, CliError};
use crate::report;
use crate::{Command, CommonArgs, EngineArg, ReferenceArg, RoundingArg, SchemeArg};

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Pv { common, scheme } => pv_command(&common, scheme),
        Command::Irr { common } => irr_command(&common),
        Command::Schedule {
            common,
            rounding,
            engine,
        } => schedule_command(&common, rounding, engine),
        Command::Errors {
            common,
            scheme,
            reference,
        } => errors_command(&common, scheme, reference),
    }
}

/// `--rate` wins; otherwise the IRR is solved from the schedule, so the
/// rate carries the certified bracket half-width as its uncertainty. The
/// returned flag says whether the rate was solved (as opposed to supplied).
fn resolve_rate(
    schedule: &CashflowSchedule,
    common: &CommonArgs,
) -> Result<(Rate, bool), CliError> {
    match common.rate {
        Some(value) => Rate::new(value)
            .map(|rate| (rate, false))
            .map_err(|e| CliError::Input(format!("--rate: {e}"))),
        None => {
            check_tolerance(common.tolerance)?;
            let result = solve_irr(schedule, common.tolerance, 200)?;
            Ok((result.rate, true))
        }
    }
}

fn check_tolerance(tolerance: f64) -> Result<(), CliError> {
    if tolerance.is_finite() && tolerance > 0.0 {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "--tolerance must be a positive number, got {tolerance}"
        )))
    }
}

fn pv_command(common: &CommonArgs, scheme: SchemeArg) -> Result<(), CliError> {
    let schedule = input::read_cashflow_csv(&common.input)?;
    let (rate, solved) = resolve_rate(&schedule, common)?;
    let schemes: &[Scheme] = match scheme {
        SchemeArg::Direct => &[Scheme::Direct],
        SchemeArg::Forward => &[Scheme::Forward],
        SchemeArg::Backward => &[Scheme::Backward],
        SchemeArg::All => &[Scheme::Direct, Scheme::Forward, Scheme::Backward],
    };
    let rows: Vec<report::PvRow> = schemes
        .iter()
        .map(|&s| {
            let value = scheme_pv(&schedule, &rate, s);
            report::PvRow {
                scheme: report::scheme_name(s),
                pv: value,
                npv: schedule.initial + value,
            }
        })
        .collect();
    report::render_pv(common.format, &rate, solved, &rows);
    Ok(())
}

/// Present value of the periodic flows by the requested scheme. The forward
/// recursion runs in the compounding direction, so its PV is the zero-seed
/// future-value fold discounted once from the horizon.
fn scheme_pv(schedule: &CashflowSchedule, rate: &Rate, scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Direct => pv(schedule, rate),
        Scheme::Forward => {
            let n = schedule.n();
            let fv = forward_series(schedule, rate, 0.0).values[n];
            -fv / rate.one_plus().powi(n as i32)
        }
        Scheme::Backward => backward_series(schedule, rate).values[0],
    }
}

fn irr_command(common: &CommonArgs) -> Result<(), CliError> {
    let schedule = input::read_cashflow_csv(&common.input)?;
    check_tolerance(common.tolerance)?;
    let result = solve_irr(&schedule, common.tolerance, 200)?;
    report::render_irr(common.format, &result);
    Ok(())
}

fn schedule_command(
    common: &CommonArgs,
    rounding: RoundingArg,
    engine: EngineArg,
) -> Result<(), CliError> {
    let loan = input::read_loan_spec(&common.input)?;
    let (rate, solved) = resolve_rate(&loan.cashflow(), common)?;
    let rounding = match rounding {
        RoundingArg::None => Rounding::None,
        RoundingArg::Cents => Rounding::Cents,
    };
    let engine = match engine {
        EngineArg::Forward => Engine::Forward,
        EngineArg::Backward => Engine::Backward,
    };
    let rows = build_schedule_with(&loan, &rate, rounding, engine)?;
    // The footer is a sum of already-rounded cells; in cents mode it is
    // itself a cents amount.
    let total = match rounding {
        Rounding::Cents => pvlab_core::round_to_cents(total_amortization(&rows)),
        Rounding::None => total_amortization(&rows),
    };
    report::render_schedule(
        common.format,
        &rate,
        solved,
        rounding,
        engine,
        loan.inception_carrying(),
        &rows,
        total,
    );
    Ok(())
}

fn errors_command(
    common: &CommonArgs,
    scheme: SchemeArg,
    reference: ReferenceArg,
) -> Result<(), CliError> {
    let schedule = input::read_cashflow_csv(&common.input)?;
    let (rate, _solved) = resolve_rate(&schedule, common)?;
    let config = ExperimentConfig {
        schemes: match scheme {
            SchemeArg::Direct => vec![Scheme::Direct],
            SchemeArg::Forward => vec![Scheme::Forward],
            SchemeArg::Backward => vec![Scheme::Backward],
            // `all` measures the two recursions; measuring the reference
            // against itself is a flat zero line.
            SchemeArg::All => vec![Scheme::Forward, Scheme::Backward],
        },
        reference: match reference {
            ReferenceArg::Direct => Reference::Direct,
            ReferenceArg::Oracle => Reference::Oracle,
        },
        noise_floor: None,
        dr_sweep: None,
    };
    let report = run_experiment(&schedule, &rate, &config)?;
    report::render_errors(common.format, &report);
    Ok(())
}
