//! Output renderers: text, CSV, and JSON for every subcommand.
//!
//! All formats are deterministic: the same inputs produce byte-identical
//! output. Floats render with shortest round-trip digits, so nothing is
//! lost to formatting; money cells in a cents-rounded schedule render with
//! two decimals.

use pvlab_core::{
    AmortizationRow, Engine, ExperimentReport, IrrResult, IrrWarning, Rate, Rounding, Scheme,
    Verdict,
};
use serde::Serialize;

use crate::FormatArg;

/// One line of `pv` output: a scheme with its PV and NPV.
#[derive(Debug, Serialize)]
pub struct PvRow {
    pub scheme: &'static str,
    pub pv: f64,
    pub npv: f64,
}

pub fn scheme_name(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::Direct => "direct",
        Scheme::Forward => "forward",
        Scheme::Backward => "backward",
    }
}

fn verdict_name(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::GrowsWithRate => "grows_with_rate",
        Verdict::Flat => "flat",
        Verdict::BelowNoiseFloor => "below_noise_floor",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// None of the payloads here contain non-string map keys, so JSON
/// serialization cannot fail (non-finite floats serialize as null).
fn print_json<T: Serialize>(payload: &T) {
    let text = serde_json::to_string_pretty(payload).expect("JSON serialization failed");
    println!("{text}");
}

fn money(x: f64, rounding: Rounding) -> String {
    match rounding {
        Rounding::Cents => format!("{x:.2}"),
        Rounding::None => format!("{x}"),
    }
}

#[derive(Serialize)]
struct PvPayload<'a> {
    rate: &'a Rate,
    solved: bool,
    schemes: &'a [PvRow],
}

pub fn render_pv(format: FormatArg, rate: &Rate, solved: bool, rows: &[PvRow]) {
    match format {
        FormatArg::Text => {
            println!("rate = {}", rate.value());
            if solved {
                println!("uncertainty = {:e}", rate.uncertainty());
            }
            for row in rows {
                println!("{}: pv = {}, npv = {}", row.scheme, row.pv, row.npv);
            }
        }
        FormatArg::Csv => {
            println!("scheme,pv,npv");
            for row in rows {
                println!("{},{},{}", row.scheme, row.pv, row.npv);
            }
        }
        FormatArg::Json => print_json(&PvPayload {
            rate,
            solved,
            schemes: rows,
        }),
    }
}

pub fn render_irr(format: FormatArg, result: &IrrResult) {
    match format {
        FormatArg::Text => {
            println!("rate = {}", result.rate.value());
            println!("uncertainty = {:e}", result.rate.uncertainty());
            println!("iterations = {}", result.iterations);
            println!("residual = {:e}", result.residual);
            for warning in &result.warnings {
                match warning {
                    IrrWarning::AmbiguousRoot { sign_changes } => println!(
                        "warning: {sign_changes} sign changes in the cashflow; \
                         other roots may exist"
                    ),
                }
            }
        }
        FormatArg::Csv => {
            let warnings = result
                .warnings
                .iter()
                .map(|w| match w {
                    IrrWarning::AmbiguousRoot { sign_changes } => {
                        format!("ambiguous_root:{sign_changes}")
                    }
                })
                .collect::<Vec<_>>()
                .join(";");
            println!("rate,uncertainty,iterations,residual,warnings");
            println!(
                "{},{:e},{},{:e},{}",
                result.rate.value(),
                result.rate.uncertainty(),
                result.iterations,
                result.residual,
                warnings
            );
        }
        FormatArg::Json => print_json(result),
    }
}

#[derive(Serialize)]
struct SchedulePayload<'a> {
    effective_rate: &'a Rate,
    solved: bool,
    rounding: Rounding,
    engine: Engine,
    inception_carrying_amount: f64,
    rows: &'a [AmortizationRow],
    total_amortization: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn render_schedule(
    format: FormatArg,
    rate: &Rate,
    solved: bool,
    rounding: Rounding,
    engine: Engine,
    inception: f64,
    rows: &[AmortizationRow],
    total: f64,
) {
    match format {
        FormatArg::Text => {
            println!("effective rate = {}", rate.value());
            if solved {
                println!("uncertainty = {:e}", rate.uncertainty());
            }
            println!("inception carrying amount = {}", money(inception, rounding));
            println!(
                "{:>6}  {:>14} {:>16} {:>14} {:>16} {:>22} {:>17} {:>16}",
                "period",
                "cash_inflow",
                "stated_interest",
                "amortization",
                "interest_income",
                "unamortized_principal",
                "unamortized_fees",
                "carrying_amount"
            );
            for r in rows {
                println!(
                    "{:>6}  {:>14} {:>16} {:>14} {:>16} {:>22} {:>17} {:>16}",
                    r.period,
                    money(r.cash_inflow, rounding),
                    money(r.stated_interest, rounding),
                    money(r.amortization, rounding),
                    money(r.interest_income, rounding),
                    money(r.unamortized_principal, rounding),
                    money(r.unamortized_fees, rounding),
                    money(r.carrying_amount, rounding)
                );
            }
            println!("total amortization: {}", money(total, rounding));
        }
        FormatArg::Csv => {
            println!(
                "period,col1_cash_inflow,col2_stated_interest,col3_amortization,\
                 col4_interest_income,col5_unamortized_principal,col6_unamortized_fees,\
                 col7_carrying_amount"
            );
            for r in rows {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    r.period,
                    money(r.cash_inflow, rounding),
                    money(r.stated_interest, rounding),
                    money(r.amortization, rounding),
                    money(r.interest_income, rounding),
                    money(r.unamortized_principal, rounding),
                    money(r.unamortized_fees, rounding),
                    money(r.carrying_amount, rounding)
                );
            }
        }
        FormatArg::Json => print_json(&SchedulePayload {
            effective_rate: rate,
            solved,
            rounding,
            engine,
            inception_carrying_amount: inception,
            rows,
            total_amortization: total,
        }),
    }
}

pub fn render_errors(format: FormatArg, report: &ExperimentReport) {
    match format {
        FormatArg::Text => {
            println!("rate = {}", report.rate.value());
            println!("uncertainty = {:e}", report.rate.uncertainty());
            for s in &report.schemes {
                let fitted = match s.trajectory.fitted_growth {
                    Some(g) => format!("{g:e}"),
                    None => "none".to_string(),
                };
                let max_err = s
                    .trajectory
                    .abs_errors
                    .iter()
                    .fold(0.0_f64, |m, e| m.max(e.abs()));
                println!(
                    "{}: verdict = {}, fitted growth = {}, max abs error = {:e}, \
                     noise floor = {:e}",
                    scheme_name(s.scheme),
                    verdict_name(s.verdict),
                    fitted,
                    max_err,
                    s.trajectory.noise_floor
                );
            }
            for point in &report.dr_sweep {
                println!(
                    "sweep: tolerance = {:e}, dr = {:e}, tail mean abs error = {:e}",
                    point.tolerance, point.dr, point.tail_mean_abs_error
                );
            }
        }
        FormatArg::Csv => {
            println!("k,scheme,abs_error,ratio");
            for s in &report.schemes {
                let name = scheme_name(s.scheme);
                for (k, err) in s.trajectory.abs_errors.iter().enumerate() {
                    let ratio = if k == 0 {
                        None
                    } else {
                        s.trajectory.ratios[k - 1]
                    };
                    match ratio {
                        Some(x) => println!("{k},{name},{err:e},{x:e}"),
                        None => println!("{k},{name},{err:e},"),
                    }
                }
            }
        }
        FormatArg::Json => print_json(report),
    }
}
