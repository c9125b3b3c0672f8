//! Error-growth measurement lab.
//!
//! The point of this crate is an empirical claim about the two recursion
//! schemes: when the discount rate carries an uncertainty Δr, the forward
//! recursion's error grows like (1+r)^k while the backward recursion's error
//! stays at the size of the values themselves (and shrinks with them). This
//! module measures error trajectories against a reference series, fits
//! exponential growth rates, evaluates the first-order theoretical error
//! models, and wraps everything in a repeatable experiment runner.

use serde::{Deserialize, Serialize};

use crate::cashflow::{CashflowSchedule, PrecisionConfig, Rate};
use crate::error::PvError;
use crate::irr::{solve_irr_with, IrrOptions};
use crate::pv::{oracle_pv_series, pv_series_direct, PvSeries, Scheme};
use crate::recursive;
use crate::scalar::ulp;

/// Minimum number of above-floor points before a least-squares growth fit
/// is considered meaningful.
const MIN_FIT_POINTS: usize = 5;

/// Empirical per-period error trajectory of one scheme against a reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTrajectory {
    /// |scheme PV_k − reference PV_k| for k = 0..=N.
    pub abs_errors: Vec<f64>,
    /// `ratios[k-1]` = abs_errors[k] / abs_errors[k−1] for k ≥ 1; `None`
    /// when the denominator sits below the noise floor, where the ratio is
    /// rounding jitter rather than signal.
    pub ratios: Vec<Option<f64>>,
    /// Per-period growth fraction g from a least-squares fit of
    /// log(abs_error) vs k, so errors grow like (1+g)^k. `None` when fewer
    /// than 5 errors rise above the noise floor.
    pub fitted_growth: Option<f64>,
    /// Threshold below which errors are excluded from the fit.
    pub noise_floor: f64,
}

/// First-order predicted absolute error per period for one scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalErrorModel {
    pub scheme: Scheme,
    pub per_k_bound: Vec<f64>,
}

/// Default fitting floor: 16 ulp of the largest value in the reference
/// series. Errors below this are indistinguishable from working-precision
/// rounding noise.
pub fn default_noise_floor(reference: &PvSeries) -> f64 {
    16.0 * ulp(reference.max_abs())
}

/// Compare a scheme's series against a reference and fit the error growth.
///
/// `noise_floor = None` uses [`default_noise_floor`] of the reference.
pub fn measure(
    scheme_series: &PvSeries,
    reference_series: &PvSeries,
    noise_floor: Option<f64>,
) -> Result<ErrorTrajectory, PvError> {
    if scheme_series.values.len() != reference_series.values.len() {
        return Err(PvError::LengthMismatch {
            left: scheme_series.values.len(),
            right: reference_series.values.len(),
        });
    }
    let floor = noise_floor.unwrap_or_else(|| default_noise_floor(reference_series));
    let abs_errors: Vec<f64> = scheme_series
        .values
        .iter()
        .zip(reference_series.values.iter())
        .map(|(a, b)| (a - b).abs())
        .collect();
    let ratios: Vec<Option<f64>> = abs_errors
        .windows(2)
        .map(|w| if w[0] > floor { Some(w[1] / w[0]) } else { None })
        .collect();
    let fitted_growth = fit_growth(&abs_errors, floor);
    Ok(ErrorTrajectory {
        abs_errors,
        ratios,
        fitted_growth,
        noise_floor: floor,
    })
}

/// Least-squares slope of ln(err) vs k over points with err strictly above
/// the floor, reported as g = e^slope − 1.
fn fit_growth(abs_errors: &[f64], floor: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = abs_errors
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > floor)
        .map(|(k, e)| (k as f64, e.ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|(x, _)| x).sum();
    let sy: f64 = pts.iter().map(|(_, y)| y).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| x * x).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Some(slope.exp() - 1.0)
}

/// First-order forward-recursion error bound: the seed error |C_0|·Δr is
/// multiplied by (1+r) at every step, so per_k_bound[k] = |1+r|^{k−1}·|C_0|·Δr
/// for k ≥ 1 (and 0 at k = 0, where the seed is taken as exact input).
pub fn forward_error_model(
    schedule: &CashflowSchedule,
    rate: &Rate,
) -> Result<TheoreticalErrorModel, PvError> {
    let dr = require_uncertainty(rate)?;
    let c0 = schedule.initial.abs();
    let onepr = rate.one_plus().abs();
    let n = schedule.n();
    let mut per_k_bound = Vec::with_capacity(n + 1);
    per_k_bound.push(0.0);
    let mut factor = 1.0;
    for _ in 1..=n {
        per_k_bound.push(factor * c0 * dr);
        factor *= onepr;
    }
    Ok(TheoreticalErrorModel {
        scheme: Scheme::Forward,
        per_k_bound,
    })
}

/// First-order backward-recursion error bound: each step divides the rate
/// error contribution by (1+r), so the bound at k is driven by the sizes of
/// the next values, |PV_{k+1}|·Δr/(1+r)² + |PV_{k+2}|·Δr/|1+r|³, with PV
/// beyond N taken as zero. No term grows with k.
pub fn backward_error_model(
    schedule: &CashflowSchedule,
    rate: &Rate,
    oracle: &PvSeries,
) -> Result<TheoreticalErrorModel, PvError> {
    let dr = require_uncertainty(rate)?;
    let n = schedule.n();
    if oracle.values.len() != n + 1 {
        return Err(PvError::LengthMismatch {
            left: oracle.values.len(),
            right: n + 1,
        });
    }
    let onepr = rate.one_plus().abs();
    let pv_at = |k: usize| -> f64 {
        if k <= n {
            oracle.values[k].abs()
        } else {
            0.0
        }
    };
    let per_k_bound = (0..=n)
        .map(|k| pv_at(k + 1) * dr / (onepr * onepr) + pv_at(k + 2) * dr / (onepr * onepr * onepr))
        .collect();
    Ok(TheoreticalErrorModel {
        scheme: Scheme::Backward,
        per_k_bound,
    })
}

fn require_uncertainty(rate: &Rate) -> Result<f64, PvError> {
    let dr = rate.uncertainty();
    if dr == 0.0 {
        return Err(PvError::ZeroUncertainty);
    }
    Ok(dr)
}

/// Which series plays the ground truth in an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// Independent direct sums in working precision (the spreadsheet-style
    /// methodology: cheap, and accurate enough to expose scheme error).
    Direct,
    /// Exact-arithmetic series rounded once to working precision (stricter).
    Oracle,
}

/// What an error trajectory says about a scheme, judged against the
/// discount rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Fitted growth within ±0.003 of r: the exponential amplification is
    /// present.
    GrowsWithRate,
    /// |fitted growth| ≤ 0.002: no measurable compounding.
    Flat,
    /// Too few errors rise above the noise floor to fit anything — the
    /// scheme is as good as the reference here.
    BelowNoiseFloor,
    /// Errors are measurable but match neither pattern.
    Inconclusive,
}

/// Experiment selection: which schemes to run, what to compare them
/// against, and optionally a Δr sweep (re-solving the IRR at several
/// tolerances to vary the rate uncertainty).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub schemes: Vec<Scheme>,
    pub reference: Reference,
    /// `None` → [`default_noise_floor`] of the reference series.
    pub noise_floor: Option<f64>,
    /// IRR tolerances to re-solve at; each yields one sweep point.
    pub dr_sweep: Option<Vec<f64>>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            schemes: vec![Scheme::Forward, Scheme::Backward],
            reference: Reference::Direct,
            noise_floor: None,
            dr_sweep: None,
        }
    }
}

/// One scheme's full results within an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeReport {
    pub scheme: Scheme,
    pub series: PvSeries,
    pub trajectory: ErrorTrajectory,
    /// `None` when the rate has zero uncertainty (externally supplied with
    /// no Δr): the first-order models are all proportional to Δr and would
    /// be identically zero.
    pub model: Option<TheoreticalErrorModel>,
    pub verdict: Verdict,
}

/// One point of the Δr sweep: the forward scheme re-run at a rate displaced
/// by the solver's certified uncertainty, compared against direct sums at
/// the same displaced rate. First-order theory predicts the tail of the
/// error trajectory scales linearly in Δr.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrSweepPoint {
    pub tolerance: f64,
    /// Certified rate uncertainty at this tolerance.
    pub dr: f64,
    /// Mean absolute forward error over k ≥ N/2, where amplification has
    /// lifted the signal well above rounding noise.
    pub tail_mean_abs_error: f64,
}

/// Everything produced by one experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rate: Rate,
    pub schemes: Vec<SchemeReport>,
    pub dr_sweep: Vec<DrSweepPoint>,
}

/// Run the selected schemes against the selected reference and judge each
/// trajectory.
///
/// The forward scheme is seeded with −C_0 when the schedule has an initial
/// flow (the natural at-par seed), otherwise with the reference's own PV_0
/// (the best working-precision seed available). An empty schedule yields an
/// empty report.
pub fn run_experiment(
    schedule: &CashflowSchedule,
    rate: &Rate,
    config: &ExperimentConfig,
) -> Result<ExperimentReport, PvError> {
    schedule.validate()?;
    if schedule.flows.is_empty() {
        return Ok(ExperimentReport {
            rate: *rate,
            schemes: Vec::new(),
            dr_sweep: Vec::new(),
        });
    }

    let reference = match config.reference {
        Reference::Direct => pv_series_direct(schedule, rate),
        Reference::Oracle => oracle_pv_series(schedule, rate, &PrecisionConfig::default())?,
    };

    let mut schemes = Vec::with_capacity(config.schemes.len());
    for &scheme in &config.schemes {
        let series = match scheme {
            Scheme::Direct => pv_series_direct(schedule, rate),
            Scheme::Forward => {
                let pv0 = if schedule.initial != 0.0 {
                    -schedule.initial
                } else {
                    reference.values[0]
                };
                recursive::forward_series(schedule, rate, pv0)
            }
            Scheme::Backward => recursive::backward_series(schedule, rate),
        };
        let trajectory = measure(&series, &reference, config.noise_floor)?;
        let model = match (scheme, rate.uncertainty() > 0.0) {
            (Scheme::Forward, true) => Some(forward_error_model(schedule, rate)?),
            (Scheme::Backward, true) => Some(backward_error_model(schedule, rate, &reference)?),
            _ => None,
        };
        let verdict = judge(scheme, &trajectory, rate.value());
        schemes.push(SchemeReport {
            scheme,
            series,
            trajectory,
            model,
            verdict,
        });
    }

    let mut dr_sweep = Vec::new();
    if let Some(tolerances) = &config.dr_sweep {
        for &tolerance in tolerances {
            dr_sweep.push(sweep_point(schedule, tolerance)?);
        }
    }

    Ok(ExperimentReport {
        rate: *rate,
        schemes,
        dr_sweep,
    })
}

/// Classify a trajectory. The forward scheme is asked first whether it
/// grows with the rate, the backward scheme first whether it is flat, so
/// tiny rates (where the two bands overlap) resolve toward each scheme's
/// theoretical prediction rather than flapping.
fn judge(scheme: Scheme, trajectory: &ErrorTrajectory, r: f64) -> Verdict {
    let g = match trajectory.fitted_growth {
        Some(g) => g,
        None => {
            let measurable = trajectory
                .abs_errors
                .iter()
                .any(|e| *e > trajectory.noise_floor);
            return if measurable {
                Verdict::Inconclusive
            } else {
                Verdict::BelowNoiseFloor
            };
        }
    };
    let grows = (g - r).abs() <= 0.003;
    let flat = g.abs() <= 0.002;
    match scheme {
        Scheme::Backward => {
            if flat {
                Verdict::Flat
            } else if grows {
                Verdict::GrowsWithRate
            } else {
                Verdict::Inconclusive
            }
        }
        _ => {
            if grows {
                Verdict::GrowsWithRate
            } else if flat {
                Verdict::Flat
            } else {
                Verdict::Inconclusive
            }
        }
    }
}

/// Re-solve the IRR at the given tolerance, displace the rate by the
/// certified Δr, and measure the forward scheme's tail error at the
/// displaced rate against direct sums at that same rate. Holding both
/// series to one rate isolates the seed-displacement effect the model
/// describes from the incidental accuracy of the point estimate.
fn sweep_point(schedule: &CashflowSchedule, tolerance: f64) -> Result<DrSweepPoint, PvError> {
    let solved = solve_irr_with(
        schedule,
        &IrrOptions {
            tolerance,
            ..IrrOptions::default()
        },
    )?;
    let dr = solved.rate.uncertainty();
    let displaced = Rate::new(solved.rate.value() + dr)?;
    let pv0 = if schedule.initial != 0.0 {
        -schedule.initial
    } else {
        pv_series_direct(schedule, &displaced).values[0]
    };
    let forward = recursive::forward_series(schedule, &displaced, pv0);
    let direct = pv_series_direct(schedule, &displaced);
    let errs: Vec<f64> = forward
        .values
        .iter()
        .zip(direct.values.iter())
        .map(|(a, b)| (a - b).abs())
        .collect();
    let tail = &errs[errs.len() / 2..];
    let tail_mean_abs_error = tail.iter().sum::<f64>() / tail.len() as f64;
    Ok(DrSweepPoint {
        tolerance,
        dr,
        tail_mean_abs_error,
    })
}
