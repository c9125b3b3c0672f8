//! Input file readers: cashflow CSV and loan spec key=value files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use pvlab_core::{CashflowSchedule, LoanSpec, PvError};

/// Command failure with its exit-code class.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, or invalid argument values: exit 1.
    Input(String),
    /// The computation itself failed: exit 2.
    Numerical(PvError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Numerical(err) => write!(f, "{err}"),
        }
    }
}

impl From<PvError> for CliError {
    fn from(err: PvError) -> Self {
        CliError::Numerical(err)
    }
}

/// Read a `period,amount` CSV into a schedule. Period 0 (optional) is the
/// initial flow; missing interior periods are zero-amount; duplicate or
/// negative periods are input errors.
pub fn read_cashflow_csv(path: &Path) -> Result<CashflowSchedule, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;

    {
        let headers = reader
            .headers()
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let fields: Vec<&str> = headers.iter().collect();
        if fields != ["period", "amount"] {
            return Err(CliError::Input(format!(
                "{}: expected header `period,amount`, found `{}`",
                path.display(),
                fields.join(",")
            )));
        }
    }

    let mut amounts: BTreeMap<u64, f64> = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let row = line + 2; // 1-based, after the header
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "{} row {row}: expected 2 fields, found {}",
                path.display(),
                record.len()
            )));
        }
        let period: u64 = record[0].parse().map_err(|_| {
            CliError::Input(format!(
                "{} row {row}: period `{}` is not a non-negative integer",
                path.display(),
                &record[0]
            ))
        })?;
        let amount: f64 = record[1].parse().map_err(|_| {
            CliError::Input(format!(
                "{} row {row}: amount `{}` is not a number",
                path.display(),
                &record[1]
            ))
        })?;
        if amounts.insert(period, amount).is_some() {
            return Err(CliError::Input(format!(
                "{} row {row}: duplicate period {period}",
                path.display()
            )));
        }
    }

    let initial = amounts.remove(&0).unwrap_or(0.0);
    let horizon = amounts.keys().next_back().copied().unwrap_or(0);
    let flows = (1..=horizon)
        .map(|m| amounts.get(&m).copied().unwrap_or(0.0))
        .collect();
    let schedule = CashflowSchedule::new(initial, flows);
    schedule
        .validate()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(schedule)
}

/// Read a flat key=value loan spec. Lines starting with `#` and blank
/// lines are ignored; the keys principal, net_fees, stated_rate, payment,
/// and periods are all required and nothing else is accepted.
pub fn read_loan_spec(path: &Path) -> Result<LoanSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;

    let mut principal = None;
    let mut net_fees = None;
    let mut stated_rate = None;
    let mut payment = None;
    let mut periods = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = idx + 1;
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Input(format!(
                "{} line {row}: expected key=value, found `{line}`",
                path.display()
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let number = |target: &mut Option<f64>| -> Result<(), CliError> {
            let parsed: f64 = value.parse().map_err(|_| {
                CliError::Input(format!(
                    "{} line {row}: `{value}` is not a number",
                    path.display()
                ))
            })?;
            if target.replace(parsed).is_some() {
                return Err(CliError::Input(format!(
                    "{} line {row}: duplicate key `{key}`",
                    path.display()
                )));
            }
            Ok(())
        };
        match key {
            "principal" => number(&mut principal)?,
            "net_fees" => number(&mut net_fees)?,
            "stated_rate" => number(&mut stated_rate)?,
            "payment" => number(&mut payment)?,
            "periods" => {
                let parsed: usize = value.parse().map_err(|_| {
                    CliError::Input(format!(
                        "{} line {row}: `{value}` is not a period count",
                        path.display()
                    ))
                })?;
                if periods.replace(parsed).is_some() {
                    return Err(CliError::Input(format!(
                        "{} line {row}: duplicate key `periods`",
                        path.display()
                    )));
                }
            }
            other => {
                return Err(CliError::Input(format!(
                    "{} line {row}: unknown key `{other}`",
                    path.display()
                )));
            }
        }
    }

    let require = |name: &str, value: Option<f64>| -> Result<f64, CliError> {
        value.ok_or_else(|| {
            CliError::Input(format!("{}: missing key `{name}`", path.display()))
        })
    };
    let principal = require("principal", principal)?;
    let net_fees = require("net_fees", net_fees)?;
    let stated_rate = require("stated_rate", stated_rate)?;
    let payment = require("payment", payment)?;
    let periods = periods.ok_or_else(|| {
        CliError::Input(format!("{}: missing key `periods`", path.display()))
    })?;

    LoanSpec::new(principal, net_fees, stated_rate, payment, periods)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
