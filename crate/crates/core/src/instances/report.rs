//! Report serialization.
//!
//! Reports are JSON objects tagged by `"report"`. Every rational is written as
//! `{"exact": "23/3", "decimal": "7.666666666666"}`; the decimal is truncated
//! to 12 fractional digits and ignored when reading back. Sweeps can also be
//! exported as CSV.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::mechanisms::MechanismId;
use crate::model::{lsw, AuctionInstance, Outcome};
use crate::rational::Rational;
use crate::verify::sweep::{SweepRow, SweepSummary};
use crate::verify::{DeviationReport, LemmaReport, LowerBoundReport, RatioReport, RobustnessCheck};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeReport {
    pub mechanism: MechanismId,
    pub outcome: Outcome,
    pub lsw: Rational,
}

impl OutcomeReport {
    pub fn new(
        mechanism: MechanismId,
        instance: &AuctionInstance,
        outcome: Outcome,
    ) -> Result<Self> {
        let lsw = lsw(instance, outcome.allocation())?;
        Ok(OutcomeReport {
            mechanism,
            outcome,
            lsw,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationsReport {
    pub mechanism: MechanismId,
    pub deviations: Vec<DeviationReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Report {
    Outcome(OutcomeReport),
    Ratio(RatioReport),
    Deviations(DeviationsReport),
    Lemmas(LemmaReport),
    Robustness(RobustnessCheck),
    LowerBound(LowerBoundReport),
    Sweep(SweepReport),
}

pub fn serialize_report(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn parse_report(text: &str) -> Result<Report> {
    Ok(serde_json::from_str(text)?)
}

pub const SWEEP_CSV_HEADER: [&str; 9] = [
    "seed",
    "n",
    "K",
    "mechanism",
    "lsw_mech",
    "lsw_opt",
    "ratio",
    "ir_ok",
    "ic_violations",
];

/// One CSV line per row; rationals in exact form, empty cells for checks not run.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_CSV_HEADER)?;
    let cell = |r: &Option<Rational>| r.as_ref().map(ToString::to_string).unwrap_or_default();
    for row in rows {
        w.write_record([
            row.seed.to_string(),
            row.n.to_string(),
            row.k.to_string(),
            row.mechanism.to_string(),
            cell(&row.lsw_mech),
            cell(&row.lsw_opt),
            cell(&row.ratio),
            row.ir_ok().to_string(),
            row.ic_violations.len().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
