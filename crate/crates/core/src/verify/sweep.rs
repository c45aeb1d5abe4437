//! Batch evaluation over seeded instance families.
//!
//! Instances are evaluated in parallel; rows always come back ordered by seed.

use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instances::{instance_for_seed, SweepSpec};
use crate::mechanisms::MechanismId;
use crate::model::AuctionInstance;
use crate::rational::Rational;

use super::{
    approximation_ratio, check_ic, check_ir, check_lemmas, DeviationReport, IcConfig, IrViolation,
    LemmaReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Checks {
    pub ir: bool,
    pub ic: bool,
    pub lemmas: bool,
    pub ratio: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks {
            ir: true,
            ic: true,
            lemmas: true,
            ratio: true,
        }
    }
}

/// Per-instance result; one line of the tabular summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub mechanism: MechanismId,
    pub lsw_mech: Option<Rational>,
    pub lsw_opt: Option<Rational>,
    pub ratio: Option<Rational>,
    pub ir_violations: Vec<IrViolation>,
    pub ic_violations: Vec<DeviationReport>,
    /// `None` when lemmas were not checked or do not apply (non-MPR, equal rates).
    pub lemmas: Option<LemmaReport>,
}

impl SweepRow {
    pub fn ir_ok(&self) -> bool {
        self.ir_violations.is_empty()
    }

    pub fn lemmas_ok(&self) -> bool {
        self.lemmas.as_ref().is_none_or(LemmaReport::passed)
    }
}

pub fn evaluate(
    instance: &AuctionInstance,
    mechanism: MechanismId,
    checks: Checks,
    ic: &IcConfig,
) -> Result<SweepRow> {
    let mut row = SweepRow {
        seed: instance.seed.unwrap_or_default(),
        n: instance.num_bidders(),
        k: instance.num_slots(),
        mechanism,
        lsw_mech: None,
        lsw_opt: None,
        ratio: None,
        ir_violations: Vec::new(),
        ic_violations: Vec::new(),
        lemmas: None,
    };
    if checks.ratio {
        let r = approximation_ratio(instance, mechanism)?;
        row.lsw_mech = Some(r.lsw_mechanism);
        row.lsw_opt = Some(r.lsw_optimal);
        row.ratio = Some(r.ratio);
    }
    if checks.ir {
        row.ir_violations = check_ir(mechanism, instance)?;
    }
    if checks.ic {
        row.ic_violations = check_ic(mechanism, instance, ic)?;
    }
    if checks.lemmas && mechanism == MechanismId::Mpr && instance.ladder.is_strictly_increasing() {
        row.lemmas = Some(check_lemmas(&mechanism.run(instance), instance)?);
    }
    Ok(row)
}

pub fn run_sweep(
    seeds: Range<u64>,
    spec: &SweepSpec,
    mechanism: MechanismId,
    checks: Checks,
    ic: &IcConfig,
) -> Result<Vec<SweepRow>> {
    let mut rows = seeds
        .into_par_iter()
        .map(|seed| {
            let instance = instance_for_seed(seed, spec)?;
            evaluate(&instance, mechanism, checks, ic)
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.seed);
    Ok(rows)
}

/// Totals over a set of rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub ir_violations: usize,
    pub ic_violations: usize,
    pub lemma_failures: usize,
    pub max_ratio: Option<Rational>,
}

impl SweepSummary {
    pub fn from_rows(rows: &[SweepRow]) -> Self {
        SweepSummary {
            instances: rows.len(),
            ir_violations: rows.iter().map(|r| r.ir_violations.len()).sum(),
            ic_violations: rows.iter().map(|r| r.ic_violations.len()).sum(),
            lemma_failures: rows.iter().filter(|r| !r.lemmas_ok()).count(),
            max_ratio: rows.iter().filter_map(|r| r.ratio.clone()).max(),
        }
    }
}
