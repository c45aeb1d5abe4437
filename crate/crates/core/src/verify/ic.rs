//! Incentive-compatibility falsifier.
//!
//! Mechanism outcomes are piecewise constant in a bidder's reported value,
//! with breakpoints at other bidders' values and at marginal prices between
//! slots. The search evaluates every misreport on those points, on points
//! `delta` to either side, and on a uniform grid. An empty result is
//! evidence of truthfulness, not a proof.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::mechanisms::MechanismId;
use crate::model::{
    marginal_payment_increase, um_utility, vm_preference, AuctionInstance, BidderClass, BidderId,
    BidderType, Outcome, Slot, VmPreference,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaRule {
    /// Probe offset used as is.
    Fixed(Rational),
    /// Offset as a fraction of the smallest gap between distinct base points.
    GapFraction(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcConfig {
    pub delta: DeltaRule,
    pub grid_points: usize,
    /// Also try misreporting the class. Off models public classes.
    pub class_deviations: bool,
    /// Also try values equal to another bidder's value. Such reports leave
    /// the distinct-values domain; MPR is not truthful there.
    pub tied_reports: bool,
}

impl Default for IcConfig {
    fn default() -> Self {
        IcConfig {
            delta: DeltaRule::GapFraction(Rational::new(1, 1000)),
            grid_points: 64,
            class_deviations: true,
            tied_reports: false,
        }
    }
}

impl IcConfig {
    fn validate(&self) -> Result<()> {
        let d = match &self.delta {
            DeltaRule::Fixed(d) | DeltaRule::GapFraction(d) => d,
        };
        if !d.is_positive() {
            return Err(AuctionError::InvalidConfig(format!(
                "delta must be positive, got {d}"
            )));
        }
        Ok(())
    }
}

/// Slot and per-click price of one bidder in one outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub slot: Option<Slot>,
    pub price: Rational,
}

impl Placement {
    fn of(outcome: &Outcome, id: BidderId) -> Self {
        Placement {
            slot: outcome.allocation().assigned_slot(id),
            price: outcome.payment(id).clone(),
        }
    }
}

/// Objective value under the bidder's true class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "UPPERCASE")]
pub enum Utility {
    Um { utility: Rational },
    Vm { preference: VmPreference },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub mechanism: MechanismId,
    pub bidder: BidderId,
    pub true_type: BidderType,
    pub misreport: BidderType,
    pub truthful: Placement,
    pub deviation: Placement,
    pub truthful_utility: Utility,
    pub deviation_utility: Utility,
}

/// Candidate reported values for bidder `id`.
///
/// Base points are the other bidders' values and every marginal price between
/// two slots of the truthful outcome (the dummy slot included). Each base
/// point is also probed at `+-delta`, and `grid_points` evenly spaced values
/// cover `(0, max_value + 1]`. Non-positive values are dropped.
pub fn critical_values(
    mechanism: MechanismId,
    instance: &AuctionInstance,
    id: BidderId,
    config: &IcConfig,
) -> Result<BTreeSet<Rational>> {
    config.validate()?;
    if id >= instance.num_bidders() {
        return Err(AuctionError::InvalidInput(format!("unknown bidder {id}")));
    }
    let truthful = mechanism.run(instance);
    let mut base: BTreeSet<Rational> = instance
        .bidders()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != id)
        .map(|(_, b)| b.value.clone())
        .collect();
    let k_slots = instance.num_slots();
    for k in 0..k_slots {
        for k_prime in k + 1..=k_slots {
            match marginal_payment_increase(&truthful, instance, k, k_prime) {
                Ok(d) => {
                    base.insert(d);
                }
                Err(AuctionError::DegeneratePair { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    base.retain(|v| v.is_positive());

    let delta = match &config.delta {
        DeltaRule::Fixed(d) => d.clone(),
        DeltaRule::GapFraction(f) => {
            let mut points = base.clone();
            points.insert(instance.bidders()[id].value.clone());
            let points: Vec<&Rational> = points.iter().collect();
            let min_gap = points
                .windows(2)
                .map(|w| w[1] - w[0])
                .min()
                .unwrap_or_else(Rational::one);
            min_gap * f
        }
    };

    let mut out = BTreeSet::new();
    for v in &base {
        out.insert(v - &delta);
        out.insert(v + &delta);
        out.insert(v.clone());
    }
    if config.grid_points > 0 {
        let top = instance
            .bidders()
            .iter()
            .map(|b| &b.value)
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
            + Rational::one();
        let g = config.grid_points as i64;
        for j in 1..=g {
            out.insert(&top * Rational::new(j, g));
        }
    }
    out.retain(|v| v.is_positive());
    Ok(out)
}

fn utility_of(
    truth: &BidderType,
    outcome: &Outcome,
    instance: &AuctionInstance,
    id: BidderId,
) -> Utility {
    let ctr = outcome.ctr_of(&instance.ladder, id);
    let price = outcome.payment(id);
    match truth.class {
        BidderClass::Um => Utility::Um {
            utility: um_utility(&truth.value, &ctr, price),
        },
        BidderClass::Vm => Utility::Vm {
            preference: vm_preference(&truth.value, &ctr, price),
        },
    }
}

/// Strict improvement under the true class's preference. An infeasible VM
/// outcome never counts as an improvement.
fn improves(deviation: &Utility, truthful: &Utility) -> bool {
    match (deviation, truthful) {
        (Utility::Um { utility: d }, Utility::Um { utility: t }) => d > t,
        (Utility::Vm { preference: d }, Utility::Vm { preference: t }) => d.feasible && d > t,
        _ => unreachable!("utilities are evaluated under the same true class"),
    }
}

/// All profitable unilateral misreports found for `mechanism` on `instance`,
/// sorted by bidder, then reported value, then reported class.
///
/// Unless `tied_reports` is set, misreports equal to another bidder's value
/// are skipped so every reported profile keeps distinct values; the points
/// `delta` to either side are still tried.
pub fn check_ic(
    mechanism: MechanismId,
    instance: &AuctionInstance,
    config: &IcConfig,
) -> Result<Vec<DeviationReport>> {
    config.validate()?;
    instance.require_strict()?;
    let truthful = mechanism.run(instance);
    let mut reports = Vec::new();
    for (id, truth) in instance.bidders().iter().enumerate() {
        let truthful_utility = utility_of(truth, &truthful, instance, id);
        let mut values = critical_values(mechanism, instance, id, config)?;
        values.insert(truth.value.clone());
        let classes: &[BidderClass] = if config.class_deviations {
            &BidderClass::ALL
        } else {
            std::slice::from_ref(&truth.class)
        };
        if !config.tied_reports {
            values.retain(|v| {
                !instance
                    .bidders()
                    .iter()
                    .enumerate()
                    .any(|(j, b)| j != id && &b.value == v)
            });
        }
        for value in &values {
            for &class in classes {
                let misreport = BidderType::new(value.clone(), class);
                if &misreport == truth {
                    continue;
                }
                let deviated = mechanism.run(&instance.with_report(id, misreport.clone()));
                let deviation_utility = utility_of(truth, &deviated, instance, id);
                if improves(&deviation_utility, &truthful_utility) {
                    reports.push(DeviationReport {
                        mechanism,
                        bidder: id,
                        true_type: truth.clone(),
                        misreport,
                        truthful: Placement::of(&truthful, id),
                        deviation: Placement::of(&deviated, id),
                        truthful_utility: truthful_utility.clone(),
                        deviation_utility,
                    });
                }
            }
        }
    }
    reports.sort_by(|a, b| {
        a.bidder
            .cmp(&b.bidder)
            .then_with(|| a.misreport.value.cmp(&b.misreport.value))
            .then_with(|| a.misreport.class.cmp(&b.misreport.class))
    });
    Ok(reports)
}
