//! Structural properties of MPR outcomes.
//!
//! - marginal price at a UM: for a UM at slot `k < K`, the marginal payment
//!   increase to `k + 1` equals its value exactly;
//! - same-class order: among bidders of one class, higher value sits higher;
//! - VM below UM: a VM placed below a UM has the lower value;
//! - marginal price dominance: for a UM at `k`, the marginal payment increase
//!   to every higher slot is at least its value.

use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::model::{
    marginal_payment_increase, AuctionInstance, BidderClass, BidderId, Outcome, Slot,
};
use crate::rational::Rational;

/// Which term of the hybrid price produced the price of the slot above a UM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PriceSource {
    UmTerm,
    VmTerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaViolation {
    pub lower: (Slot, BidderId),
    pub upper: (Slot, Option<BidderId>),
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub price_source: Option<PriceSource>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    /// Number of pairs examined.
    pub checked: usize,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub marginal_price_at_um: LemmaCheck,
    pub same_class_order: LemmaCheck,
    pub vm_below_um: LemmaCheck,
    pub marginal_price_dominance: LemmaCheck,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed())
    }

    pub fn checks(&self) -> [(&'static str, &LemmaCheck); 4] {
        [
            ("marginal_price_at_um", &self.marginal_price_at_um),
            ("same_class_order", &self.same_class_order),
            ("vm_below_um", &self.vm_below_um),
            ("marginal_price_dominance", &self.marginal_price_dominance),
        ]
    }
}

/// Checks the four structural properties on an MPR outcome. Requires distinct
/// values and strictly increasing click-through rates.
pub fn check_lemmas(outcome: &Outcome, instance: &AuctionInstance) -> Result<LemmaReport> {
    instance.require_strict()?;
    let ladder = &instance.ladder;
    if let Some(k) = ladder.ctrs().windows(2).position(|w| w[0] == w[1]) {
        return Err(AuctionError::DegeneratePair {
            k: k + 1,
            k_prime: k + 2,
        });
    }
    let k_slots = instance.num_slots();
    let placed: Vec<(Slot, BidderId)> = outcome.allocation().assigned().collect();
    let class = |id: BidderId| instance.bidders()[id].class;
    let value = |id: BidderId| &instance.bidders()[id].value;
    let mut report = LemmaReport::default();

    for &(k, id) in placed
        .iter()
        .filter(|&&(_, id)| class(id) == BidderClass::Um)
    {
        let v = value(id);
        if k < k_slots {
            report.marginal_price_at_um.checked += 1;
            let delta = marginal_payment_increase(outcome, instance, k, k + 1)?;
            if &delta != v {
                report.marginal_price_at_um.violations.push(LemmaViolation {
                    lower: (k, id),
                    upper: (k + 1, outcome.allocation().occupant(k + 1)),
                    detail: format!("marginal price {delta} differs from value {v}"),
                    price_source: Some(price_source_above(outcome, instance, k)),
                });
            }
        }
        for k_prime in k + 1..=k_slots {
            report.marginal_price_dominance.checked += 1;
            let delta = marginal_payment_increase(outcome, instance, k, k_prime)?;
            if &delta < v {
                report
                    .marginal_price_dominance
                    .violations
                    .push(LemmaViolation {
                        lower: (k, id),
                        upper: (k_prime, outcome.allocation().occupant(k_prime)),
                        detail: format!("marginal price {delta} below value {v}"),
                        price_source: None,
                    });
            }
        }
    }

    for (a, &(k_lo, lo)) in placed.iter().enumerate() {
        for &(k_hi, hi) in &placed[a + 1..] {
            if class(lo) == class(hi) {
                report.same_class_order.checked += 1;
                if value(lo) > value(hi) {
                    report.same_class_order.violations.push(LemmaViolation {
                        lower: (k_lo, lo),
                        upper: (k_hi, Some(hi)),
                        detail: format!(
                            "{} with value {} sits below value {}",
                            class(lo),
                            value(lo),
                            value(hi)
                        ),
                        price_source: None,
                    });
                }
            } else if class(lo) == BidderClass::Vm {
                report.vm_below_um.checked += 1;
                if value(lo) >= value(hi) {
                    report.vm_below_um.violations.push(LemmaViolation {
                        lower: (k_lo, lo),
                        upper: (k_hi, Some(hi)),
                        detail: format!("VM value {} not below UM value {}", value(lo), value(hi)),
                        price_source: None,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Diagnoses whether the price of slot `k + 1` equals the value of the closest
/// VM below it, i.e. whether the VM term won.
fn price_source_above(outcome: &Outcome, instance: &AuctionInstance, k: Slot) -> PriceSource {
    let alloc = outcome.allocation();
    let closest_vm: Option<&Rational> = (0..=k)
        .rev()
        .filter_map(|j| alloc.occupant(j))
        .map(|id| &instance.bidders()[id])
        .find(|b| b.class == BidderClass::Vm)
        .map(|b| &b.value);
    match closest_vm {
        Some(v) if *v == outcome.slot_price(k + 1) => PriceSource::VmTerm,
        _ => PriceSource::UmTerm,
    }
}
