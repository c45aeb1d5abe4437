//! The four position-auction mechanisms.
//!
//! Every mechanism is a pure map from [`AuctionInstance`] to [`Outcome`].
//! Internally each run works on a value-ranked participant list padded with
//! zero-value virtual VMs up to `K + 1` entries, so the dummy slot and every
//! price recursion are always defined. Virtual participants never appear in
//! the returned outcome.

mod mpr;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::model::{Allocation, AuctionInstance, BidderClass, BidderId, Outcome};
use crate::rational::Rational;

pub use mpr::{best_slot_for_um, run_mpr, slot_price, PartialState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MechanismId {
    #[serde(rename = "VCG")]
    Vcg,
    #[serde(rename = "GSP")]
    Gsp,
    /// Value ranking; VCG payments for UMs and GSP payments for VMs.
    #[serde(rename = "MPU")]
    Mpu,
    /// VMs fill the bottom, UMs are inserted at their best slot under the
    /// hybrid slot-price ladder.
    #[serde(rename = "MPR")]
    Mpr,
}

impl MechanismId {
    pub const ALL: [MechanismId; 4] = [
        MechanismId::Vcg,
        MechanismId::Gsp,
        MechanismId::Mpu,
        MechanismId::Mpr,
    ];

    pub fn run(self, instance: &AuctionInstance) -> Outcome {
        match self {
            MechanismId::Vcg => run_vcg(instance),
            MechanismId::Gsp => run_gsp(instance),
            MechanismId::Mpu => run_mpu(instance),
            MechanismId::Mpr => run_mpr(instance),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MechanismId::Vcg => "VCG",
            MechanismId::Gsp => "GSP",
            MechanismId::Mpu => "MPU",
            MechanismId::Mpr => "MPR",
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MechanismId {
    type Err = AuctionError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "vcg" => Ok(MechanismId::Vcg),
            "gsp" => Ok(MechanismId::Gsp),
            "mpu" => Ok(MechanismId::Mpu),
            "mpr" => Ok(MechanismId::Mpr),
            other => Err(AuctionError::Parse(format!("unknown mechanism `{other}`"))),
        }
    }
}

/// A bidder as seen by a mechanism run; `id` is `None` for padding.
#[derive(Debug, Clone)]
pub(crate) struct Participant {
    pub id: Option<BidderId>,
    pub value: Rational,
    pub class: BidderClass,
}

/// Participants sorted by value (highest first, ties to the lower id), padded
/// with zero-value virtual VMs to at least `K + 1` entries.
pub(crate) fn ranked_participants(instance: &AuctionInstance) -> Vec<Participant> {
    let mut out: Vec<Participant> = crate::model::value_ranking(instance)
        .into_iter()
        .map(|id| {
            let b = &instance.bidders()[id];
            Participant {
                id: Some(id),
                value: b.value.clone(),
                class: b.class,
            }
        })
        .collect();
    while out.len() < instance.num_slots() + 1 {
        out.push(Participant {
            id: None,
            value: Rational::zero(),
            class: BidderClass::Vm,
        });
    }
    out
}

/// Converts per-slot participant indices (index 0 = dummy) into an outcome.
pub(crate) fn build_outcome(
    instance: &AuctionInstance,
    participants: &[Participant],
    slots: &[usize],
    slot_prices: Vec<Rational>,
) -> Outcome {
    let occupants = slots.iter().map(|&p| participants[p].id).collect();
    let allocation = Allocation::from_slots(occupants, instance.num_bidders())
        .expect("mechanism produced an invalid allocation");
    Outcome::from_slot_prices(allocation, slot_prices).expect("mechanism produced invalid prices")
}

#[derive(Clone, Copy)]
enum RankedPayment {
    Vcg,
    Gsp,
    ByClass,
}

/// Shared driver for the value-ranked mechanisms.
fn run_ranked(instance: &AuctionInstance, rule: RankedPayment) -> Outcome {
    let k_slots = instance.num_slots();
    if k_slots == 0 {
        return Outcome::empty(0, instance.num_bidders());
    }
    let participants = ranked_participants(instance);
    let ladder = &instance.ladder;
    // slot k holds rank K - k
    let slots: Vec<usize> = (0..=k_slots).map(|k| k_slots - k).collect();

    let mut vcg_total = Rational::zero();
    let mut prices = Vec::with_capacity(k_slots);
    for k in 1..=k_slots {
        let below = &participants[slots[k - 1]];
        vcg_total = vcg_total + &below.value * (ladder.ctr(k) - ladder.ctr(k - 1));
        let vcg = &vcg_total / ladder.ctr(k);
        let gsp = below.value.clone();
        let price = match rule {
            RankedPayment::Vcg => vcg,
            RankedPayment::Gsp => gsp,
            RankedPayment::ByClass => match participants[slots[k]].class {
                BidderClass::Um => vcg,
                BidderClass::Vm => gsp,
            },
        };
        prices.push(price);
    }
    build_outcome(instance, &participants, &slots, prices)
}

/// Position-auction VCG: value ranking; slot `k` pays
/// `(1/x_k) * sum_{j<k} v_{pi_j} (x_{j+1} - x_j)`.
pub fn run_vcg(instance: &AuctionInstance) -> Outcome {
    run_ranked(instance, RankedPayment::Vcg)
}

/// GSP: value ranking; slot `k` pays the value of the occupant of slot `k - 1`.
pub fn run_gsp(instance: &AuctionInstance) -> Outcome {
    run_ranked(instance, RankedPayment::Gsp)
}

/// Public-class mechanism: value ranking, VCG price for UMs, GSP price for VMs.
pub fn run_mpu(instance: &AuctionInstance) -> Outcome {
    run_ranked(instance, RankedPayment::ByClass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BidderType, SlotLadder};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn instance(ctrs: &[&str], bidders: Vec<BidderType>) -> AuctionInstance {
        AuctionInstance::new(
            SlotLadder::new(ctrs.iter().map(|s| q(s)).collect()).unwrap(),
            bidders,
        )
        .unwrap()
    }

    fn example1() -> AuctionInstance {
        instance(
            &["0.1", "0.2", "0.3", "0.4"],
            vec![
                BidderType::vm(q("6")),
                BidderType::vm(q("7")),
                BidderType::vm(q("8")),
                BidderType::um(q("9")),
                BidderType::um(q("10")),
            ],
        )
    }

    #[test]
    fn vcg_example1() {
        let out = run_vcg(&example1());
        assert_eq!(
            out.allocation().slots(),
            &[Some(0), Some(1), Some(2), Some(3), Some(4)]
        );
        assert_eq!(out.payment(4), &q("7.5"));
    }

    #[test]
    fn vcg_degenerate_cases() {
        let single = instance(&["1"], vec![BidderType::um(q("5"))]);
        assert_eq!(run_vcg(&single).payment(0), &Rational::zero());

        let two = instance(
            &["0.2"],
            vec![BidderType::um(q("4")), BidderType::um(q("1"))],
        );
        let out = run_vcg(&two);
        assert_eq!(out.allocation().occupant(1), Some(0));
        assert_eq!(out.payment(0), &q("1"));
        assert_eq!(out.payment(1), &Rational::zero());
    }

    #[test]
    fn gsp_example1() {
        let out = run_gsp(&example1());
        let top_down: Vec<_> = [4, 3, 2, 1]
            .iter()
            .map(|&i| out.payment(i).clone())
            .collect();
        assert_eq!(top_down, vec![q("9"), q("8"), q("7"), q("6")]);
        assert_eq!(out.payment(0), &Rational::zero());
    }

    #[test]
    fn gsp_lower_bound_case2() {
        let eps = q("1/100");
        let inst = instance(
            &["0.1", "0.2"],
            vec![
                BidderType::vm(eps.clone()),
                BidderType::vm(q("2") + &eps),
                BidderType::vm(q("4")),
            ],
        );
        let out = run_gsp(&inst);
        assert_eq!(out.payment(2), &(q("2") + &eps));
        assert_eq!(out.payment(1), &eps);
    }

    #[test]
    fn gsp_single_bidder_pays_zero() {
        let single = instance(&["1"], vec![BidderType::vm(q("5"))]);
        assert_eq!(run_gsp(&single).payment(0), &Rational::zero());
    }

    #[test]
    fn mpu_example1() {
        let out = run_mpu(&example1());
        assert_eq!(out.payment(1), &q("6"));
        assert_eq!(out.payment(2), &q("7"));
        assert_eq!(out.payment(3), &q("7"));
        assert_eq!(out.payment(4), &q("7.5"));
        assert_eq!(out.slot_prices(), &[q("6"), q("7"), q("7"), q("7.5")]);
    }

    #[test]
    fn mpu_reduces_to_baselines_on_homogeneous_input() {
        let um = instance(
            &["0.1", "0.25", "0.5"],
            vec![
                BidderType::um(q("3")),
                BidderType::um(q("1")),
                BidderType::um(q("7")),
                BidderType::um(q("2")),
            ],
        );
        assert_eq!(run_mpu(&um), run_vcg(&um));
        let vm = instance(
            &["0.1", "0.25", "0.5"],
            vec![
                BidderType::vm(q("3")),
                BidderType::vm(q("1")),
                BidderType::vm(q("7")),
                BidderType::vm(q("2")),
            ],
        );
        assert_eq!(run_mpu(&vm), run_gsp(&vm));
    }

    #[test]
    fn fewer_bidders_than_slots_pads_bottom() {
        let inst = instance(
            &["0.1", "0.2", "0.3"],
            vec![BidderType::um(q("2")), BidderType::vm(q("5"))],
        );
        let out = run_mpu(&inst);
        assert_eq!(out.allocation().slots(), &[None, None, Some(0), Some(1)]);
        assert_eq!(out.payment(0), &Rational::zero());
        assert_eq!(out.payment(1), &q("2"));
    }

    #[test]
    fn zero_slots_gives_empty_outcome() {
        let inst = instance(&[], vec![BidderType::um(q("2"))]);
        for m in MechanismId::ALL {
            let out = m.run(&inst);
            assert_eq!(out, Outcome::empty(0, 1));
        }
    }

    #[test]
    fn mechanism_id_parses() {
        assert_eq!("MPR".parse::<MechanismId>().unwrap(), MechanismId::Mpr);
        assert_eq!("gsp".parse::<MechanismId>().unwrap(), MechanismId::Gsp);
        assert!("first-price".parse::<MechanismId>().is_err());
    }
}
