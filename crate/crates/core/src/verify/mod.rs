//! Empirical checks of the game-theoretic guarantees.
//!
//! All checks assume pairwise distinct bidder values and reject non-strict
//! instances with [`AuctionError::NotStrict`].

mod ic;
mod lemmas;
mod lower_bound;
pub mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::mechanisms::{run_gsp, run_mpr, run_mpu, run_vcg, MechanismId};
use crate::model::{lsw, optimal_allocation, AuctionInstance, BidderClass, BidderId, Slot};
use crate::rational::Rational;

pub use ic::{check_ic, critical_values, DeltaRule, DeviationReport, IcConfig, Placement, Utility};
pub use lemmas::{check_lemmas, LemmaCheck, LemmaReport, LemmaViolation, PriceSource};
pub use lower_bound::{lower_bound_scenario, LowerBoundCase, LowerBoundReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrViolation {
    pub bidder: BidderId,
    pub slot: Slot,
    pub price: Rational,
    pub value: Rational,
}

/// Bidders charged more per click than their value under truthful reporting.
pub fn check_ir(mechanism: MechanismId, instance: &AuctionInstance) -> Result<Vec<IrViolation>> {
    instance.require_strict()?;
    let outcome = mechanism.run(instance);
    Ok(outcome
        .allocation()
        .assigned()
        .filter_map(|(k, id)| {
            let value = &instance.bidders()[id].value;
            let price = outcome.payment(id);
            (price > value).then(|| IrViolation {
                bidder: id,
                slot: k,
                price: price.clone(),
                value: value.clone(),
            })
        })
        .collect())
}

/// Whether MPR and MPU coincide with the homogeneous baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessCheck {
    /// VCG for all-UM instances, GSP for all-VM instances.
    pub baseline: MechanismId,
    pub mpr_matches: bool,
    pub mpu_matches: bool,
}

impl RobustnessCheck {
    pub fn passed(&self) -> bool {
        self.mpr_matches && self.mpu_matches
    }
}

/// Compares allocation and every payment exactly. Mixed-class instances are
/// rejected.
pub fn check_robustness(instance: &AuctionInstance) -> Result<RobustnessCheck> {
    let baseline = if instance.is_all(BidderClass::Um) {
        run_vcg(instance)
    } else if instance.is_all(BidderClass::Vm) {
        run_gsp(instance)
    } else {
        return Err(AuctionError::InvalidInput(
            "robustness applies only to all-UM or all-VM instances".into(),
        ));
    };
    let baseline_id = if instance.is_all(BidderClass::Um) {
        MechanismId::Vcg
    } else {
        MechanismId::Gsp
    };
    Ok(RobustnessCheck {
        baseline: baseline_id,
        mpr_matches: run_mpr(instance) == baseline,
        mpu_matches: run_mpu(instance) == baseline,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub mechanism: MechanismId,
    pub lsw_mechanism: Rational,
    pub lsw_optimal: Rational,
    /// `lsw_optimal / lsw_mechanism`, 1 when both are zero.
    pub ratio: Rational,
}

pub fn approximation_ratio(
    instance: &AuctionInstance,
    mechanism: MechanismId,
) -> Result<RatioReport> {
    instance.require_strict()?;
    let outcome = mechanism.run(instance);
    let lsw_mechanism = lsw(instance, outcome.allocation())?;
    let lsw_optimal = lsw(instance, &optimal_allocation(instance))?;
    let ratio = if lsw_mechanism.is_zero() {
        if !lsw_optimal.is_zero() {
            return Err(AuctionError::Protocol(format!(
                "{mechanism} produced zero welfare against optimum {lsw_optimal}"
            )));
        }
        Rational::one()
    } else {
        &lsw_optimal / &lsw_mechanism
    };
    Ok(RatioReport {
        mechanism,
        lsw_mechanism,
        lsw_optimal,
        ratio,
    })
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
    fn ir_holds_on_example1() {
        for m in MechanismId::ALL {
            assert!(check_ir(m, &example1()).unwrap().is_empty(), "{m}");
        }
    }

    #[test]
    fn ir_rejects_ties() {
        let tied = example1().with_report(0, BidderType::vm(q("7")));
        assert!(matches!(
            check_ir(MechanismId::Mpr, &tied),
            Err(AuctionError::NotStrict)
        ));
    }

    #[test]
    fn gsp_ir_with_sandwiched_um() {
        let inst = instance(
            &["0.1", "0.2", "0.3"],
            vec![
                BidderType::vm(q("2")),
                BidderType::um(q("5")),
                BidderType::vm(q("9")),
                BidderType::vm(q("1")),
            ],
        );
        assert!(check_ir(MechanismId::Gsp, &inst).unwrap().is_empty());
    }

    #[test]
    fn robustness_rejects_mixed() {
        assert!(matches!(
            check_robustness(&example1()),
            Err(AuctionError::InvalidInput(_))
        ));
    }

    #[test]
    fn robustness_on_homogeneous() {
        let um = instance(
            &["0.2", "0.3"],
            vec![
                BidderType::um(q("1")),
                BidderType::um(q("3")),
                BidderType::um(q("2")),
            ],
        );
        let check = check_robustness(&um).unwrap();
        assert_eq!(check.baseline, MechanismId::Vcg);
        assert!(check.passed());
        let vm = instance(
            &["0.2", "0.3"],
            vec![
                BidderType::vm(q("1")),
                BidderType::vm(q("3")),
                BidderType::vm(q("2")),
            ],
        );
        let check = check_robustness(&vm).unwrap();
        assert_eq!(check.baseline, MechanismId::Gsp);
        assert!(check.passed());
    }

    #[test]
    fn ratio_example1() {
        let r = approximation_ratio(&example1(), MechanismId::Mpr).unwrap();
        assert_eq!(r.lsw_mechanism, q("8.9"));
        assert_eq!(r.lsw_optimal, q("9"));
        assert_eq!(r.ratio, q("90/89"));
        let r = approximation_ratio(&example1(), MechanismId::Mpu).unwrap();
        assert_eq!(r.ratio, Rational::one());
    }

    #[test]
    fn ratio_all_um_is_one() {
        let um = instance(
            &["0.2", "0.3"],
            vec![
                BidderType::um(q("1")),
                BidderType::um(q("3")),
                BidderType::um(q("2")),
            ],
        );
        assert_eq!(
            approximation_ratio(&um, MechanismId::Mpr).unwrap().ratio,
            Rational::one()
        );
    }
}
