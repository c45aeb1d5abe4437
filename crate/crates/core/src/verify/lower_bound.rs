//! Two-slot scenario showing that no truthful, robust mechanism can beat a
//! welfare ratio of 5/4.
//!
//! Slots have rates 0.1 and 0.2. Bidders A = (eps, VM) and B = (2 + eps, VM)
//! are fixed; C takes four types: (4, UM), (4, VM), (1, UM), (1, VM). Any
//! mechanism below ratio 5/4 must seat C on top in the first two cases (price
//! `p_h`) and at the bottom in the last two (price `p_l`), and truthfulness of
//! C in case 1 requires `2 p_h - p_l <= 4`. Robustness pins the all-VM cases
//! to GSP prices, which give `2 p_h - p_l = 4 + eps`.

use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::mechanisms::{run_gsp, run_mpr, MechanismId};
use crate::model::{Allocation, AuctionInstance, BidderType, Slot, SlotLadder};
use crate::rational::Rational;

use super::{approximation_ratio, RatioReport};

const BIDDER_C: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundCase {
    /// 1-based case number.
    pub case: u8,
    pub bidder_c: BidderType,
    pub instance: AuctionInstance,
    pub mpr_allocation: Allocation,
    pub mpr_slot_c: Option<Slot>,
    pub mpr_payment_c: Rational,
    /// GSP price of C, recorded for the all-VM cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gsp_payment_c: Option<Rational>,
    /// Whether MPR's outcome equals GSP's, recorded for the all-VM cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mpr_matches_gsp: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub epsilon: Rational,
    pub cases: Vec<LowerBoundCase>,
    /// GSP price of C on top (case 2).
    pub high_price: Rational,
    /// GSP price of C at the bottom (case 4).
    pub low_price: Rational,
    /// `2 * high_price - low_price`; truthfulness would need this `<= 4`.
    pub constraint_lhs: Rational,
    pub constraint_violated: bool,
    /// MPR welfare ratio on case 1.
    pub ratio_case1: RatioReport,
}

/// The four-case scenario for `0 < epsilon < 1/10`.
pub fn lower_bound_scenario(epsilon: &Rational) -> Result<LowerBoundReport> {
    if !epsilon.is_positive() || *epsilon >= Rational::new(1, 10) {
        return Err(AuctionError::InvalidConfig(format!(
            "epsilon must lie in (0, 1/10), got {epsilon}"
        )));
    }
    let ladder = SlotLadder::new(vec![Rational::new(1, 10), Rational::new(2, 10)])?;
    let four = Rational::from_integer(4);
    let one = Rational::one();
    let c_types = [
        BidderType::um(four.clone()),
        BidderType::vm(four.clone()),
        BidderType::um(one.clone()),
        BidderType::vm(one),
    ];

    let mut cases = Vec::with_capacity(4);
    for (idx, c) in c_types.into_iter().enumerate() {
        let instance = AuctionInstance::new(
            ladder.clone(),
            vec![
                BidderType::vm(epsilon.clone()),
                BidderType::vm(epsilon + Rational::from_integer(2)),
                c.clone(),
            ],
        )?;
        let mpr = run_mpr(&instance);
        let all_vm = idx % 2 == 1;
        let (gsp_payment_c, mpr_matches_gsp) = if all_vm {
            let gsp = run_gsp(&instance);
            (Some(gsp.payment(BIDDER_C).clone()), Some(gsp == mpr))
        } else {
            (None, None)
        };
        cases.push(LowerBoundCase {
            case: idx as u8 + 1,
            bidder_c: c,
            mpr_allocation: mpr.allocation().clone(),
            mpr_slot_c: mpr.allocation().assigned_slot(BIDDER_C),
            mpr_payment_c: mpr.payment(BIDDER_C).clone(),
            gsp_payment_c,
            mpr_matches_gsp,
            instance,
        });
    }

    let high_price = cases[1].gsp_payment_c.clone().expect("case 2 is all-VM");
    let low_price = cases[3].gsp_payment_c.clone().expect("case 4 is all-VM");
    let constraint_lhs = Rational::from_integer(2) * &high_price - &low_price;
    let constraint_violated = constraint_lhs > four;
    let ratio_case1 = approximation_ratio(&cases[0].instance, MechanismId::Mpr)?;
    Ok(LowerBoundReport {
        epsilon: epsilon.clone(),
        cases,
        high_price,
        low_price,
        constraint_lhs,
        constraint_violated,
        ratio_case1,
    })
}
