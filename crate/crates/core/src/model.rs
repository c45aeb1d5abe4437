//! Auction model: slots, bidders, allocations, outcomes and the preference
//! semantics of utility maximizers (UM) and value maximizers (VM).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::rational::Rational;

pub type BidderId = usize;
pub type Slot = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BidderClass {
    /// Maximizes `ctr * (value - price)`.
    #[serde(rename = "UM")]
    Um,
    /// Maximizes `ctr * value` subject to `price <= value`, then prefers lower payment.
    #[serde(rename = "VM")]
    Vm,
}

impl BidderClass {
    pub const ALL: [BidderClass; 2] = [BidderClass::Um, BidderClass::Vm];

    pub fn label(self) -> &'static str {
        match self {
            BidderClass::Um => "UM",
            BidderClass::Vm => "VM",
        }
    }
}

impl fmt::Display for BidderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BidderClass {
    type Err = AuctionError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "UM" => Ok(BidderClass::Um),
            "VM" => Ok(BidderClass::Vm),
            other => Err(AuctionError::Parse(format!(
                "unknown bidder class `{other}`"
            ))),
        }
    }
}

/// Per-click value and class of a bidder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BidderType {
    pub value: Rational,
    pub class: BidderClass,
}

impl BidderType {
    pub fn new(value: Rational, class: BidderClass) -> Self {
        BidderType { value, class }
    }

    pub fn um(value: Rational) -> Self {
        Self::new(value, BidderClass::Um)
    }

    pub fn vm(value: Rational) -> Self {
        Self::new(value, BidderClass::Vm)
    }
}

impl fmt::Display for BidderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.value, self.class)
    }
}

/// Click-through rates of slots `1..=K`, bottom-up. Slot 0 is the dummy slot
/// with rate 0 and is never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct SlotLadder {
    ctrs: Vec<Rational>,
}

impl SlotLadder {
    pub fn new(ctrs: Vec<Rational>) -> Result<Self> {
        if let Some(first) = ctrs.first() {
            if !first.is_positive() {
                return Err(AuctionError::InvalidInput(format!(
                    "lowest click-through rate must be positive, got {first}"
                )));
            }
        }
        if let Some(k) = ctrs.windows(2).position(|w| w[0] > w[1]) {
            return Err(AuctionError::InvalidInput(format!(
                "click-through rates must be non-decreasing bottom-up: slot {} has {} > slot {} with {}",
                k + 1,
                ctrs[k],
                k + 2,
                ctrs[k + 1]
            )));
        }
        Ok(SlotLadder { ctrs })
    }

    /// Number of real slots `K`.
    pub fn len(&self) -> usize {
        self.ctrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctrs.is_empty()
    }

    /// Rate of slot `k`; 0 for the dummy slot. Panics for `k > K`.
    pub fn ctr(&self, k: Slot) -> Rational {
        if k == 0 {
            Rational::zero()
        } else {
            self.ctrs[k - 1].clone()
        }
    }

    pub fn ctrs(&self) -> &[Rational] {
        &self.ctrs
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.ctrs.windows(2).all(|w| w[0] < w[1])
    }
}

impl TryFrom<Vec<Rational>> for SlotLadder {
    type Error = AuctionError;

    fn try_from(ctrs: Vec<Rational>) -> Result<Self> {
        SlotLadder::new(ctrs)
    }
}

impl From<SlotLadder> for Vec<Rational> {
    fn from(l: SlotLadder) -> Self {
        l.ctrs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr")]
pub struct AuctionInstance {
    pub ladder: SlotLadder,
    bidders: Vec<BidderType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Deserialize)]
struct InstanceRepr {
    ladder: SlotLadder,
    bidders: Vec<BidderType>,
    #[serde(default)]
    seed: Option<u64>,
}

impl TryFrom<InstanceRepr> for AuctionInstance {
    type Error = AuctionError;

    fn try_from(r: InstanceRepr) -> Result<Self> {
        let mut instance = AuctionInstance::new(r.ladder, r.bidders)?;
        instance.seed = r.seed;
        Ok(instance)
    }
}

impl AuctionInstance {
    pub fn new(ladder: SlotLadder, bidders: Vec<BidderType>) -> Result<Self> {
        if bidders.is_empty() {
            return Err(AuctionError::InvalidInput(
                "an instance needs at least one bidder".into(),
            ));
        }
        if let Some((i, b)) = bidders
            .iter()
            .enumerate()
            .find(|(_, b)| !b.value.is_positive())
        {
            return Err(AuctionError::InvalidInput(format!(
                "bidder {i} has non-positive value {}",
                b.value
            )));
        }
        Ok(AuctionInstance {
            ladder,
            bidders,
            seed: None,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn bidders(&self) -> &[BidderType] {
        &self.bidders
    }

    pub fn bidder(&self, id: BidderId) -> Option<&BidderType> {
        self.bidders.get(id)
    }

    pub fn num_bidders(&self) -> usize {
        self.bidders.len()
    }

    pub fn num_slots(&self) -> usize {
        self.ladder.len()
    }

    /// True when all bidder values are pairwise distinct.
    pub fn strict(&self) -> bool {
        let mut values: Vec<&Rational> = self.bidders.iter().map(|b| &b.value).collect();
        values.sort();
        values.windows(2).all(|w| w[0] != w[1])
    }

    pub fn require_strict(&self) -> Result<()> {
        if self.strict() {
            Ok(())
        } else {
            Err(AuctionError::NotStrict)
        }
    }

    /// Same instance with bidder `id` reporting `report` instead of its type.
    pub fn with_report(&self, id: BidderId, report: BidderType) -> AuctionInstance {
        let mut out = self.clone();
        out.bidders[id] = report;
        out
    }

    pub fn is_all(&self, class: BidderClass) -> bool {
        self.bidders.iter().all(|b| b.class == class)
    }
}

/// Slot assignment. Index 0 of `slots` is the dummy slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AllocationRepr", into = "AllocationRepr")]
pub struct Allocation {
    slots: Vec<Option<BidderId>>,
    slot_of: Vec<Option<Slot>>,
}

#[derive(Serialize, Deserialize)]
struct AllocationRepr {
    bidders: usize,
    dummy: Option<BidderId>,
    /// Occupants of slots `1..=K`, bottom-up.
    slots: Vec<Option<BidderId>>,
}

impl Allocation {
    /// `slots[k]` is the occupant of slot `k`, with `slots[0]` the dummy slot.
    pub fn from_slots(slots: Vec<Option<BidderId>>, num_bidders: usize) -> Result<Self> {
        if slots.is_empty() {
            return Err(AuctionError::InvalidInput(
                "allocation needs the dummy slot entry".into(),
            ));
        }
        let mut slot_of = vec![None; num_bidders];
        for (k, occupant) in slots.iter().enumerate() {
            let Some(id) = *occupant else { continue };
            if id >= num_bidders {
                return Err(AuctionError::InvalidInput(format!(
                    "slot {k} references unknown bidder {id}"
                )));
            }
            if let Some(prev) = slot_of[id] {
                return Err(AuctionError::InvalidInput(format!(
                    "bidder {id} assigned to both slot {prev} and slot {k}"
                )));
            }
            slot_of[id] = Some(k);
        }
        Ok(Allocation { slots, slot_of })
    }

    pub fn empty(num_slots: usize, num_bidders: usize) -> Self {
        Allocation {
            slots: vec![None; num_slots + 1],
            slot_of: vec![None; num_bidders],
        }
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len() - 1
    }

    pub fn num_bidders(&self) -> usize {
        self.slot_of.len()
    }

    pub fn occupant(&self, k: Slot) -> Option<BidderId> {
        self.slots.get(k).copied().flatten()
    }

    pub fn dummy(&self) -> Option<BidderId> {
        self.slots[0]
    }

    /// Slot of bidder `id`, including the dummy slot 0.
    pub fn slot_of(&self, id: BidderId) -> Option<Slot> {
        self.slot_of.get(id).copied().flatten()
    }

    /// Slot of bidder `id` if it is a real slot (`k >= 1`).
    pub fn assigned_slot(&self, id: BidderId) -> Option<Slot> {
        self.slot_of(id).filter(|&k| k >= 1)
    }

    /// `(slot, bidder)` pairs for occupied real slots, bottom-up.
    pub fn assigned(&self) -> impl Iterator<Item = (Slot, BidderId)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(k, o)| o.map(|id| (k, id)))
    }

    pub fn slots(&self) -> &[Option<BidderId>] {
        &self.slots
    }
}

impl TryFrom<AllocationRepr> for Allocation {
    type Error = AuctionError;

    fn try_from(r: AllocationRepr) -> Result<Self> {
        let mut slots = Vec::with_capacity(r.slots.len() + 1);
        slots.push(r.dummy);
        slots.extend(r.slots);
        Allocation::from_slots(slots, r.bidders)
    }
}

impl From<Allocation> for AllocationRepr {
    fn from(a: Allocation) -> Self {
        AllocationRepr {
            bidders: a.slot_of.len(),
            dummy: a.slots[0],
            slots: a.slots[1..].to_vec(),
        }
    }
}

/// Allocation plus per-click prices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    allocation: Allocation,
    /// `slot_prices[k - 1]` is the per-click price of slot `k`.
    slot_prices: Vec<Rational>,
    /// Per-click payment of each bidder; 0 when unassigned.
    payments: Vec<Rational>,
}

impl Outcome {
    /// Builds an outcome whose payments follow from the slot prices.
    pub fn from_slot_prices(allocation: Allocation, slot_prices: Vec<Rational>) -> Result<Self> {
        if slot_prices.len() != allocation.num_slots() {
            return Err(AuctionError::InvalidInput(format!(
                "{} slot prices for {} slots",
                slot_prices.len(),
                allocation.num_slots()
            )));
        }
        if let Some(p) = slot_prices.iter().find(|p| p.is_negative()) {
            return Err(AuctionError::InvalidInput(format!(
                "negative slot price {p}"
            )));
        }
        let mut payments = vec![Rational::zero(); allocation.num_bidders()];
        for (k, id) in allocation.assigned() {
            payments[id] = slot_prices[k - 1].clone();
        }
        Ok(Outcome {
            allocation,
            slot_prices,
            payments,
        })
    }

    pub fn empty(num_slots: usize, num_bidders: usize) -> Self {
        Outcome {
            allocation: Allocation::empty(num_slots, num_bidders),
            slot_prices: vec![Rational::zero(); num_slots],
            payments: vec![Rational::zero(); num_bidders],
        }
    }

    pub fn allocation(&self) -> &Allocation {
        &self.allocation
    }

    /// Price of slot `k`; 0 for the dummy slot.
    pub fn slot_price(&self, k: Slot) -> Rational {
        if k == 0 {
            Rational::zero()
        } else {
            self.slot_prices[k - 1].clone()
        }
    }

    pub fn slot_prices(&self) -> &[Rational] {
        &self.slot_prices
    }

    pub fn payment(&self, id: BidderId) -> &Rational {
        &self.payments[id]
    }

    pub fn payments(&self) -> &[Rational] {
        &self.payments
    }

    /// Click-through rate received by bidder `id` (0 when unassigned).
    pub fn ctr_of(&self, ladder: &SlotLadder, id: BidderId) -> Rational {
        self.allocation
            .assigned_slot(id)
            .map(|k| ladder.ctr(k))
            .unwrap_or_else(Rational::zero)
    }
}

/// Lexicographic objective of a value maximizer over outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VmPreference {
    pub feasible: bool,
    pub obtained_value: Rational,
    pub total_payment: Rational,
}

impl Ord for VmPreference {
    /// Greater is better: feasible first, then more value, then less payment.
    fn cmp(&self, other: &Self) -> Ordering {
        self.feasible
            .cmp(&other.feasible)
            .then_with(|| self.obtained_value.cmp(&other.obtained_value))
            .then_with(|| other.total_payment.cmp(&self.total_payment))
    }
}

impl PartialOrd for VmPreference {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Liquid social welfare `sum_k v_{pi_k} x_k` over real slots.
pub fn lsw(instance: &AuctionInstance, allocation: &Allocation) -> Result<Rational> {
    if allocation.num_slots() != instance.num_slots() {
        return Err(AuctionError::InvalidInput(format!(
            "allocation has {} slots, instance has {}",
            allocation.num_slots(),
            instance.num_slots()
        )));
    }
    allocation
        .assigned()
        .map(|(k, id)| {
            let bidder = instance.bidder(id).ok_or_else(|| {
                AuctionError::InvalidInput(format!("allocation references unknown bidder {id}"))
            })?;
            Ok(&bidder.value * instance.ladder.ctr(k))
        })
        .sum()
}

/// Bidder ids ordered by value, highest first; ties go to the lower id.
pub fn value_ranking(instance: &AuctionInstance) -> Vec<BidderId> {
    let mut ids: Vec<BidderId> = (0..instance.num_bidders()).collect();
    ids.sort_by(|&a, &b| {
        instance.bidders()[b]
            .value
            .cmp(&instance.bidders()[a].value)
            .then(a.cmp(&b))
    });
    ids
}

/// Welfare-maximizing allocation: the top `K` bidders by value fill the slots
/// from the top down and the next bidder takes the dummy slot.
pub fn optimal_allocation(instance: &AuctionInstance) -> Allocation {
    let k_slots = instance.num_slots();
    let ranking = value_ranking(instance);
    let mut slots = vec![None; k_slots + 1];
    for (rank, &id) in ranking.iter().enumerate().take(k_slots + 1) {
        // rank 0 goes to slot K, rank K to the dummy slot
        slots[k_slots - rank] = Some(id);
    }
    Allocation::from_slots(slots, instance.num_bidders()).expect("ranking is a permutation")
}

/// Utility of a utility maximizer: `ctr * (value - price)`.
pub fn um_utility(value: &Rational, ctr: &Rational, price: &Rational) -> Rational {
    ctr * (value - price)
}

pub fn vm_preference(true_value: &Rational, ctr: &Rational, price: &Rational) -> VmPreference {
    VmPreference {
        feasible: price <= true_value,
        obtained_value: true_value * ctr,
        total_payment: price * ctr,
    }
}

/// Marginal payment increase between slots `k < k_prime`:
/// `(p_{k'} x_{k'} - p_k x_k) / (x_{k'} - x_k)`. `k = 0` denotes the dummy slot.
pub fn marginal_payment_increase(
    outcome: &Outcome,
    instance: &AuctionInstance,
    k: Slot,
    k_prime: Slot,
) -> Result<Rational> {
    let k_slots = instance.num_slots();
    if k >= k_prime || k_prime > k_slots || outcome.slot_prices().len() != k_slots {
        return Err(AuctionError::InvalidInput(format!(
            "slot pair ({k}, {k_prime}) out of range for {k_slots} slots"
        )));
    }
    let x_lo = instance.ladder.ctr(k);
    let x_hi = instance.ladder.ctr(k_prime);
    if x_lo == x_hi {
        return Err(AuctionError::DegeneratePair { k, k_prime });
    }
    let paid_hi = outcome.slot_price(k_prime) * &x_hi;
    let paid_lo = outcome.slot_price(k) * &x_lo;
    Ok((paid_hi - paid_lo) / (x_hi - x_lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ladder(ctrs: &[&str]) -> SlotLadder {
        SlotLadder::new(ctrs.iter().map(|s| q(s)).collect()).unwrap()
    }

    fn example1() -> AuctionInstance {
        AuctionInstance::new(
            ladder(&["0.1", "0.2", "0.3", "0.4"]),
            vec![
                BidderType::vm(q("6")),
                BidderType::vm(q("7")),
                BidderType::vm(q("8")),
                BidderType::um(q("9")),
                BidderType::um(q("10")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ladder_rejects_non_monotone_and_non_positive() {
        assert!(SlotLadder::new(vec![q("0.2"), q("0.1")]).is_err());
        assert!(SlotLadder::new(vec![q("0"), q("0.1")]).is_err());
        assert!(SlotLadder::new(vec![q("0.1"), q("0.1")]).is_ok());
        assert_eq!(ladder(&["0.1"]).ctr(0), Rational::zero());
    }

    #[test]
    fn instance_rejects_non_positive_values() {
        let err = AuctionInstance::new(ladder(&["1"]), vec![BidderType::um(q("0"))]);
        assert!(err.is_err());
        assert!(AuctionInstance::new(ladder(&["1"]), vec![]).is_err());
    }

    #[test]
    fn strict_flag_tracks_ties() {
        assert!(example1().strict());
        let tied = example1().with_report(0, BidderType::vm(q("7")));
        assert!(!tied.strict());
    }

    #[test]
    fn allocation_rejects_duplicates_and_unknown_ids() {
        assert!(Allocation::from_slots(vec![None, Some(0), Some(0)], 2).is_err());
        assert!(Allocation::from_slots(vec![None, Some(5)], 2).is_err());
        let a = Allocation::from_slots(vec![Some(1), Some(0)], 2).unwrap();
        assert_eq!(a.slot_of(1), Some(0));
        assert_eq!(a.assigned_slot(1), None);
        assert_eq!(a.assigned_slot(0), Some(1));
    }

    #[test]
    fn lsw_of_example1_final_allocation() {
        let inst = example1();
        // B@1, D@2, C@3, E@4, A on the dummy slot
        let a =
            Allocation::from_slots(vec![Some(0), Some(1), Some(3), Some(2), Some(4)], 5).unwrap();
        assert_eq!(lsw(&inst, &a).unwrap(), q("8.9"));
        assert_eq!(
            lsw(&inst, &Allocation::empty(4, 5)).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn lsw_single_slot_identity() {
        let inst = AuctionInstance::new(ladder(&["1"]), vec![BidderType::um(q("5"))]).unwrap();
        let a = Allocation::from_slots(vec![None, Some(0)], 1).unwrap();
        assert_eq!(lsw(&inst, &a).unwrap(), q("5"));
    }

    #[test]
    fn lsw_rejects_foreign_allocation() {
        let inst = AuctionInstance::new(ladder(&["1"]), vec![BidderType::um(q("5"))]).unwrap();
        let a = Allocation::from_slots(vec![None, Some(3)], 4).unwrap();
        assert!(matches!(lsw(&inst, &a), Err(AuctionError::InvalidInput(_))));
    }

    #[test]
    fn optimal_allocation_example1() {
        let inst = example1();
        let a = optimal_allocation(&inst);
        assert_eq!(a.slots(), &[Some(0), Some(1), Some(2), Some(3), Some(4)]);
        assert_eq!(lsw(&inst, &a).unwrap(), q("9"));
    }

    #[test]
    fn optimal_allocation_single() {
        let inst = AuctionInstance::new(ladder(&["1"]), vec![BidderType::um(q("3"))]).unwrap();
        assert_eq!(optimal_allocation(&inst).slots(), &[None, Some(0)]);
    }

    #[test]
    fn optimal_allocation_lower_bound_case1() {
        let eps = q("1/100");
        let inst = AuctionInstance::new(
            ladder(&["0.1", "0.2"]),
            vec![
                BidderType::vm(eps.clone()),
                BidderType::vm(q("2") + &eps),
                BidderType::um(q("4")),
            ],
        )
        .unwrap();
        let a = optimal_allocation(&inst);
        assert_eq!(a.slots(), &[Some(0), Some(1), Some(2)]);
        let expected = q("0.2") * q("4") + q("0.1") * (q("2") + &eps);
        assert_eq!(lsw(&inst, &a).unwrap(), expected);
    }

    #[test]
    fn um_utility_examples() {
        assert_eq!(um_utility(&q("9"), &q("0.2"), &q("7")), q("0.4"));
        assert_eq!(um_utility(&q("10"), &q("0.3"), &q("23/3")), q("0.7"));
        assert_eq!(um_utility(&q("10"), &q("0"), &q("3")), Rational::zero());
    }

    #[test]
    fn vm_preference_examples() {
        let p = vm_preference(&q("8"), &q("0.3"), &q("23/3"));
        assert_eq!(
            p,
            VmPreference {
                feasible: true,
                obtained_value: q("2.4"),
                total_payment: q("2.3")
            }
        );

        let eps = q("1/100");
        let p = vm_preference(&q("1"), &q("0.2"), &(q("2") + &eps));
        assert!(!p.feasible);
        assert_eq!(p.obtained_value, q("0.2"));
        assert_eq!(p.total_payment, q("0.4") + q("0.2") * &eps);

        let p = vm_preference(&q("5"), &q("0"), &q("0"));
        assert_eq!(
            p,
            VmPreference {
                feasible: true,
                obtained_value: q("0"),
                total_payment: q("0")
            }
        );
    }

    #[test]
    fn vm_preference_order() {
        let pref = |f, v: &str, p: &str| VmPreference {
            feasible: f,
            obtained_value: q(v),
            total_payment: q(p),
        };
        assert!(pref(true, "0", "0") > pref(false, "9", "0"));
        assert!(pref(true, "2", "5") > pref(true, "1", "0"));
        assert!(pref(true, "2", "1") > pref(true, "2", "1.5"));
    }

    #[test]
    fn marginal_payment_increase_examples() {
        let inst = example1();
        let a =
            Allocation::from_slots(vec![Some(0), Some(1), Some(3), Some(2), Some(4)], 5).unwrap();
        let out = Outcome::from_slot_prices(a, vec![q("6"), q("7"), q("23/3"), q("8")]).unwrap();
        assert_eq!(
            marginal_payment_increase(&out, &inst, 2, 3).unwrap(),
            q("9")
        );
        assert_eq!(
            marginal_payment_increase(&out, &inst, 2, 4).unwrap(),
            q("9")
        );

        let zero = Outcome::from_slot_prices(
            Allocation::from_slots(vec![None, Some(0), Some(1), None, None], 5).unwrap(),
            vec![q("0"); 4],
        )
        .unwrap();
        assert_eq!(
            marginal_payment_increase(&zero, &inst, 1, 2).unwrap(),
            q("0")
        );
    }

    #[test]
    fn marginal_payment_increase_degenerate_pair() {
        let inst = AuctionInstance::new(
            ladder(&["0.2", "0.2"]),
            vec![BidderType::um(q("1")), BidderType::um(q("2"))],
        )
        .unwrap();
        let out = Outcome::empty(2, 2);
        assert!(matches!(
            marginal_payment_increase(&out, &inst, 1, 2),
            Err(AuctionError::DegeneratePair { k: 1, k_prime: 2 })
        ));
        assert!(marginal_payment_increase(&out, &inst, 2, 1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (0i64..50, 1i64..6).prop_map(|(n, d)| Rational::new(n, d))
        }

        fn pref() -> impl Strategy<Value = VmPreference> {
            (any::<bool>(), small_rational(), small_rational()).prop_map(|(feasible, v, p)| {
                VmPreference {
                    feasible,
                    obtained_value: v,
                    total_payment: p,
                }
            })
        }

        proptest! {
            #[test]
            fn vm_order_is_total_and_transitive(a in pref(), b in pref(), c in pref()) {
                prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
                prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
                if a >= b && b >= c {
                    prop_assert!(a >= c);
                }
            }

            #[test]
            fn um_utility_monotone(v in small_rational(), dv in 1i64..20, p in small_rational(), dp in 1i64..20, ctr in 1i64..10) {
                let ctr = Rational::new(ctr, 10);
                let base = um_utility(&v, &ctr, &p);
                prop_assert!(um_utility(&(&v + Rational::new(dv, 3)), &ctr, &p) > base);
                prop_assert!(um_utility(&v, &ctr, &(&p + Rational::new(dp, 3))) < base);
            }
        }
    }
}
