//! Private-class mechanism (MPR).
//!
//! The price of slot `k` depends only on the bidders below it:
//!
//! ```text
//! p(k) = max{ p_U(k), v_V }
//! p_U(k) = (p(k_U) x_{k_U} + v_U (x_k - x_{k_U})) / x_k
//! ```
//!
//! where `v_U` at `k_U` is the closest UM below `k` and `v_V` the closest VM
//! below `k`; a missing term is 0. VMs are placed first, in ascending value
//! order, at the bottom of the ladder. UMs are then inserted one at a time,
//! lowest value first, at the slot maximizing `x_k (v - p(k))` (lowest slot on
//! ties), pushing the occupants at and above that slot up by one.

use crate::error::{AuctionError, Result};
use crate::model::{AuctionInstance, BidderClass, BidderId, Outcome, Slot, SlotLadder};
use crate::rational::Rational;

use super::{build_outcome, ranked_participants, Participant};

/// Intermediate state of an MPR run.
///
/// Slots `0..=m` are occupied and prices are defined for `1..=min(m + 1, K)`.
#[derive(Debug, Clone)]
pub struct PartialState<'a> {
    instance: &'a AuctionInstance,
    participants: Vec<Participant>,
    /// participant index per slot, index 0 = dummy
    slots: Vec<Option<usize>>,
    /// `prices[k]` for slot `k`; index 0 unused
    prices: Vec<Option<Rational>>,
    /// unplaced UMs, highest value first so `pop` yields the lowest
    remaining_ums: Vec<usize>,
}

impl<'a> PartialState<'a> {
    /// Places the dummy-slot bidder and all top-`K` VMs, and prices the slots
    /// up to one above the highest VM.
    pub fn new(instance: &'a AuctionInstance) -> Self {
        let k_slots = instance.num_slots();
        let participants = ranked_participants(instance);
        let mut slots = vec![None; k_slots + 1];
        slots[0] = Some(k_slots);
        let top = 0..k_slots;
        let (vms, ums): (Vec<usize>, Vec<usize>) =
            top.partition(|&p| participants[p].class == BidderClass::Vm);
        // ranks are descending in value, so the reversed VM list is ascending
        for (k, &p) in vms.iter().rev().enumerate() {
            slots[k + 1] = Some(p);
        }
        let mut state = PartialState {
            instance,
            participants,
            slots,
            prices: vec![None; k_slots + 1],
            remaining_ums: ums,
        };
        state.reprice(1, vms.len() + 1);
        state
    }

    /// Number of occupied real slots.
    pub fn filled(&self) -> usize {
        self.slots
            .iter()
            .skip(1)
            .take_while(|s| s.is_some())
            .count()
    }

    pub fn price(&self, k: Slot) -> Option<&Rational> {
        self.prices.get(k).and_then(|p| p.as_ref())
    }

    /// Bidder at slot `k`; `None` for empty slots and virtual padding.
    pub fn occupant(&self, k: Slot) -> Option<BidderId> {
        self.slots
            .get(k)
            .copied()
            .flatten()
            .and_then(|p| self.participants[p].id)
    }

    pub fn is_occupied(&self, k: Slot) -> bool {
        matches!(self.slots.get(k), Some(Some(_)))
    }

    /// Remaining UMs, lowest value first.
    pub fn remaining_ums(&self) -> Vec<Option<BidderId>> {
        self.remaining_ums
            .iter()
            .rev()
            .map(|&p| self.participants[p].id)
            .collect()
    }

    pub fn is_done(&self) -> bool {
        self.remaining_ums.is_empty()
    }

    /// Inserts the lowest-value remaining UM at its best slot and returns that
    /// slot, or `None` when no UM remains.
    pub fn insert_next_um(&mut self) -> Option<Slot> {
        let p = self.remaining_ums.pop()?;
        let k_slots = self.instance.num_slots();
        let k_bar = k_slots - self.remaining_ums.len();
        let prices: Vec<Rational> = (1..=k_bar)
            .map(|k| self.prices[k].clone().expect("candidate slot is priced"))
            .collect();
        let chosen = best_slot_for_um(
            &self.participants[p].value,
            &self.instance.ladder,
            &prices,
            k_bar,
        );
        for k in (chosen + 1..=k_bar).rev() {
            self.slots[k] = self.slots[k - 1];
        }
        self.slots[chosen] = Some(p);
        self.reprice(chosen + 1, k_bar + 1);
        Some(chosen)
    }

    /// Recomputes prices for slots `from..=to`, clipped to the ladder, bottom-up.
    fn reprice(&mut self, from: Slot, to: Slot) {
        let to = to.min(self.instance.num_slots());
        for k in from..=to {
            let p = slot_price(self, k).expect("slots below are assigned and priced");
            self.prices[k] = Some(p);
        }
    }

    pub fn into_outcome(self) -> Result<Outcome> {
        if !self.is_done() {
            return Err(AuctionError::Protocol("UMs remain unplaced".into()));
        }
        let slots: Vec<usize> = self
            .slots
            .iter()
            .map(|s| s.ok_or_else(|| AuctionError::Protocol("slot left empty".into())))
            .collect::<Result<_>>()?;
        let prices: Vec<Rational> = self.prices[1..]
            .iter()
            .map(|p| {
                p.clone()
                    .ok_or_else(|| AuctionError::Protocol("slot left unpriced".into()))
            })
            .collect::<Result<_>>()?;
        Ok(build_outcome(
            self.instance,
            &self.participants,
            &slots,
            prices,
        ))
    }
}

/// Hybrid price of slot `k` from the bidders currently below it.
///
/// Fails with a protocol error if a slot below `k` is unassigned or the slot
/// of the closest lower UM is not priced yet.
pub fn slot_price(state: &PartialState<'_>, k: Slot) -> Result<Rational> {
    let ladder: &SlotLadder = &state.instance.ladder;
    if k == 0 || k > ladder.len() {
        return Err(AuctionError::Protocol(format!("slot {k} has no price")));
    }
    let mut closest_um: Option<(Slot, &Participant)> = None;
    let mut closest_vm: Option<&Participant> = None;
    for j in (0..k).rev() {
        let p = state.slots[j].ok_or_else(|| {
            AuctionError::Protocol(format!("slot {j} below slot {k} is unassigned"))
        })?;
        let participant = &state.participants[p];
        match participant.class {
            BidderClass::Um if closest_um.is_none() => closest_um = Some((j, participant)),
            BidderClass::Vm if closest_vm.is_none() => closest_vm = Some(participant),
            _ => {}
        }
        if closest_um.is_some() && closest_vm.is_some() {
            break;
        }
    }

    let x_k = ladder.ctr(k);
    let um_term = match closest_um {
        None => Rational::zero(),
        Some((k_u, um)) => {
            let base = if k_u == 0 {
                Rational::zero()
            } else {
                let p_u = state.prices[k_u].as_ref().ok_or_else(|| {
                    AuctionError::Protocol(format!("slot {k_u} is not priced yet"))
                })?;
                p_u * ladder.ctr(k_u)
            };
            (base + &um.value * (&x_k - ladder.ctr(k_u))) / &x_k
        }
    };
    let vm_term = closest_vm
        .map(|vm| vm.value.clone())
        .unwrap_or_else(Rational::zero);
    Ok(um_term.max(vm_term))
}

/// Lowest slot in `1..=k_bar` maximizing `x_k (value - p(k))`.
/// `prices[k - 1]` is the price of slot `k`.
pub fn best_slot_for_um(
    value: &Rational,
    ladder: &SlotLadder,
    prices: &[Rational],
    k_bar: Slot,
) -> Slot {
    assert!(
        k_bar >= 1 && prices.len() >= k_bar,
        "prices must cover slots 1..=k_bar"
    );
    let mut best = 1;
    let mut best_utility = ladder.ctr(1) * (value - &prices[0]);
    for k in 2..=k_bar {
        let u = ladder.ctr(k) * (value - &prices[k - 1]);
        if u > best_utility {
            best = k;
            best_utility = u;
        }
    }
    best
}

pub fn run_mpr(instance: &AuctionInstance) -> Outcome {
    if instance.num_slots() == 0 {
        return Outcome::empty(0, instance.num_bidders());
    }
    let mut state = PartialState::new(instance);
    while state.insert_next_um().is_some() {}
    state
        .into_outcome()
        .expect("all slots are filled and priced")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanisms::{run_gsp, run_vcg};
    use crate::model::{BidderType, SlotLadder};

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
    fn example1_trace() {
        let inst = example1();
        let mut state = PartialState::new(&inst);
        assert_eq!(state.occupant(0), Some(0));
        assert_eq!(state.occupant(1), Some(1));
        assert_eq!(state.occupant(2), Some(2));
        assert_eq!(state.filled(), 2);
        assert_eq!(state.price(1), Some(&q("6")));
        assert_eq!(state.price(2), Some(&q("7")));
        assert_eq!(state.price(3), Some(&q("8")));
        assert_eq!(state.price(4), None);
        assert_eq!(state.remaining_ums(), vec![Some(3), Some(4)]);

        assert_eq!(state.insert_next_um(), Some(2));
        assert_eq!(state.occupant(3), Some(2));
        assert_eq!(state.price(3), Some(&q("23/3")));
        assert_eq!(state.price(4), Some(&q("8")));
        assert_eq!(slot_price(&state, 3).unwrap(), q("23/3"));

        assert_eq!(state.insert_next_um(), Some(4));
        assert_eq!(state.insert_next_um(), None);

        let out = state.into_outcome().unwrap();
        assert_eq!(
            out.allocation().slots(),
            &[Some(0), Some(1), Some(3), Some(2), Some(4)]
        );
        assert_eq!(out.slot_prices(), &[q("6"), q("7"), q("23/3"), q("8")]);
        assert_eq!(out.payments(), &[q("0"), q("6"), q("23/3"), q("7"), q("8")]);
    }

    #[test]
    fn slot_price_with_nothing_below_is_zero() {
        let inst = AuctionInstance::new(ladder(&["0.5"]), vec![BidderType::um(q("3"))]).unwrap();
        let state = PartialState::new(&inst);
        // the dummy slot holds a zero-value virtual VM
        assert_eq!(slot_price(&state, 1).unwrap(), Rational::zero());
    }

    #[test]
    fn slot_price_protocol_errors() {
        let inst = example1();
        let state = PartialState::new(&inst);
        assert!(matches!(
            slot_price(&state, 4),
            Err(AuctionError::Protocol(_))
        ));
        assert!(matches!(
            slot_price(&state, 0),
            Err(AuctionError::Protocol(_))
        ));
        assert!(matches!(
            slot_price(&state, 5),
            Err(AuctionError::Protocol(_))
        ));
    }

    #[test]
    fn um_on_dummy_slot_prices_like_vm() {
        // third-ranked bidder is a UM and lands on the dummy slot
        let inst = AuctionInstance::new(
            ladder(&["0.1", "0.3"]),
            vec![
                BidderType::vm(q("5")),
                BidderType::vm(q("4")),
                BidderType::um(q("3")),
            ],
        )
        .unwrap();
        let out = run_mpr(&inst);
        assert_eq!(out.allocation().dummy(), Some(2));
        assert_eq!(out.slot_price(1), q("3"));
    }

    #[test]
    fn best_slot_examples() {
        let l = ladder(&["0.1", "0.2", "0.3", "0.4"]);
        assert_eq!(
            best_slot_for_um(&q("9"), &l, &[q("6"), q("7"), q("8")], 3),
            2
        );
        assert_eq!(
            best_slot_for_um(&q("10"), &l, &[q("6"), q("7"), q("23/3"), q("8")], 4),
            4
        );
        assert_eq!(
            best_slot_for_um(&q("5"), &l, &[q("5"), q("5"), q("5")], 3),
            1
        );
    }

    #[test]
    fn lower_bound_case3_trace() {
        let eps = q("1/100");
        let inst = AuctionInstance::new(
            ladder(&["0.1", "0.2"]),
            vec![
                BidderType::vm(eps.clone()),
                BidderType::vm(q("2") + &eps),
                BidderType::um(q("1")),
            ],
        )
        .unwrap();
        let state = PartialState::new(&inst);
        assert_eq!(state.occupant(1), Some(1));
        assert_eq!(state.price(1), Some(&eps));
        assert_eq!(state.price(2), Some(&(q("2") + &eps)));
        let out = run_mpr(&inst);
        assert_eq!(out.allocation().slots(), &[Some(0), Some(2), Some(1)]);
    }

    #[test]
    fn homogeneous_inputs_reduce_to_baselines() {
        let l = ladder(&["0.1", "0.15", "0.4"]);
        let values = ["3", "1", "7", "2", "5"];
        let um = AuctionInstance::new(
            l.clone(),
            values.iter().map(|v| BidderType::um(q(v))).collect(),
        )
        .unwrap();
        assert_eq!(run_mpr(&um), run_vcg(&um));
        let vm =
            AuctionInstance::new(l, values.iter().map(|v| BidderType::vm(q(v))).collect()).unwrap();
        assert_eq!(run_mpr(&vm), run_gsp(&vm));
    }

    #[test]
    fn all_um_with_fewer_bidders_than_slots() {
        let inst = AuctionInstance::new(
            ladder(&["0.1", "0.2", "0.3"]),
            vec![BidderType::um(q("4")), BidderType::um(q("2"))],
        )
        .unwrap();
        assert_eq!(run_mpr(&inst), run_vcg(&inst));
    }
}
