// Runs all four mechanisms on the five-bidder example and steps through MPR
// one UM insertion at a time.

use std::error::Error;

use mixed_auction::instances::parse_instance;
use mixed_auction::mechanisms::PartialState;
use mixed_auction::verify::{approximation_ratio, check_lemmas};
use mixed_auction::{lsw, optimal_allocation, MechanismId};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let instance = parse_instance(include_str!("../fixtures/example1.json"))?;
    let names = ["A", "B", "C", "D", "E"];

    let mut state = PartialState::new(&instance);
    let priced = |s: &PartialState| {
        (1..=instance.num_slots())
            .filter_map(|k| s.price(k).map(|p| format!("p{k}={p}")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("VMs placed, {}", priced(&state));
    while let Some(slot) = state.insert_next_um() {
        let who = state.occupant(slot).map_or("?", |id| names[id]);
        println!("{who} takes slot {slot}, {}", priced(&state));
    }

    for mechanism in MechanismId::ALL {
        let outcome = mechanism.run(&instance);
        let seats: Vec<String> = (1..=instance.num_slots())
            .map(|k| {
                let who = outcome.allocation().occupant(k).map_or("-", |id| names[id]);
                format!("{who}@{k}:{}", outcome.slot_price(k))
            })
            .collect();
        println!(
            "{mechanism}: {} (LSW {})",
            seats.join(" "),
            lsw(&instance, outcome.allocation())?
        );
    }

    let optimum = optimal_allocation(&instance);
    println!("optimal LSW {}", lsw(&instance, &optimum)?);
    let ratio = approximation_ratio(&instance, MechanismId::Mpr)?;
    println!("MPR ratio {} ({})", ratio.ratio, ratio.ratio.decimal());

    let report = check_lemmas(&MechanismId::Mpr.run(&instance), &instance)?;
    for (name, check) in report.checks() {
        println!(
            "{name}: {} checked, {} violations",
            check.checked,
            check.violations.len()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
