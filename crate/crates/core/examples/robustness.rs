// On single-class inputs MPR and MPU coincide with VCG (all UM) and GSP (all VM).

use std::error::Error;

use mixed_auction::instances::{instance_for_seed, SweepSpec};
use mixed_auction::verify::check_robustness;
use mixed_auction::Rational;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (label, vm_probability) in [("all-UM", Rational::zero()), ("all-VM", Rational::one())] {
        let spec = SweepSpec::mixed(1..=10, 1..=5).with_vm_probability(vm_probability);
        let mut matched = 0;
        for seed in 0..200 {
            let check = check_robustness(&instance_for_seed(seed, &spec)?)?;
            if check.passed() {
                matched += 1;
            }
        }
        println!("{label}: {matched}/200 instances match the baseline exactly");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
