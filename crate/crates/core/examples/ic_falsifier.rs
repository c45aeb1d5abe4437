// Deviation search: MPR survives value and class misreports, MPU does not
// once classes are private.

use std::error::Error;

use mixed_auction::instances::parse_instance;
use mixed_auction::verify::{check_ic, critical_values, IcConfig, Utility};
use mixed_auction::MechanismId;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let instance = parse_instance(include_str!("../fixtures/example1.json"))?;
    let config = IcConfig::default();

    let probes = critical_values(MechanismId::Mpr, &instance, 2, &config)?;
    println!("bidder C: {} candidate values", probes.len());
    println!(
        "MPR: {} profitable misreports",
        check_ic(MechanismId::Mpr, &instance, &config)?.len()
    );

    let public = IcConfig {
        class_deviations: false,
        ..config.clone()
    };
    println!(
        "MPU, public classes: {} profitable misreports",
        check_ic(MechanismId::Mpu, &instance, &public)?.len()
    );

    let found = check_ic(MechanismId::Mpu, &instance, &config)?;
    println!(
        "MPU, private classes: {} profitable misreports",
        found.len()
    );
    if let Some(d) = found
        .iter()
        .find(|d| d.bidder == 2 && d.misreport.value == d.true_type.value)
    {
        let paid = |u: &Utility| match u {
            Utility::Vm { preference } => preference.total_payment.to_string(),
            Utility::Um { utility } => utility.to_string(),
        };
        println!(
            "C {} reports {}: slot {:?} -> {:?}, per-click {} -> {}, total {} -> {}",
            d.true_type,
            d.misreport,
            d.truthful.slot,
            d.deviation.slot,
            d.truthful.price,
            d.deviation.price,
            paid(&d.truthful_utility),
            paid(&d.deviation_utility)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
