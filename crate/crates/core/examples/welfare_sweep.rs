// Seeded sweep of MPR and MPU over mixed instances with IR, structural and
// welfare-ratio checks, written as CSV.

use std::error::Error;

use mixed_auction::instances::{write_sweep_csv, SweepSpec};
use mixed_auction::verify::sweep::{run_sweep, Checks, SweepSummary};
use mixed_auction::verify::IcConfig;
use mixed_auction::MechanismId;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = SweepSpec::mixed(1..=12, 1..=6);
    let checks = Checks {
        ir: true,
        lemmas: true,
        ratio: true,
        ..Checks::default()
    };
    for mechanism in [MechanismId::Mpr, MechanismId::Mpu] {
        let rows = run_sweep(0..300, &spec, mechanism, checks, &IcConfig::default())?;
        let summary = SweepSummary::from_rows(&rows);
        let max = summary
            .max_ratio
            .clone()
            .unwrap_or_else(mixed_auction::Rational::one);
        println!(
            "{mechanism}: {} instances, {} IR violations, {} structural failures, max ratio {}",
            summary.instances,
            summary.ir_violations,
            summary.lemma_failures,
            max.decimal()
        );
        if mechanism == MechanismId::Mpr {
            let mut csv = Vec::new();
            write_sweep_csv(&rows[..5], &mut csv)?;
            print!("{}", String::from_utf8(csv)?);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
