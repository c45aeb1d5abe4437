// The two-slot, three-bidder scenario that rules out ratios below 5/4 for
// truthful robust mechanisms.

use std::error::Error;

use mixed_auction::verify::lower_bound_scenario;
use mixed_auction::Rational;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for eps in [
        Rational::new(1, 1000),
        Rational::new(1, 100),
        Rational::new(1, 20),
    ] {
        let report = lower_bound_scenario(&eps)?;
        println!(
            "eps {}: p_h {}, p_l {}, 2p_h - p_l = {}, MPR case-1 ratio {} ({})",
            report.epsilon,
            report.high_price,
            report.low_price,
            report.constraint_lhs,
            report.ratio_case1.ratio,
            report.ratio_case1.ratio.decimal()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
