use mixed_auction::instances::SweepSpec;
use mixed_auction::instances::{
    generate, parse_instance, parse_report, serialize_instance, serialize_report, CtrMode,
    GeneratorConfig, OutcomeReport, Report, SweepReport,
};
use mixed_auction::verify::sweep::{run_sweep, Checks, SweepSummary};
use mixed_auction::verify::{approximation_ratio, check_lemmas, lower_bound_scenario, IcConfig};
use mixed_auction::{MechanismId, Rational};
use proptest::prelude::*;

fn config_strategy() -> impl Strategy<Value = GeneratorConfig> {
    (
        any::<u64>(),
        1usize..=12,
        1usize..=6,
        0i64..=4,
        any::<bool>(),
    )
        .prop_map(|(seed, n, k, p, geometric)| {
            let mut cfg = GeneratorConfig::new(seed, n, k);
            cfg.vm_probability = Rational::new(p, 4);
            if geometric {
                cfg.ctr_mode = CtrMode::Geometric;
            }
            cfg
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn instance_files_round_trip(cfg in config_strategy()) {
        let instance = generate(&cfg).unwrap();
        let text = serialize_instance(&instance);
        prop_assert_eq!(parse_instance(&text).unwrap(), instance);
    }

    #[test]
    fn outcome_and_ratio_reports_round_trip(cfg in config_strategy(), m in 0usize..4) {
        let instance = generate(&cfg).unwrap();
        let mechanism = MechanismId::ALL[m];
        let outcome = OutcomeReport::new(mechanism, &instance, mechanism.run(&instance)).unwrap();
        for report in [Report::Outcome(outcome), Report::Ratio(approximation_ratio(&instance, mechanism).unwrap())] {
            prop_assert_eq!(parse_report(&serialize_report(&report)).unwrap(), report);
        }
    }

    #[test]
    fn rationals_round_trip_through_text(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rational::new(n, d);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }
}

#[test]
fn lemma_lower_bound_and_sweep_reports_round_trip() {
    let instance = generate(&GeneratorConfig::new(5, 7, 4)).unwrap();
    let lemmas = check_lemmas(&MechanismId::Mpr.run(&instance), &instance).unwrap();
    let spec = SweepSpec::mixed(2..=5, 1..=3);
    let rows = run_sweep(
        0..6,
        &spec,
        MechanismId::Mpr,
        Checks::all(),
        &IcConfig {
            grid_points: 4,
            ..IcConfig::default()
        },
    )
    .unwrap();
    let reports = [
        Report::Lemmas(lemmas),
        Report::LowerBound(lower_bound_scenario(&Rational::new(1, 100)).unwrap()),
        Report::Sweep(SweepReport {
            summary: SweepSummary::from_rows(&rows),
            rows,
        }),
    ];
    for report in reports {
        assert_eq!(parse_report(&serialize_report(&report)).unwrap(), report);
    }
}

#[test]
fn decimals_are_truncated_not_rounded() {
    let json = serde_json::to_value(Rational::new(2, 3)).unwrap();
    assert_eq!(json["exact"], "2/3");
    assert_eq!(json["decimal"], "0.666666666666");
    assert_eq!(
        serde_json::to_value(Rational::new(-1, 8)).unwrap()["decimal"],
        "-0.125"
    );
}
