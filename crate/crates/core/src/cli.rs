//! Command-line driver.
//!
//! Exit codes: 0 success / no violations, 1 violations found, 2 usage or I/O
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{AuctionError, Result};
use crate::instances::{
    generate, instance_for_seed, parse_instance, read_instance, serialize_instance,
    serialize_report, write_sweep_csv, CtrMode, GeneratorConfig, OutcomeReport, Report,
    SweepReport, SweepSpec,
};
use crate::mechanisms::MechanismId;
use crate::model::AuctionInstance;
use crate::rational::Rational;
use crate::verify::sweep::{evaluate, run_sweep, Checks, SweepRow, SweepSummary};
use crate::verify::{
    check_robustness, lower_bound_scenario, DeltaRule, IcConfig, LowerBoundReport, Utility,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const EXAMPLE1: &str = include_str!("../fixtures/example1.json");

#[derive(Debug, Parser)]
#[command(
    name = "mixed-auction",
    version,
    about = "Position auctions for mixed UM/VM bidders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one mechanism on an instance file and print the outcome report.
    Run {
        #[arg(long, short, value_enum, default_value = "mpr")]
        mechanism: MechanismArg,
        instance: PathBuf,
    },
    /// Check IR, IC, structural properties, welfare ratio or robustness.
    Verify(VerifyArgs),
    /// Evaluate the two-slot lower-bound scenario.
    Lowerbound {
        /// Fraction in (0, 1/10).
        #[arg(long, default_value = "1/100")]
        epsilon: String,
        #[arg(long)]
        json: bool,
    },
    /// Write seeded instance files.
    Generate(GenerateArgs),
    /// Example run, robustness, property and ratio sweeps and the lower-bound scenario in one go.
    Reproduce {
        /// Instances per sweep.
        #[arg(long, default_value_t = 1000)]
        instances: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MechanismArg {
    Vcg,
    Gsp,
    Mpu,
    Mpr,
}

impl From<MechanismArg> for MechanismId {
    fn from(m: MechanismArg) -> Self {
        match m {
            MechanismArg::Vcg => MechanismId::Vcg,
            MechanismArg::Gsp => MechanismId::Gsp,
            MechanismArg::Mpu => MechanismId::Mpu,
            MechanismArg::Mpr => MechanismId::Mpr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Ir,
    Ic,
    Lemmas,
    Ratio,
    Robustness,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CtrModeArg {
    Uniform,
    Geometric,
}

impl From<CtrModeArg> for CtrMode {
    fn from(m: CtrModeArg) -> Self {
        match m {
            CtrModeArg::Uniform => CtrMode::StrictlyIncreasingUniform,
            CtrModeArg::Geometric => CtrMode::Geometric,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Instance file; omit when using --seed-range.
    #[arg(required_unless_present = "seed_range", conflicts_with = "seed_range")]
    pub instance: Option<PathBuf>,
    /// Half-open seed range such as `0..1000`.
    #[arg(long)]
    pub seed_range: Option<String>,
    #[arg(long, short, value_enum, default_value = "mpr")]
    pub mechanism: MechanismArg,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "ir,ic,lemmas,ratio"
    )]
    pub checks: Vec<CheckArg>,
    /// Fixed probe offset for the IC search (fraction string).
    #[arg(long)]
    pub delta: Option<String>,
    /// Probe offset as a fraction of the smallest gap between critical values.
    #[arg(long, default_value = "1/1000")]
    pub delta_gap_fraction: String,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// Let MPU bidders misreport their class as well as their value.
    #[arg(long)]
    pub classes_private: bool,
    /// Also probe misreports equal to another bidder's value.
    #[arg(long)]
    pub tied_reports: bool,
    /// Report MPU class-deviation violations without failing; fail if none are found.
    #[arg(long)]
    pub expect_mpu_class_violations: bool,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub k_min: usize,
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
    #[arg(long, default_value = "1/2")]
    pub vm_prob: String,
    #[arg(long, value_enum, default_value = "uniform")]
    pub ctr_mode: CtrModeArg,
    /// Write the per-instance table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Print the full JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value = "1/2")]
    pub vm_prob: String,
    #[arg(long, default_value = "1")]
    pub value_low: String,
    #[arg(long, default_value = "100")]
    pub value_high: String,
    #[arg(long, value_enum, default_value = "uniform")]
    pub ctr_mode: CtrModeArg,
    /// Number of consecutive seeds; with more than one, `--out` is a directory.
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Output file (or directory); standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            if code == 0 {
                EXIT_OK
            } else {
                EXIT_USAGE
            }
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Run {
            mechanism,
            instance,
        } => cmd_run(&instance, mechanism.into(), out),
        Command::Verify(args) => cmd_verify(&args, out, err),
        Command::Lowerbound { epsilon, json } => cmd_lowerbound(&epsilon, json, out),
        Command::Generate(args) => cmd_generate(&args, out),
        Command::Reproduce { instances } => cmd_reproduce(instances, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn parse_fraction(flag: &str, s: &str) -> Result<Rational> {
    s.parse::<Rational>()
        .map_err(|e| AuctionError::InvalidConfig(format!("--{flag}: {e}")))
}

fn parse_seed_range(s: &str) -> Result<Range<u64>> {
    let bad =
        || AuctionError::InvalidConfig(format!("--seed-range expects `start..end`, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let start: u64 = a.trim().parse().map_err(|_| bad())?;
    let end: u64 = b.trim().parse().map_err(|_| bad())?;
    if start >= end {
        return Err(bad());
    }
    Ok(start..end)
}

pub fn cmd_run(path: &Path, mechanism: MechanismId, out: &mut dyn Write) -> Result<i32> {
    let instance = read_instance(path)?;
    let report = OutcomeReport::new(mechanism, &instance, mechanism.run(&instance))?;
    writeln!(out, "{}", serialize_report(&Report::Outcome(report)))?;
    Ok(EXIT_OK)
}

fn describe_utility(u: &Utility) -> String {
    match u {
        Utility::Um { utility } => format!("utility {utility}"),
        Utility::Vm { preference } => format!(
            "value {} paying {}{}",
            preference.obtained_value,
            preference.total_payment,
            if preference.feasible {
                ""
            } else {
                " (infeasible)"
            }
        ),
    }
}

fn write_row_details(row: &SweepRow, out: &mut dyn Write) -> Result<()> {
    for v in &row.ir_violations {
        writeln!(
            out,
            "seed {}: IR violation: bidder {} at slot {} pays {} > value {}",
            row.seed, v.bidder, v.slot, v.price, v.value
        )?;
    }
    for d in &row.ic_violations {
        let slot = |s: Option<usize>| s.map_or("-".to_string(), |k| k.to_string());
        writeln!(
            out,
            "seed {}: IC violation: bidder {} {} reports {}: slot {} -> {}, price {} -> {}, {} -> {}",
            row.seed,
            d.bidder,
            d.true_type,
            d.misreport,
            slot(d.truthful.slot),
            slot(d.deviation.slot),
            d.truthful.price,
            d.deviation.price,
            describe_utility(&d.truthful_utility),
            describe_utility(&d.deviation_utility),
        )?;
    }
    if let Some(lemmas) = &row.lemmas {
        for (name, check) in lemmas.checks() {
            for v in &check.violations {
                writeln!(out, "seed {}: {name} failed: {}", row.seed, v.detail)?;
            }
        }
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mechanism: MechanismId = args.mechanism.into();
    let has = |c: CheckArg| args.checks.contains(&c);
    let checks = Checks {
        ir: has(CheckArg::Ir),
        ic: has(CheckArg::Ic),
        lemmas: has(CheckArg::Lemmas),
        ratio: has(CheckArg::Ratio),
    };
    let delta = match &args.delta {
        Some(d) => DeltaRule::Fixed(parse_fraction("delta", d)?),
        None => DeltaRule::GapFraction(parse_fraction(
            "delta-gap-fraction",
            &args.delta_gap_fraction,
        )?),
    };
    let ic = IcConfig {
        delta,
        grid_points: args.grid,
        class_deviations: mechanism != MechanismId::Mpu || args.classes_private,
        tied_reports: args.tied_reports,
    };
    if checks.lemmas && mechanism != MechanismId::Mpr {
        writeln!(
            err,
            "note: structural checks apply to MPR only; skipped for {mechanism}"
        )?;
    }

    let instances: Vec<AuctionInstance> = match (&args.instance, &args.seed_range) {
        (Some(path), _) => vec![read_instance(path)?],
        (None, Some(range)) => {
            let spec = SweepSpec {
                n_range: args.n_min..=args.n_max,
                k_range: args.k_min..=args.k_max,
                vm_probability: parse_fraction("vm-prob", &args.vm_prob)?,
                ctr_mode: args.ctr_mode.into(),
                ..SweepSpec::mixed(1..=1, 1..=1)
            };
            let seeds = parse_seed_range(range)?;
            if checks.ir || checks.ic || checks.lemmas || checks.ratio {
                let rows = run_sweep(seeds.clone(), &spec, mechanism, checks, &ic)?;
                return finish_verify(
                    args,
                    mechanism,
                    rows,
                    robustness_over(seeds, &spec, has(CheckArg::Robustness))?,
                    out,
                );
            }
            seeds
                .map(|s| instance_for_seed(s, &spec))
                .collect::<Result<_>>()?
        }
        (None, None) => {
            return Err(AuctionError::InvalidConfig(
                "give an instance file or --seed-range".into(),
            ))
        }
    };

    let mut rows = Vec::new();
    let mut robustness_failures = 0;
    for instance in &instances {
        if has(CheckArg::Robustness) && !check_robustness(instance)?.passed() {
            robustness_failures += 1;
        }
        if checks.ir || checks.ic || checks.lemmas || checks.ratio {
            rows.push(evaluate(instance, mechanism, checks, &ic)?);
        }
    }
    let robustness = has(CheckArg::Robustness).then_some((instances.len(), robustness_failures));
    finish_verify(args, mechanism, rows, robustness, out)
}

fn robustness_over(
    seeds: Range<u64>,
    spec: &SweepSpec,
    enabled: bool,
) -> Result<Option<(usize, usize)>> {
    if !enabled {
        return Ok(None);
    }
    let mut failures = 0;
    let total = seeds.end - seeds.start;
    for seed in seeds {
        if !check_robustness(&instance_for_seed(seed, spec)?)?.passed() {
            failures += 1;
        }
    }
    Ok(Some((total as usize, failures)))
}

fn finish_verify(
    args: &VerifyArgs,
    mechanism: MechanismId,
    rows: Vec<SweepRow>,
    robustness: Option<(usize, usize)>,
    out: &mut dyn Write,
) -> Result<i32> {
    let summary = SweepSummary::from_rows(&rows);
    if let Some(path) = &args.csv {
        write_sweep_csv(&rows, std::fs::File::create(path)?)?;
    }
    let expected_ic =
        args.expect_mpu_class_violations && mechanism == MechanismId::Mpu && args.classes_private;
    if args.json {
        let report = Report::Sweep(SweepReport {
            summary: summary.clone(),
            rows: rows.clone(),
        });
        writeln!(out, "{}", serialize_report(&report))?;
    } else {
        for row in &rows {
            write_row_details(row, out)?;
        }
        writeln!(out, "mechanism: {mechanism}")?;
        writeln!(
            out,
            "instances: {}",
            summary.instances.max(robustness.map_or(0, |r| r.0))
        )?;
        writeln!(out, "ir violations: {}", summary.ir_violations)?;
        writeln!(
            out,
            "ic violations: {}{}",
            summary.ic_violations,
            if expected_ic {
                " (expected: classes are private under MPU)"
            } else {
                ""
            }
        )?;
        writeln!(out, "structural failures: {}", summary.lemma_failures)?;
        if let Some((n, failures)) = robustness {
            writeln!(out, "robustness failures: {failures} of {n}")?;
        }
    }

    let ic_counted = if expected_ic {
        0
    } else {
        summary.ic_violations
    };
    let total =
        summary.ir_violations + ic_counted + summary.lemma_failures + robustness.map_or(0, |r| r.1);
    if !args.json {
        match &summary.max_ratio {
            Some(r) => writeln!(
                out,
                "{total} violations, max ratio {} {} 2",
                r,
                if *r <= Rational::from_integer(2) {
                    "<="
                } else {
                    ">"
                }
            )?,
            None => writeln!(out, "{total} violations")?,
        }
    }
    if expected_ic && summary.ic_violations == 0 {
        writeln!(
            out,
            "expected MPU class-manipulation violations were not found"
        )?;
        return Ok(EXIT_VIOLATIONS);
    }
    Ok(if total == 0 { EXIT_OK } else { EXIT_VIOLATIONS })
}

fn write_lower_bound(report: &LowerBoundReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "epsilon: {}", report.epsilon)?;
    for case in &report.cases {
        let slot = case.mpr_slot_c.map_or("-".to_string(), |k| k.to_string());
        write!(
            out,
            "case {}: C = {}: MPR seats C at slot {slot}, price {}",
            case.case, case.bidder_c, case.mpr_payment_c
        )?;
        if let Some(p) = &case.gsp_payment_c {
            write!(out, "; GSP price {p}")?;
        }
        if let Some(m) = case.mpr_matches_gsp {
            write!(out, "; MPR = GSP: {m}")?;
        }
        writeln!(out)?;
    }
    writeln!(out, "p_h: {}", report.high_price)?;
    writeln!(out, "p_l: {}", report.low_price)?;
    writeln!(
        out,
        "constraint_lhs: {} ({} 4)",
        report.constraint_lhs,
        if report.constraint_violated {
            ">"
        } else {
            "<="
        }
    )?;
    writeln!(
        out,
        "case 1 ratio: {} ({})",
        report.ratio_case1.ratio,
        report.ratio_case1.ratio.decimal()
    )?;
    Ok(())
}

pub fn cmd_lowerbound(epsilon: &str, json: bool, out: &mut dyn Write) -> Result<i32> {
    let eps = parse_fraction("epsilon", epsilon)?;
    let report = lower_bound_scenario(&eps)?;
    if json {
        writeln!(out, "{}", serialize_report(&Report::LowerBound(report)))?;
    } else {
        write_lower_bound(&report, out)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    if args.count == 0 {
        return Err(AuctionError::InvalidConfig(
            "--count must be at least 1".into(),
        ));
    }
    let config = |seed| -> Result<GeneratorConfig> {
        Ok(GeneratorConfig {
            seed,
            n: args.n,
            k: args.k,
            value_low: parse_fraction("value-low", &args.value_low)?,
            value_high: parse_fraction("value-high", &args.value_high)?,
            vm_probability: parse_fraction("vm-prob", &args.vm_prob)?,
            ctr_mode: args.ctr_mode.into(),
        })
    };
    let seeds = args.seed..args.seed + args.count;
    match &args.out {
        None => {
            for seed in seeds {
                write!(out, "{}", serialize_instance(&generate(&config(seed)?)?))?;
            }
        }
        Some(path) if args.count == 1 => {
            std::fs::write(path, serialize_instance(&generate(&config(args.seed)?)?))?;
        }
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for seed in seeds {
                let text = serialize_instance(&generate(&config(seed)?)?);
                std::fs::write(dir.join(format!("instance_{seed}.json")), text)?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_reproduce(instances: u64, out: &mut dyn Write) -> Result<i32> {
    let mut failures = 0;
    let mut line = |out: &mut dyn Write, ok: bool, text: String| -> Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "[{}] {text}", if ok { "PASS" } else { "FAIL" })?;
        Ok(())
    };

    let example = parse_instance(EXAMPLE1)?;
    let mpr = MechanismId::Mpr.run(&example);
    let prices: Vec<String> = mpr.slot_prices().iter().map(ToString::to_string).collect();
    let expected = ["6", "7", "23/3", "8"];
    line(
        out,
        prices == expected,
        format!("example run: MPR slot prices {}", prices.join(", ")),
    )?;

    let seeds = 0..instances;
    for (label, p) in [("all-UM", Rational::zero()), ("all-VM", Rational::one())] {
        let spec = SweepSpec::mixed(1..=12, 1..=6).with_vm_probability(p);
        let robust = robustness_over(seeds.clone(), &spec, true)?.expect("enabled");
        line(
            out,
            robust.1 == 0,
            format!(
                "robustness on {} {label} instances: {} failures",
                robust.0, robust.1
            ),
        )?;
    }

    let spec = SweepSpec::mixed(1..=12, 1..=6);
    let checks = Checks {
        ir: true,
        ic: false,
        lemmas: true,
        ratio: true,
    };
    let rows = run_sweep(
        seeds.clone(),
        &spec,
        MechanismId::Mpr,
        checks,
        &IcConfig::default(),
    )?;
    let summary = SweepSummary::from_rows(&rows);
    line(
        out,
        summary.ir_violations == 0,
        format!(
            "MPR IR over {} instances: {} violations",
            summary.instances, summary.ir_violations
        ),
    )?;
    line(
        out,
        summary.lemma_failures == 0,
        format!(
            "MPR structural properties over {} instances: {} failures",
            summary.instances, summary.lemma_failures
        ),
    )?;
    let max_ratio = summary.max_ratio.unwrap_or_else(Rational::one);
    line(
        out,
        max_ratio <= Rational::from_integer(2),
        format!(
            "MPR max welfare ratio: {max_ratio} ({})",
            max_ratio.decimal()
        ),
    )?;

    let ic_seeds = 0..instances.min(200);
    let ic_spec = SweepSpec::mixed(2..=8, 1..=4);
    let ic_checks = Checks {
        ic: true,
        ..Checks::default()
    };
    let ic_rows = run_sweep(
        ic_seeds,
        &ic_spec,
        MechanismId::Mpr,
        ic_checks,
        &IcConfig::default(),
    )?;
    let ic_summary = SweepSummary::from_rows(&ic_rows);
    line(
        out,
        ic_summary.ic_violations == 0,
        format!(
            "MPR IC search over {} instances: {} violations",
            ic_summary.instances, ic_summary.ic_violations
        ),
    )?;

    let mpu = crate::verify::check_ic(MechanismId::Mpu, &example, &IcConfig::default())?;
    line(
        out,
        !mpu.is_empty(),
        format!(
            "MPU with private classes on the example: {} profitable misreports",
            mpu.len()
        ),
    )?;

    let lb = lower_bound_scenario(&Rational::new(1, 100))?;
    line(
        out,
        lb.constraint_violated,
        format!(
            "lower-bound scenario: 2 p_h - p_l = {} > 4, MPR case-1 ratio {}",
            lb.constraint_lhs, lb.ratio_case1.ratio
        ),
    )?;

    let exit = if failures == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    };
    Ok(exit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["mixed-auction"];
        full.extend_from_slice(args);
        let code = run_with_args(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn seed_range_parsing() {
        assert_eq!(parse_seed_range("0..1000").unwrap(), 0..1000);
        assert!(parse_seed_range("5..5").is_err());
        assert!(parse_seed_range("5-9").is_err());
    }

    #[test]
    fn lowerbound_usage_error() {
        let (code, _, err) = run_cli(&["lowerbound", "--epsilon", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("epsilon"));
    }

    #[test]
    fn unknown_check_is_usage_error() {
        let (code, _, _) = run_cli(&["verify", "--seed-range", "0..2", "--checks", "bogus"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, _, err) = run_cli(&["run", "--mechanism", "mpr", "/nonexistent/instance.json"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_cli(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("lowerbound"));
    }
}
