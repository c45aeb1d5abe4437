//! Instance generation, the instance file format and report serialization.

mod format;
mod generator;
mod report;

pub use format::{
    parse_instance, read_instance, serialize_instance, write_instance, BidderEntry, InstanceFile,
    SCHEMA_VERSION,
};
pub use generator::{
    generate, instance_for_seed, CtrMode, GeneratorConfig, SweepSpec, VALUE_DENOMINATOR,
};
pub use report::{
    parse_report, serialize_report, write_sweep_csv, DeviationsReport, OutcomeReport, Report,
    SweepReport, SWEEP_CSV_HEADER,
};
