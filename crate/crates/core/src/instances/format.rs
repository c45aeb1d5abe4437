//! Instance files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "ctrs": ["1/10", "1/5", "3/10", "2/5"],
//!   "bidders": [{ "value": "6", "class": "VM" }, { "value": "9", "class": "UM" }],
//!   "seed": 7
//! }
//! ```
//!
//! Numbers are strings: fractions (`"23/3"`), integers or exact decimals
//! (`"0.1"`). Writing always uses the reduced fraction form.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::model::{AuctionInstance, BidderClass, BidderType, SlotLadder};
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub ctrs: Vec<String>,
    pub bidders: Vec<BidderEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BidderEntry {
    pub value: String,
    pub class: BidderClass,
}

impl From<&AuctionInstance> for InstanceFile {
    fn from(instance: &AuctionInstance) -> Self {
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            ctrs: instance
                .ladder
                .ctrs()
                .iter()
                .map(ToString::to_string)
                .collect(),
            bidders: instance
                .bidders()
                .iter()
                .map(|b| BidderEntry {
                    value: b.value.to_string(),
                    class: b.class,
                })
                .collect(),
            seed: instance.seed,
        }
    }
}

impl TryFrom<InstanceFile> for AuctionInstance {
    type Error = AuctionError;

    fn try_from(file: InstanceFile) -> Result<Self> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(AuctionError::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        let ctrs = file
            .ctrs
            .iter()
            .enumerate()
            .map(|(k, s)| {
                s.parse::<Rational>()
                    .map_err(|e| AuctionError::Parse(format!("ctrs[{k}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let ladder =
            SlotLadder::new(ctrs).map_err(|e| AuctionError::Parse(format!("ctrs: {e}")))?;
        let bidders = file
            .bidders
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let value = b
                    .value
                    .parse::<Rational>()
                    .map_err(|e| AuctionError::Parse(format!("bidders[{i}].value: {e}")))?;
                Ok(BidderType::new(value, b.class))
            })
            .collect::<Result<Vec<_>>>()?;
        let instance = AuctionInstance::new(ladder, bidders)
            .map_err(|e| AuctionError::Parse(format!("bidders: {e}")))?;
        Ok(match file.seed {
            Some(seed) => instance.with_seed(seed),
            None => instance,
        })
    }
}

pub fn serialize_instance(instance: &AuctionInstance) -> String {
    let mut text = serde_json::to_string_pretty(&InstanceFile::from(instance))
        .expect("instance file serializes");
    text.push('\n');
    text
}

pub fn parse_instance(text: &str) -> Result<AuctionInstance> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| AuctionError::Parse(format!("instance file: {e}")))?;
    file.try_into()
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<AuctionInstance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, instance: &AuctionInstance) -> Result<()> {
    std::fs::write(path, serialize_instance(instance))?;
    Ok(())
}
