//! Seeded instance generation.
//!
//! The generator uses ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)` and separate streams per concern:
//!
//! | stream  | draws                                        |
//! |---------|----------------------------------------------|
//! | 0       | `n` and `K` when sampling a sweep family      |
//! | 1       | the click-through-rate ladder                |
//! | 2 + i   | class, then value (with redraws) of bidder i |
//!
//! ChaCha output is specified bit-for-bit, so a seed yields the same
//! instance on every platform and regardless of how a sweep is scheduled.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AuctionError, Result};
use crate::model::{AuctionInstance, BidderClass, BidderType, SlotLadder};
use crate::rational::Rational;

/// Denominator of generated values and of uniform click-through rates.
pub const VALUE_DENOMINATOR: i64 = 1000;

const SHAPE_STREAM: u64 = 0;
const LADDER_STREAM: u64 = 1;
const BIDDER_STREAM_BASE: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CtrMode {
    /// `K` distinct multiples of 1/1000 in `(0, 1]`, sorted.
    #[default]
    StrictlyIncreasingUniform,
    /// `x_k = top * r^(K - k)` with `top` in `[1/2, 1]` and `r` in {1/2, 3/5, 7/10, 4/5, 9/10}.
    Geometric,
}

impl std::str::FromStr for CtrMode {
    type Err = AuctionError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" | "strictly-increasing-uniform" => Ok(CtrMode::StrictlyIncreasingUniform),
            "geometric" => Ok(CtrMode::Geometric),
            other => Err(AuctionError::Parse(format!("unknown ctr mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub value_low: Rational,
    pub value_high: Rational,
    pub vm_probability: Rational,
    pub ctr_mode: CtrMode,
}

impl GeneratorConfig {
    pub fn new(seed: u64, n: usize, k: usize) -> Self {
        GeneratorConfig {
            seed,
            n,
            k,
            value_low: Rational::one(),
            value_high: Rational::from_integer(100),
            vm_probability: Rational::new(1, 2),
            ctr_mode: CtrMode::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 {
            return Err(AuctionError::InvalidConfig(
                "n and K must be at least 1".into(),
            ));
        }
        if !self.value_low.is_positive() || self.value_low >= self.value_high {
            return Err(AuctionError::InvalidConfig(format!(
                "value range must satisfy 0 < low < high, got ({}, {})",
                self.value_low, self.value_high
            )));
        }
        if self.vm_probability.is_negative() || self.vm_probability > Rational::one() {
            return Err(AuctionError::InvalidConfig(format!(
                "vm probability {} outside [0, 1]",
                self.vm_probability
            )));
        }
        Ok(())
    }
}

fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| AuctionError::Generation(format!("{what} does not fit in 64 bits")))
}

/// Draws a fully specified instance; values are pairwise distinct.
pub fn generate(config: &GeneratorConfig) -> Result<AuctionInstance> {
    config.validate()?;
    let ladder = generate_ladder(config)?;

    // numerators of value / VALUE_DENOMINATOR inside [low, high]
    let scale = Rational::from_integer(VALUE_DENOMINATOR);
    let lo = &config.value_low * &scale;
    let hi = &config.value_high * &scale;
    let lo_num = to_i64(&lo.numer().div_ceil(lo.denom()), "value bound")?;
    let hi_num = to_i64(&hi.numer().div_floor(hi.denom()), "value bound")?;
    let available = (hi_num - lo_num + 1).max(0) as u64;
    if available < config.n as u64 {
        return Err(AuctionError::Generation(format!(
            "value range ({}, {}) holds only {available} distinct multiples of 1/{VALUE_DENOMINATOR}, need {}",
            config.value_low, config.value_high, config.n
        )));
    }

    let p_num = to_i64(config.vm_probability.numer(), "vm probability")?;
    let p_den = to_i64(config.vm_probability.denom(), "vm probability")?;

    let mut taken = std::collections::HashSet::with_capacity(config.n);
    let mut bidders = Vec::with_capacity(config.n);
    for i in 0..config.n {
        let mut rng = stream(config.seed, BIDDER_STREAM_BASE + i as u64);
        let class = if rng.random_range(0..p_den) < p_num {
            BidderClass::Vm
        } else {
            BidderClass::Um
        };
        let numer = loop {
            let m = rng.random_range(lo_num..=hi_num);
            if taken.insert(m) {
                break m;
            }
        };
        bidders.push(BidderType::new(
            Rational::new(numer, VALUE_DENOMINATOR),
            class,
        ));
    }
    Ok(AuctionInstance::new(ladder, bidders)?.with_seed(config.seed))
}

fn generate_ladder(config: &GeneratorConfig) -> Result<SlotLadder> {
    let mut rng = stream(config.seed, LADDER_STREAM);
    let k = config.k;
    let ctrs = match config.ctr_mode {
        CtrMode::StrictlyIncreasingUniform => {
            if k as i64 > VALUE_DENOMINATOR {
                return Err(AuctionError::Generation(format!(
                    "cannot draw {k} distinct rates on a 1/{VALUE_DENOMINATOR} grid"
                )));
            }
            let mut picks =
                rand::seq::index::sample(&mut rng, VALUE_DENOMINATOR as usize, k).into_vec();
            picks.sort_unstable();
            picks
                .into_iter()
                .map(|m| Rational::new(m as i64 + 1, VALUE_DENOMINATOR))
                .collect()
        }
        CtrMode::Geometric => {
            const DECAYS: [(i64, i64); 5] = [(1, 2), (3, 5), (7, 10), (4, 5), (9, 10)];
            let top = Rational::new(rng.random_range(50..=100), 100);
            let (a, b) = DECAYS[rng.random_range(0..DECAYS.len())];
            let decay = Rational::new(a, b);
            let mut ctrs = Vec::with_capacity(k);
            let mut x = top;
            for _ in 0..k {
                ctrs.push(x.clone());
                x = x * &decay;
            }
            ctrs.reverse();
            ctrs
        }
    };
    SlotLadder::new(ctrs)
}

/// Family of instances indexed by seed, with `n` and `K` drawn per seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub n_range: RangeInclusive<usize>,
    pub k_range: RangeInclusive<usize>,
    pub value_low: Rational,
    pub value_high: Rational,
    pub vm_probability: Rational,
    pub ctr_mode: CtrMode,
}

impl SweepSpec {
    /// Values in `[1, 100]`, classes drawn with probability 1/2, uniform rates.
    pub fn mixed(n_range: RangeInclusive<usize>, k_range: RangeInclusive<usize>) -> Self {
        SweepSpec {
            n_range,
            k_range,
            value_low: Rational::one(),
            value_high: Rational::from_integer(100),
            vm_probability: Rational::new(1, 2),
            ctr_mode: CtrMode::default(),
        }
    }

    pub fn with_vm_probability(mut self, p: Rational) -> Self {
        self.vm_probability = p;
        self
    }
}

pub fn instance_for_seed(seed: u64, spec: &SweepSpec) -> Result<AuctionInstance> {
    if spec.n_range.is_empty() || spec.k_range.is_empty() {
        return Err(AuctionError::InvalidConfig("empty n or K range".into()));
    }
    let mut rng = stream(seed, SHAPE_STREAM);
    let n = rng.random_range(spec.n_range.clone());
    let k = rng.random_range(spec.k_range.clone());
    generate(&GeneratorConfig {
        seed,
        n,
        k,
        value_low: spec.value_low.clone(),
        value_high: spec.value_high.clone(),
        vm_probability: spec.vm_probability.clone(),
        ctr_mode: spec.ctr_mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let cfg = GeneratorConfig::new(7, 6, 4);
        assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        let other = GeneratorConfig::new(8, 6, 4);
        assert_ne!(generate(&cfg).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn class_probability_extremes() {
        let mut cfg = GeneratorConfig::new(3, 10, 3);
        cfg.vm_probability = Rational::zero();
        assert!(generate(&cfg).unwrap().is_all(BidderClass::Um));
        cfg.vm_probability = Rational::one();
        cfg.n = 4;
        let inst = generate(&cfg).unwrap();
        assert!(inst.is_all(BidderClass::Vm));
        assert_eq!(inst.num_bidders(), inst.num_slots() + 1);
    }

    #[test]
    fn values_are_distinct_and_in_range() {
        for seed in 0..50 {
            let cfg = GeneratorConfig::new(seed, 12, 6);
            let inst = generate(&cfg).unwrap();
            assert!(inst.strict());
            assert!(inst.ladder.is_strictly_increasing());
            for b in inst.bidders() {
                assert!(b.value >= cfg.value_low && b.value <= cfg.value_high);
                assert!(b.value.denom() <= &BigInt::from(VALUE_DENOMINATOR));
            }
        }
    }

    #[test]
    fn narrow_range_is_an_error() {
        let mut cfg = GeneratorConfig::new(1, 3, 2);
        cfg.value_low = Rational::new(1, 1000);
        cfg.value_high = Rational::new(2, 1000);
        assert!(matches!(generate(&cfg), Err(AuctionError::Generation(_))));
        cfg.n = 2;
        assert!(generate(&cfg).unwrap().strict());
    }

    #[test]
    fn geometric_ladder_is_increasing() {
        let mut cfg = GeneratorConfig::new(11, 5, 6);
        cfg.ctr_mode = CtrMode::Geometric;
        let inst = generate(&cfg).unwrap();
        assert!(inst.ladder.is_strictly_increasing());
        assert!(inst.ladder.ctrs().last().unwrap() <= &Rational::one());
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = GeneratorConfig::new(1, 3, 0);
        assert!(generate(&cfg).is_err());
        cfg.k = 2;
        cfg.vm_probability = Rational::new(3, 2);
        assert!(generate(&cfg).is_err());
        cfg.vm_probability = Rational::zero();
        cfg.value_high = cfg.value_low.clone();
        assert!(generate(&cfg).is_err());
    }

    #[test]
    fn sweep_shapes_stay_in_range() {
        let spec = SweepSpec::mixed(1..=12, 1..=6);
        for seed in 0..200 {
            let inst = instance_for_seed(seed, &spec).unwrap();
            assert!((1..=12).contains(&inst.num_bidders()));
            assert!((1..=6).contains(&inst.num_slots()));
            assert_eq!(inst.seed, Some(seed));
        }
    }
}
