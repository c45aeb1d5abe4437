//! Position auctions for a mix of utility-maximizing (UM) and
//! value-maximizing (VM) bidders.
//!
//! The crate provides four mechanisms over exact rational arithmetic:
//!
//! - [`mechanisms::run_vcg`] and [`mechanisms::run_gsp`], the classical baselines;
//! - [`mechanisms::run_mpu`], value ranking with class-dependent payments, for
//!   settings where bidder classes are public;
//! - [`mechanisms::run_mpr`], a hybrid slot-price mechanism that stays truthful
//!   when bidders may misreport both their value and their class.
//!
//! The [`verify`] module checks individual rationality, incentive
//! compatibility (by exhaustive deviation search over a critical-value set),
//! robustness, structural properties of MPR outcomes and the welfare
//! approximation ratio. [`instances`] holds the seeded generator, the
//! instance file format and report serialization.

pub mod cli;
pub mod error;
pub mod instances;
pub mod mechanisms;
pub mod model;
pub mod rational;
pub mod verify;

pub use error::{AuctionError, Result};
pub use mechanisms::{run_gsp, run_mpr, run_mpu, run_vcg, MechanismId};
pub use model::{
    lsw, marginal_payment_increase, optimal_allocation, um_utility, vm_preference, Allocation,
    AuctionInstance, BidderClass, BidderId, BidderType, Outcome, Slot, SlotLadder, VmPreference,
};
pub use rational::Rational;
