//! Worst-case receive power for two-ray ground-reflection links with an
//! unknown transmitter-receiver distance, and assignment of frequency pairs
//! to users as a quadratic multiple knapsack problem with heterogeneous
//! (per-knapsack) profits.
//!
//! The crate is organised bottom-up:
//!
//! - [`channel`]: closed-form propagation math (path lengths, phase shift,
//!   single- and dual-frequency receive power, envelope lower bound).
//! - [`worstcase`]: minimum receive power over a distance interval, plus a
//!   dense-grid oracle used to cross-check the closed-form candidates.
//! - [`profits`]: per-user profit tables derived from worst-case powers.
//! - [`qmkp`]: the generic knapsack model, the greedy constructive solver,
//!   an exhaustive oracle and the baseline assignment schemes.
//! - [`bench`]: scenario generation and Monte-Carlo comparison of schemes.

pub mod bench;
pub mod channel;
mod error;
pub mod format;
pub mod profits;
pub mod qmkp;
pub mod worstcase;

pub use error::{Error, Result};
