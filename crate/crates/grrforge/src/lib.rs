//! Drivers, file formats and the command line for [`grrforge_core`].
//!
//! The core crate does the mathematics; this crate adds what needs `std`:
//! wall-clock budgets, the on-disk table cache, parallel searches, JSON
//! reports and the acceptance harness behind `grrforge selftest`.

pub use grrforge_core as core;

pub mod acceptance;
pub mod budget;
pub mod cache;
pub mod cli;
pub mod error;
pub mod report;
pub mod search;
pub mod stats;
