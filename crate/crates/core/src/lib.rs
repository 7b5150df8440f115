//! Transistor amplifier simulation and the economic amplifier mapping.
//!
//! The crate is split into a physical half and an economic half:
//!
//! - [`devices`]: Ebers-Moll bipolar equations and a square-law MOS device.
//! - [`circuit`]: DC operating point of a common-emitter stage biased by a
//!   resistive divider, and small-signal parameters at that point.
//! - [`amplifier`]: stage gain, output power, cascades and breakdown limits.
//! - [`econmap`]: economic amplification coefficients (incomes over inputs,
//!   capital coefficient, investment productivity, Cobb-Douglas, investment
//!   multiplier) and the one-factor least-squares fit.
//! - [`cli`]: config and CSV ingestion plus the report formatting used by the
//!   `econamp` binary.
//!
//! Everything in the library is a pure function of its inputs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplifier;
pub mod circuit;
pub mod cli;
pub mod devices;
pub mod econmap;
mod error;

pub use error::{Error, Result};
