//! Exact combinatorics of affine Weyl groups: Kazhdan-Lusztig bases, two-sided
//! cells, the antispherical module, and tilting character arithmetic, all over
//! exact integer/rational scalars.
//!
//! The central entry point is [`engine::Verifier`], which sweeps every finite
//! parabolic subgroup of the affine Weyl group of a supported root system and
//! certifies, cell by cell, that some tilting character has a dimension whose
//! p-adic valuation equals the cell's Lusztig a-value.

pub mod affine;
pub mod antispherical;
pub mod cache;
pub mod config;
pub mod engine;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod multipoly;
pub mod rootsys;

pub use config::Caps;
pub use error::{Error, Result};
pub use rootsys::{Rat, RootSystem, Weight};
