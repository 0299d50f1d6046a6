//! Exact computations on output-feedback invariants of linear systems.

pub mod arsys;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod git_tests;
pub mod grassmann;
pub mod ideals;
pub mod miso;
pub mod pencil;
pub mod poly;
pub mod realization;
pub mod sample;

pub use error::{Error, Result};
