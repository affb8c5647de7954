//! Exact truncated highest-weight modules over sl2 and sl3.

pub mod cli;
pub mod decomp;
pub mod error;
pub mod exactla;
pub mod module;
pub mod rat;
pub mod rootdata;
pub mod suite;
pub mod tensorblocks;

pub use error::{Error, Result};
pub use rat::Q;
