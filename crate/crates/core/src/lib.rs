//! Linguistic complexity features, control-token preprocessing and
//! simplification metrics.

pub mod classify;
pub mod control;
pub mod corpus;
pub mod error;
pub mod explain;
pub mod features;
pub mod metrics;
pub mod resources;
pub mod textproc;
pub mod treequery;

pub use error::{Error, Result};
