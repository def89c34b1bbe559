//! Companion to `heyting-core`: JSON interchange, parallel scans, the
//! criterion checks behind `heyting verify`, and the command-line tool.

pub mod cli;
pub mod corpus;
mod error;
pub mod json;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
pub use heyting_core as core;
