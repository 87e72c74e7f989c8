//! Command-line front end, JSON formats and the check suite for `qf-core`.

pub mod cli;
pub mod json;
pub mod report;
pub mod spec;
pub mod verify;
