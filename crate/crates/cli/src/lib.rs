//! Command implementations and output formats behind the `urnlab` binary.

pub mod commands;
pub mod record;
