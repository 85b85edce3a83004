//! Library side of the `holder-lab` command-line tool.

pub mod commands;
pub mod manifest;
