//! Driver for the `eur` command-line tool.

pub mod campaign;
pub mod commands;
pub mod error;
pub mod families;
