//! File formats and subcommands behind the `cryst` binary.

pub mod commands;
pub mod files;
