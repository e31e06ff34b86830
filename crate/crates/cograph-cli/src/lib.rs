//! File formats and command implementations behind the `cograph` binary.

pub mod commands;
pub mod format;
