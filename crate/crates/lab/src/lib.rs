//! Instance files, command implementations and report rendering for the
//! `schanuel-lab` binary.

pub mod commands;
pub mod instance;

pub use commands::{Exit, Outcome};
pub use instance::{parse_instance, InstanceError, InstanceFile};
