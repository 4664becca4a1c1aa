//! Campaign and report machinery behind the `corespan` binary; exposed as a
//! library so integration tests drive the same code paths as the CLI.

pub mod campaigns;
pub mod report;
