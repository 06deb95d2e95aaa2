//! Command-line entry points and the HTTP/WebSocket service around
//! `liveref-core`.

pub mod commands;
pub mod server;
pub mod watch;

use liveref_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Missing path, unreadable or unwritable file, bad configuration.
    pub const IO: i32 = 1;
    /// At least one file did not parse; documents were still written.
    pub const PARSE: i32 = 2;
    pub const STALE: i32 = 3;
    pub const NAMING: i32 = 4;
    /// The fragment could not be extracted or the rewrite did not parse.
    pub const REWRITE: i32 = 5;
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::StaleCandidate { .. } => exit::STALE,
        Error::Naming { .. } => exit::NAMING,
        Error::Legality(_) | Error::Rewrite(_) => exit::REWRITE,
        Error::Io { .. } | Error::Config(_) | Error::NoAnalysis(_) | Error::Log { .. } => exit::IO,
    }
}
