//! Instance files, generators, the solve dispatcher, benchmarking and the
//! verification suites behind the `vcst` binary.

pub mod bench;
pub mod generate;
pub mod io;
pub mod solve;
pub mod verify;

use crate::error::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Exit code for an error and a short machine-readable reason.
pub fn exit_status(e: &Error) -> (i32, &'static str) {
    match e {
        Error::Infeasible(_) => (EXIT_INFEASIBLE, "infeasible"),
        Error::Invariant(_) => (EXIT_INTERNAL, "invariant"),
        Error::Lp(_) => (EXIT_INTERNAL, "lp"),
        Error::InvalidInstance(_) => (EXIT_USAGE, "invalid-instance"),
        Error::InvalidTree(_) => (EXIT_USAGE, "invalid-tree"),
        Error::TooLarge(_) => (EXIT_USAGE, "too-large"),
        Error::Domain(_) => (EXIT_USAGE, "domain"),
        Error::WrongVariant(_) => (EXIT_USAGE, "wrong-variant"),
        Error::Parse(_) => (EXIT_USAGE, "parse"),
    }
}
