//! Library side of the `diophant` command: problem files, reports and the
//! seeded property suite behind `diophant verify`.

pub mod problem;
pub mod report;
pub mod suite;

use diophant::Error;

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Dimension(_) | Error::Precondition(_) => 2,
        Error::Degenerate { .. } => 3,
        Error::Budget { .. } => 4,
        Error::RadiusInsufficient { .. } | Error::NotFound { .. } | Error::NoSolution { .. } | Error::Defect(_) => 1,
    }
}
