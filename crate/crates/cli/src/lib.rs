//! Command-line front end for `riemann-core`: parses a job, builds the
//! surface, and writes it as PLY, OBJ (+ MTL), JSON or CSV together with a
//! `.seams.json` report.
//!
//! Exit codes: 0 success, 2 usage, 3 incompatible charisma/function,
//! 4 I/O, 5 evaluation error.

pub mod args;
mod error;
pub mod export;
pub mod run;

pub use args::{parse_args, Figure, Format, JobSpec};
pub use error::CliError;
pub use run::{build_mesh, run, seams_path, RunOutcome};
