//! Command-line front end: operator sources, dimension budgets, the verification tasks and
//! their JSON reports.

pub mod budget;
pub mod commands;
pub mod error;
pub mod report;
pub mod source;

pub use budget::Budget;
pub use commands::{run, Algebra, Task};
pub use error::CliError;
pub use report::VerificationReport;
pub use source::{builtin, Operator, RMatrixFile};
