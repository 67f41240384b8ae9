//! The DSL and the command-line front end.
//!
//! Exit codes: 0 member or true, 1 non-member or false, 2 unknown (search
//! budget or size guard), 3 input error.

pub mod dsl;
mod run;

pub use run::{main_with_args, read_graph, resolve_expression, run, CatalogAction, Command, ExprGraph, RunConfig};
pub use run::{EXIT_FALSE, EXIT_INPUT, EXIT_TRUE, EXIT_UNKNOWN};
