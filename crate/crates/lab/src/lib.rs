//! Command-line laboratory for Landau-level Toeplitz operators.
//!
//! [`symbol`] parses torus symbols, [`config`] holds the flat experiment schema, [`suite`] runs
//! the exact identities of the model, and [`report`] serialises torus sweeps.

pub mod config;
pub mod report;
pub mod run;
pub mod suite;
pub mod symbol;

pub use config::{ConfigError, ExperimentConfig, Format, Mode};
pub use report::{emit_report, Document, Report};
pub use run::{run, RunError};
pub use symbol::{parse_symbol, ParseError, SymbolExpr};
