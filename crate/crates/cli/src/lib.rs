//! CLI surface over the core toolkit: region-file ingestion, parallel
//! estimator drivers, and JSON/CSV artifact emission.

pub mod drivers;
pub mod output;
pub mod run;
pub mod schema;
