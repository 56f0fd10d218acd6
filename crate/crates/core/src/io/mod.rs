//! Text and JSON formats, and the existence-table report.

mod scheme_file;
mod spec;
mod tables;

pub use scheme_file::{import_matrix, read_scheme, read_table, write_scheme, write_table};
pub use spec::{build, translation_action, ConstructionSpec};
pub use tables::{reproduce_tables, Mark, RowResult, TableReport, TableRow};
