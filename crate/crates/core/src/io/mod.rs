//! Text formats: the algebra file grammar, partition and term syntax, DOT
//! output for congruence lattices, and the JSON analysis report.

mod dot;
mod format;
mod report;
mod syntax;

pub use dot::emit_dot;
pub use format::{parse_algebra, parse_draft, serialize_algebra};
pub use report::{emit_json, AnalysisReport, LatticeReport, Verdicts, Witnesses, REPORT_VERSION};
pub use syntax::{parse_partition, parse_signature, parse_term};
