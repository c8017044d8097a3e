//! Mesh sampling, Wavefront OBJ / CSV writers, argument micro-format
//! parsers and the report plumbing behind the `slope` binary.

pub mod mesh;
pub mod obj;
pub mod parse;
pub mod report;
pub mod trace;

pub use mesh::{sample_mesh, Mesh, MeshError};
pub use obj::write_obj;
pub use parse::{parse_curve, parse_grid, parse_range, parse_theta};
pub use report::{report_csv, report_lines, thresholds, Thresholds};
