//! Polygon files, run records and SVG output.

pub mod polygon_file;
pub mod record;
pub mod svg;

pub use polygon_file::{load_polygon, parse_polygon, polygon_to_json, save_polygon};
pub use record::{sha256_hex, CommandInfo, CommandOutput, InputInfo, RunRecord};
pub use svg::{render_svg, Overlays};
