//! JSON documents and SVG drawings of patches.

mod json;
mod svg;

pub use json::{
    parse, serialize, Config, PatchDocument, PentagonFields, SchemaError, TileRecord,
    SCHEMA_VERSION,
};
pub use svg::{class_color, render_svg, ColorBy, SvgOptions};
