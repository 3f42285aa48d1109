//! Instance files and seeded generators.

mod format;
mod generate;

pub use format::{
    parse_graph, parse_patch, parse_solution, write_graph, write_patch, write_solution,
};
pub use generate::{gen_graph, gen_patch, EdgeTarget, GeneratorConfig, PatchConfig};
