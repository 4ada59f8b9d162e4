//! Report-producing commands behind the `origami` binary.

pub mod commands;
pub mod families;
pub mod properties;
pub mod report;

use std::path::Path;

use anyhow::Context;
use origami_kz::Origami;

pub use commands::Caps;
pub use report::{Check, Record, Report, Status, Table};

/// Reads an origami from a file in the `h=`/`v=` text format, or from
/// standard input when the path is `-`.
pub fn read_origami(path: &Path) -> anyhow::Result<Origami> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading standard input")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    text.parse().with_context(|| format!("parsing {}", path.display()))
}
