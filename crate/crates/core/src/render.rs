//! Plain-text trees of seed tables.

use std::fmt::Write;

use crate::bitstream::Word;
use crate::error::{Error, Result};
use crate::semigroup::SemigroupState;
use crate::tree::children;

/// One line per node, indented two spaces per level: the seed table with rows
/// separated by `|`, then the element list.
///
/// ```
/// use sgtree::{render::render_tree, SemigroupState};
///
/// let text = render_tree(&SemigroupState::<u128>::natural(), 2).unwrap();
/// assert_eq!(text, "[] {0,…}\n  [11] {0,2,…}\n    [111] {0,3,…}\n    [01|11] {0,2,4,…}\n");
/// ```
pub fn render_tree<W: Word>(root: &SemigroupState<W>, depth: u32) -> Result<String> {
    if !(1..=3).contains(&depth) {
        return Err(Error::InvalidParameters(format!("render depth must be 1, 2 or 3, got {depth}")));
    }
    let mut out = String::new();
    render_node(root, 0, depth, &mut out)?;
    Ok(out)
}

fn render_node<W: Word>(node: &SemigroupState<W>, level: u32, depth: u32, out: &mut String) -> Result<()> {
    let indent = "  ".repeat(level as usize);
    writeln!(out, "{indent}[{}] {node}", node.seed_table()).expect("writing to a String");
    if level < depth {
        for child in children(node)? {
            render_node(&child, level + 1, depth, out)?;
        }
    }
    Ok(())
}
