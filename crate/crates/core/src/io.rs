//! Plain-text group files.
//!
//! ```text
//! # comments run to end of line
//! degree: 6
//! (1 2 3 4 5 6)
//! (2 6)(3 5)
//! ---
//! (1 3 5)(2 4 6)
//! ```
//!
//! A file holds one or more groups separated by `---` lines. The first group
//! must open with a `degree:` line; later groups inherit it unless they give
//! their own. Each other nonempty line is one generator in cycle notation.
//! A group with no generator lines is trivial.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

const SEPARATOR: &str = "---";

fn file_err(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::GroupFile {
        line,
        column,
        msg: msg.into(),
    }
}

/// Parses every group in `text`.
pub fn parse_group_file(text: &str) -> Result<Vec<PermGroup>> {
    let mut groups = Vec::new();
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Permutation> = Vec::new();
    let mut section_has_degree = false;
    let mut last_line = 0;

    let mut finish = |degree: Option<usize>, gens: &mut Vec<Permutation>, line: usize| -> Result<()> {
        let d = degree.ok_or_else(|| file_err(line, 1, "missing `degree: n` line"))?;
        groups.push(PermGroup::new(d, std::mem::take(gens))?);
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = content.len() - content.trim_start().len() + 1;
        if trimmed == SEPARATOR {
            finish(degree, &mut gens, line)?;
            section_has_degree = false;
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("degree:") {
            if section_has_degree || !gens.is_empty() {
                return Err(file_err(line, column, "`degree:` must come before the generators of a group"));
            }
            let value = rest.trim();
            let d: usize = value.parse().map_err(|_| {
                let at = column + trimmed.len() - rest.trim_start().len();
                file_err(line, at, format!("expected a positive integer degree, found {value:?}"))
            })?;
            if d == 0 {
                return Err(file_err(line, column, "degree must be at least 1"));
            }
            degree = Some(d);
            section_has_degree = true;
            continue;
        }
        let d = degree.ok_or_else(|| file_err(line, column, "generator before any `degree: n` line"))?;
        let g = Permutation::parse_cycles(trimmed, d).map_err(|e| match e {
            Error::Parse { pos, msg } => file_err(line, column + pos, msg),
            other => other,
        })?;
        gens.push(g);
    }
    finish(degree, &mut gens, last_line.max(1))?;
    Ok(groups)
}

/// Parses a file that must hold exactly `count` groups.
pub fn parse_group_file_n(text: &str, count: usize) -> Result<Vec<PermGroup>> {
    let groups = parse_group_file(text)?;
    if groups.len() != count {
        return Err(file_err(
            text.lines().count().max(1),
            1,
            format!("expected {count} group(s) separated by `---`, found {}", groups.len()),
        ));
    }
    Ok(groups)
}

/// Canonical text for `groups`: one `degree:` line per group, generators in
/// their stored order. Parsing the output gives back the same generators.
pub fn write_group_file(groups: &[&PermGroup]) -> String {
    let mut out = String::new();
    for (k, g) in groups.iter().enumerate() {
        if k > 0 {
            out.push_str(SEPARATOR);
            out.push('\n');
        }
        out.push_str(&format!("degree: {}\n", g.degree()));
        for x in g.generators() {
            out.push_str(&x.to_string());
            out.push('\n');
        }
    }
    out
}
