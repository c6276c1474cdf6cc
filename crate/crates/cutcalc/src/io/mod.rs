//! Plain-text file formats.
//!
//! * [`cut`] — `.cut` files holding a single named diagram;
//! * [`cmov`] — `.cmov` files holding a movie certificate together with
//!   the names of its boundary diagrams.
//!
//! Both formats are line-oriented: `#` starts a comment, blank lines are
//! skipped, and files are written with `\n` endings in a canonical order
//! so that parse ∘ write is the identity.

pub mod cmov;
pub mod cut;

pub use cmov::{parse_cmov, write_cmov, CmovFile};
pub use cut::{parse_cut, write_cut, CutFile};

use std::fmt;

/// A parse failure, tagged with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Iterate over the meaningful lines of a file: trimmed, comments and
/// blanks removed, paired with their original 1-based line numbers.
fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Split a `i.j` region reference.
fn parse_region_ref(line: usize, tok: &str) -> Result<crate::diagram::RegionRef, ParseError> {
    let (a, b) = tok.split_once('.').ok_or_else(|| {
        ParseError::new(
            line,
            format!("expected a region reference `i.j`, got `{tok}`"),
        )
    })?;
    let component = a
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("bad component index `{a}`")))?;
    let region = b
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("bad region index `{b}`")))?;
    if component == 0 {
        return Err(ParseError::new(line, "component indices are 1-based"));
    }
    Ok(crate::diagram::RegionRef::new(component, region))
}

fn parse_index(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    let v = tok
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("bad {what} `{tok}`")))?;
    if v == 0 {
        return Err(ParseError::new(line, format!("{what} is 1-based")));
    }
    Ok(v)
}
