//! Target-independent layout: indented line documents, precedence-driven
//! parenthesisation, and blank-line separation of blocks.

use crate::ir::{Assoc, Body, Statement};

pub const INDENT: &str = "    ";

/// A vertical sequence of lines. Empty strings are blank lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Doc {
    lines: Vec<String>,
}

impl Doc {
    pub fn empty() -> Doc {
        Doc::default()
    }

    /// One line per `\n`-separated segment of `s`.
    pub fn text(s: impl AsRef<str>) -> Doc {
        Doc {
            lines: s.as_ref().split('\n').map(str::to_string).collect(),
        }
    }

    pub fn blank() -> Doc {
        Doc {
            lines: vec![String::new()],
        }
    }

    pub fn vcat(docs: impl IntoIterator<Item = Doc>) -> Doc {
        let mut out = Doc::empty();
        for d in docs {
            out.lines.extend(d.lines);
        }
        out
    }

    pub fn append(mut self, other: Doc) -> Doc {
        self.lines.extend(other.lines);
        self
    }

    pub fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn extend(&mut self, other: Doc) {
        self.lines.extend(other.lines);
    }

    /// Indents every nonempty line by one level.
    pub fn indent(self) -> Doc {
        Doc {
            lines: self
                .lines
                .into_iter()
                .map(|l| if l.is_empty() { l } else { format!("{INDENT}{l}") })
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    /// Joins the lines with `\n`; no trailing newline.
    pub fn render(&self) -> String {
        self.lines.join("\n")
    }
}

/// Joins the nonempty documents with exactly one blank line between them.
pub fn blank_separated(docs: impl IntoIterator<Item = Doc>) -> Doc {
    let mut out = Doc::empty();
    for d in docs.into_iter().filter(|d| !d.is_empty()) {
        if !out.is_empty() {
            out.push("");
        }
        out.extend(d);
    }
    out
}

/// Where a child sits relative to its parent operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Operand,
}

/// True when a child of precedence `child` must be parenthesised under a
/// parent of precedence `parent`: it binds more loosely, or equally on the
/// side where the parent's associativity would regroup it.
pub fn needs_parens(parent: u8, assoc: Assoc, side: Side, child: u8) -> bool {
    child < parent
        || (child == parent
            && match side {
                Side::Left => assoc == Assoc::Right,
                Side::Right => assoc == Assoc::Left,
                Side::Operand => false,
            })
}

pub fn parenthesize_child(parent: u8, assoc: Assoc, side: Side, child: u8, child_text: String) -> String {
    if needs_parens(parent, assoc, side, child) {
        format!("({child_text})")
    } else {
        child_text
    }
}

/// Renders each block with `render_stmt` and separates nonempty blocks by
/// one blank line. Statements may render to nothing.
pub fn render_body<E>(body: &Body, mut render_stmt: impl FnMut(&Statement) -> Result<Doc, E>) -> Result<Doc, E> {
    let mut blocks = Vec::with_capacity(body.0.len());
    for b in &body.0 {
        let mut doc = Doc::empty();
        for s in &b.0 {
            doc.extend(render_stmt(s)?);
        }
        blocks.push(doc);
    }
    Ok(blank_separated(blocks))
}

/// Ensures text ends with exactly one newline.
pub fn finish_file(text: &str) -> String {
    let mut s = text.trim_end_matches('\n').to_string();
    s.push('\n');
    s
}
