//! The textual project language and the canonical JSON document format.
//!
//! `.dfd` sources use a small declaration grammar:
//!
//! ```text
//! project     := diagram*
//! diagram     := "diagram" STRING kindclause "{" item* "}"
//! kindclause  := "context" | "decomposes" PROCESS_ID
//! item        := process | entity | store | flow
//! process     := "process" PROCESS_ID STRING desc?
//! entity      := "entity" STRING desc?
//! store       := "store" STRING desc?
//! flow        := "flow" STRING "from" endpoint "to" endpoint desc?
//! endpoint    := "process" PROCESS_ID | "entity" STRING | "store" STRING
//! desc        := "desc" STRING
//! ```
//!
//! Strings are double-quoted with backslash escapes for quote and backslash;
//! `#` starts a comment that runs to end of line; whitespace is
//! insignificant. Sources are UTF-8; a leading byte-order mark is stripped.

mod json;
mod lexer;
mod parser;

use std::fmt;

pub use json::{from_json, to_canonical_json};
pub use parser::parse_project;

/// A location in DSL source text. Lines and columns are 1-based and counted
/// in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, length: u32) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan { line, column, length }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A positioned parse failure, for DSL text and JSON documents alike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    /// Token descriptions that would have been accepted, when known.
    pub expected: Option<Vec<String>>,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
            expected: None,
        }
    }

    pub fn with_expected(span: SourceSpan, message: impl Into<String>, expected: Vec<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
            expected: Some(expected),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {})", expected.join(" | "))?;
        }
        Ok(())
    }
}
