//! Java-subset syntax trees: parsing, printing, traversal, and call graphs.

mod callgraph;
pub(crate) mod lexer;
mod node;
mod parser;
mod printer;
mod visit;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use callgraph::{build_call_graph, reachable_from_main, CallGraph, CallTarget, MethodId};
pub use node::{AstNode, Descendants, NodeKind, Span};
pub use printer::print;
pub use visit::{visit, FnVisitor, Visitor};

use crate::class::ComplexityClass;

/// One program of a corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceUnit {
    pub id: String,
    pub text: String,
    pub label: Option<ComplexityClass>,
}

impl SourceUnit {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        SourceUnit {
            id: id.into(),
            text: text.into(),
            label: None,
        }
    }

    pub fn labeled(id: impl Into<String>, text: impl Into<String>, label: ComplexityClass) -> Self {
        SourceUnit {
            id: id.into(),
            text: text.into(),
            label: Some(label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl ParseError {
    pub fn new(line: u32, column: u32, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

pub fn parse(source: &SourceUnit) -> Result<AstNode, ParseError> {
    parse_str(&source.text)
}

pub fn parse_str(text: &str) -> Result<AstNode, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::new(1, 1, "empty source"));
    }
    parser::parse_compilation_unit(text)
}
