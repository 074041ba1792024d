//! Source language: lexing, parsing, printing, desugaring and validation.

mod ast;
mod desugar;
mod lexer;
mod parser;
mod pretty;
mod validate;

use alloc::string::String;
use core::fmt;

pub use ast::*;
pub use desugar::{desugar, EMPTY_RECORD};
pub use lexer::Pos;
pub use parser::parse_program;
pub use pretty::pretty_print;
pub use validate::{
    validate_restrictions, CClause, CDefinition, CExpr, CGroup, CPattern, CheckedProgram, Violation, BUILTIN_TYPES,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}
