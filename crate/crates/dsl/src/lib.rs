//! The `.ivdl` specification language: parser, printer, elaborator and
//! report generation.

pub mod ast;
pub mod elab;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod report;
pub mod trace;

pub use elab::{compile_program, elaborate, Check, CheckKind, Model};
pub use error::{DslError, ErrorKind, Pos};
pub use parser::parse_spec;
pub use report::{run_model, Report};

/// Parses and elaborates `text`.
pub fn load(text: &str) -> Result<Model, DslError> {
    elaborate(&parse_spec(text)?)
}
