//! Text formats for PSC programs, ASO programs and PP formulas.
//!
//! All three share one lexer: `%` starts a comment that runs to the end of
//! the line, and whitespace is insignificant. Every parser returns the
//! parsed value with any warnings, or a [`SyntaxError`] whose diagnostics
//! carry spans into the input. The matching serializers print a canonical
//! form that parses back to the same value.

mod aso_text;
mod lexer;
mod pp_text;
mod psc_text;

use std::fmt;

pub use aso_text::{parse_aso, write_aso};
pub use pp_text::{parse_atom_set, parse_pp, write_pp};
pub use psc_text::{parse_psc, write_psc};

/// A region of the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SourceSpan {
    /// Byte offsets, `start..end`.
    pub start: usize,
    pub end: usize,
    /// 1-based position of `start`.
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    /// The smallest span covering both.
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        if other.end <= self.end {
            return self;
        }
        SourceSpan { end: other.end, ..self }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub span: SourceSpan,
}

impl Diagnostic {
    pub fn error(span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, message: message.into(), span }
    }

    pub fn warning(span: SourceSpan, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, message: message.into(), span }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {level}: {}", self.span, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The text does not follow the grammar.
    Parse,
    /// The text parses but describes an ill-formed object.
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub kind: ErrorKind,
    pub diagnostics: Vec<Diagnostic>,
}

impl SyntaxError {
    pub(crate) fn parse(d: Diagnostic) -> Self {
        SyntaxError { kind: ErrorKind::Parse, diagnostics: vec![d] }
    }

    pub(crate) fn semantic(d: Diagnostic) -> Self {
        SyntaxError { kind: ErrorKind::Semantic, diagnostics: vec![d] }
    }

    /// The first diagnostic's span.
    pub fn span(&self) -> SourceSpan {
        self.diagnostics.first().map(|d| d.span).unwrap_or_default()
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for SyntaxError {}

/// A parsed value and the warnings produced while reading it.
#[derive(Clone, Debug)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<Diagnostic>,
}

pub type ParseResult<T> = std::result::Result<Parsed<T>, SyntaxError>;
