use super::{Diagnostic, SourceSpan, SyntaxError};
use crate::atoms::Atom;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// A name, possibly with an integer argument as in `d(3)`.
    Ident(String),
    /// An unsigned numeric literal: `12`, `0.5`, `3/4`.
    Number(String),
    /// `#name`.
    Directive(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Dot,
    DotDot,
    If,
    Lt,
    Le,
    LexOp,
    Eq,
    Gt,
    Amp,
    Bar,
    Bang,
    Minus,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Directive(s) => format!("`#{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::If => ":-",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::LexOp => "<|",
            Tok::Eq => "=",
            Tok::Gt => ">",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Bang => "!",
            Tok::Minus => "-",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    let span = |start: usize, end: usize, line: usize, line_start: usize| SourceSpan {
        start,
        end,
        line,
        column: text[line_start..start].chars().count() + 1,
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'%' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = bytes.get(i + 1).copied();
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            // An integer argument directly attached: `d(12)`.
            if bytes.get(i) == Some(&b'(') {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j > i + 1 && bytes.get(j) == Some(&b')') {
                    i = j + 1;
                }
            }
            Tok::Ident(text[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            for sep in *b"./" {
                if bytes.get(i) == Some(&sep) && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            Tok::Number(text[start..i].to_string())
        } else if c == b'#' {
            i += 1;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Directive(text[start + 1..i].to_string())
        } else {
            let (tok, len) = match (c, two) {
                (b':', Some(b'-')) => (Tok::If, 2),
                (b'.', Some(b'.')) => (Tok::DotDot, 2),
                (b'<', Some(b'=')) => (Tok::Le, 2),
                (b'<', Some(b'|')) => (Tok::LexOp, 2),
                (b'{', _) => (Tok::LBrace, 1),
                (b'}', _) => (Tok::RBrace, 1),
                (b'(', _) => (Tok::LParen, 1),
                (b')', _) => (Tok::RParen, 1),
                (b',', _) => (Tok::Comma, 1),
                (b'.', _) => (Tok::Dot, 1),
                (b'<', _) => (Tok::Lt, 1),
                (b'=', _) => (Tok::Eq, 1),
                (b'>', _) => (Tok::Gt, 1),
                (b'&', _) => (Tok::Amp, 1),
                (b'|', _) => (Tok::Bar, 1),
                (b'!', _) => (Tok::Bang, 1),
                (b'-', _) => (Tok::Minus, 1),
                _ => {
                    let ch = text[i..].chars().next().unwrap();
                    let sp = span(i, i + ch.len_utf8(), line, line_start);
                    return Err(SyntaxError::parse(Diagnostic::error(sp, format!("unexpected character `{ch}`"))));
                }
            };
            i += len;
            tok
        };
        out.push(Token { tok, span: span(start, i, line, line_start) });
    }
    out.push(Token { tok: Tok::Eof, span: span(text.len(), text.len(), line, line_start) });
    Ok(out)
}

/// A cursor over tokens with the helpers every parser needs.
pub(crate) struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self, SyntaxError> {
        Ok(Cursor { tokens: tokenize(text)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    pub fn span(&self) -> SourceSpan {
        self.tokens[self.pos].span
    }

    /// Span of the most recently consumed token.
    pub fn last_span(&self) -> SourceSpan {
        self.tokens[self.pos.saturating_sub(1)].span
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn at_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    pub fn error(&self, expected: &str) -> SyntaxError {
        SyntaxError::parse(Diagnostic::error(
            self.span(),
            format!("expected {expected}, found {}", self.peek().describe()),
        ))
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<SourceSpan, SyntaxError> {
        if self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    pub fn atom(&mut self) -> Result<(Atom, SourceSpan), SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => match Atom::new(&name) {
                Some(a) => Ok((a, self.bump().span)),
                None => Err(SyntaxError::parse(Diagnostic::error(
                    self.span(),
                    format!("`{name}` is not a valid atom name"),
                ))),
            },
            _ => Err(self.error("an atom")),
        }
    }
}
