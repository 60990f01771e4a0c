use super::lexer::{Cursor, Tok};
use super::psc_text::atom_set;
use super::{Diagnostic, ParseResult, Parsed, SyntaxError};
use crate::atoms::AtomSet;
use crate::pp::PrefFormula;

type PResult<T> = Result<T, SyntaxError>;

// Precedence from loosest to tightest: `<|`, `|`, `&`, `!`.

fn chain(c: &mut Cursor) -> PResult<PrefFormula> {
    let mut parts = vec![disjunction(c)?];
    while c.eat(&Tok::LexOp) {
        parts.push(disjunction(c)?);
    }
    Ok(PrefFormula::Lex(parts).normalized_top())
}

fn disjunction(c: &mut Cursor) -> PResult<PrefFormula> {
    let mut left = conjunction(c)?;
    while c.eat(&Tok::Bar) {
        left = PrefFormula::or(left, conjunction(c)?);
    }
    Ok(left)
}

fn conjunction(c: &mut Cursor) -> PResult<PrefFormula> {
    let mut left = unary(c)?;
    while c.eat(&Tok::Amp) {
        left = PrefFormula::and(left, unary(c)?);
    }
    Ok(left)
}

fn unary(c: &mut Cursor) -> PResult<PrefFormula> {
    if c.eat(&Tok::Bang) {
        return Ok(PrefFormula::not(unary(c)?));
    }
    if c.eat(&Tok::LParen) {
        let inner = chain(c)?;
        c.expect(&Tok::RParen)?;
        return Ok(inner);
    }
    Ok(PrefFormula::Basic(c.atom()?.0))
}

impl PrefFormula {
    /// Collapses a freshly parsed chain without touching its children.
    fn normalized_top(self) -> PrefFormula {
        match self {
            PrefFormula::Lex(mut xs) if xs.len() == 1 => xs.pop().unwrap(),
            PrefFormula::Lex(xs) if xs.iter().all(|x| matches!(x, PrefFormula::Basic(_))) => {
                PrefFormula::Atomic(
                    xs.into_iter()
                        .map(|x| match x {
                            PrefFormula::Basic(d) => d,
                            _ => unreachable!(),
                        })
                        .collect(),
                )
            }
            other => other,
        }
    }
}

/// Parses one PP formula; `d1 <| d2` is atomic when every element is a
/// desire and lexicographic otherwise. A trailing `.` is allowed.
pub fn parse_pp(text: &str) -> ParseResult<PrefFormula> {
    let mut c = Cursor::new(text)?;
    let f = chain(&mut c)?;
    c.eat(&Tok::Dot);
    if c.peek() != &Tok::Eof {
        return Err(c.error("end of formula"));
    }
    Ok(Parsed { value: f, warnings: Vec::new() })
}

/// Parses a set literal `{a, b}`.
pub fn parse_atom_set(text: &str) -> Result<AtomSet, SyntaxError> {
    let mut c = Cursor::new(text)?;
    let (set, _) = atom_set(&mut c)?;
    if c.peek() != &Tok::Eof {
        return Err(SyntaxError::parse(Diagnostic::error(c.span(), "trailing input after set")));
    }
    Ok(set)
}

/// Prints a formula in the form [`parse_pp`] reads.
pub fn write_pp(f: &PrefFormula) -> String {
    f.to_string()
}
