use std::fmt::Write as _;

use super::lexer::{Cursor, Tok};
use super::{Diagnostic, ParseResult, Parsed, SyntaxError};
use crate::aso::{AsoPrefRule, AsoProgram, BoolComb, GenRule, Literal};

type PResult<T> = Result<T, SyntaxError>;

fn literal(c: &mut Cursor) -> PResult<Literal> {
    let strong = c.eat(&Tok::Minus);
    let (atom, _) = c.atom()?;
    Ok(Literal { atom, strong_neg: strong })
}

fn at_not(c: &Cursor) -> bool {
    c.at_ident("not") && matches!(c.peek_at(1), Tok::Ident(_) | Tok::Minus | Tok::LParen)
}

/// `lit, not lit, ...` up to the closing `.`.
fn body(c: &mut Cursor) -> PResult<(Vec<Literal>, Vec<Literal>)> {
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    if c.peek() == &Tok::Dot {
        return Ok((pos, neg));
    }
    loop {
        if at_not(c) {
            c.bump();
            neg.push(literal(c)?);
        } else {
            pos.push(literal(c)?);
        }
        if c.peek() == &Tok::Dot {
            return Ok((pos, neg));
        }
        c.expect(&Tok::Comma)?;
    }
}

fn comb_or(c: &mut Cursor) -> PResult<BoolComb> {
    let mut parts = vec![comb_and(c)?];
    while c.eat(&Tok::Bar) {
        parts.push(comb_and(c)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { BoolComb::Or(parts) })
}

fn comb_and(c: &mut Cursor) -> PResult<BoolComb> {
    let mut parts = vec![comb_primary(c)?];
    while c.eat(&Tok::Amp) {
        parts.push(comb_primary(c)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { BoolComb::And(parts) })
}

fn comb_primary(c: &mut Cursor) -> PResult<BoolComb> {
    if at_not(c) {
        let span = c.bump().span;
        if c.peek() == &Tok::LParen {
            return Err(SyntaxError::parse(Diagnostic::error(
                span.to(c.span()),
                "default negation may only precede a literal",
            )));
        }
        return Ok(BoolComb::NotLit(literal(c)?));
    }
    if c.eat(&Tok::LParen) {
        let inner = comb_or(c)?;
        c.expect(&Tok::RParen)?;
        return Ok(inner);
    }
    Ok(BoolComb::Lit(literal(c)?))
}

fn gen_rule(c: &mut Cursor) -> PResult<GenRule> {
    let head = if c.peek() == &Tok::If { None } else { Some(literal(c)?) };
    let (pos, neg) = if c.eat(&Tok::If) { body(c)? } else { (Vec::new(), Vec::new()) };
    c.expect(&Tok::Dot)?;
    Ok(GenRule { head, pos, neg })
}

fn pref_rule(c: &mut Cursor) -> PResult<AsoPrefRule> {
    let mut options = vec![comb_or(c)?];
    while c.eat(&Tok::Gt) {
        options.push(comb_or(c)?);
    }
    let (pos, neg) = if c.eat(&Tok::If) { body(c)? } else { (Vec::new(), Vec::new()) };
    c.expect(&Tok::Dot)?;
    Ok(AsoPrefRule::new(options, pos, neg).expect("at least one option was parsed"))
}

/// Parses an ASO program: a `#gen.` section of normal rules followed by a
/// `#pref.` section of preference rules `C1 > … > Ck :- body.`
pub fn parse_aso(text: &str) -> ParseResult<AsoProgram> {
    let mut c = Cursor::new(text)?;
    let mut out = AsoProgram::default();
    let mut section: Option<bool> = None;
    let mut warnings = Vec::new();
    while c.peek() != &Tok::Eof {
        if let Tok::Directive(name) = c.peek().clone() {
            let span = c.bump().span;
            section = match name.as_str() {
                "gen" => Some(false),
                "pref" => Some(true),
                _ => {
                    return Err(SyntaxError::parse(Diagnostic::error(span, format!("unknown section `#{name}`"))))
                }
            };
            c.expect(&Tok::Dot)?;
            continue;
        }
        match section {
            None => return Err(c.error("`#gen.` or `#pref.`")),
            Some(false) => {
                let span = c.span();
                let rule = gen_rule(&mut c)?;
                if let Some(l) = rule.literals().find(|l| l.strong_neg) {
                    warnings.push(Diagnostic::warning(
                        span,
                        format!("strong negation `{l}` in a generating rule cannot be translated"),
                    ));
                }
                out.gen.push(rule);
            }
            Some(true) => out.pref.push(pref_rule(&mut c)?),
        }
    }
    Ok(Parsed { value: out, warnings })
}

fn write_comb(out: &mut String, comb: &BoolComb) {
    let nested = |out: &mut String, x: &BoolComb| {
        if matches!(x, BoolComb::And(_) | BoolComb::Or(_)) {
            out.push('(');
            write_comb(out, x);
            out.push(')');
        } else {
            write_comb(out, x);
        }
    };
    match comb {
        BoolComb::Lit(l) => {
            let _ = write!(out, "{l}");
        }
        BoolComb::NotLit(l) => {
            let _ = write!(out, "not {l}");
        }
        BoolComb::And(xs) | BoolComb::Or(xs) => {
            let sep = if matches!(comb, BoolComb::And(_)) { " & " } else { " | " };
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                nested(out, x);
            }
        }
    }
}

fn write_body(out: &mut String, pos: &[Literal], neg: &[Literal]) {
    let items = pos.iter().map(|l| l.to_string()).chain(neg.iter().map(|l| format!("not {l}")));
    out.push_str(&items.collect::<Vec<_>>().join(", "));
}

/// Prints an ASO program in the form [`parse_aso`] reads.
pub fn write_aso(a: &AsoProgram) -> String {
    let mut out = String::from("#gen.\n");
    for r in &a.gen {
        if let Some(h) = &r.head {
            let _ = write!(out, "{h}");
        }
        if r.head.is_none() || !r.pos.is_empty() || !r.neg.is_empty() {
            out.push_str(if r.head.is_some() { " :- " } else { ":- " });
            write_body(&mut out, &r.pos, &r.neg);
        }
        out.push_str(".\n");
    }
    out.push_str("#pref.\n");
    for r in &a.pref {
        for (i, o) in r.options().iter().enumerate() {
            if i > 0 {
                out.push_str(" > ");
            }
            write_comb(&mut out, o);
        }
        if !r.body_pos().is_empty() || !r.body_neg().is_empty() {
            out.push_str(" :- ");
            write_body(&mut out, r.body_pos(), r.body_neg());
        }
        out.push_str(".\n");
    }
    out
}
