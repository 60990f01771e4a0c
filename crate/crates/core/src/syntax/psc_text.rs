use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::lexer::{Cursor, Tok};
use super::{Diagnostic, ParseResult, Parsed, SourceSpan, SyntaxError};
use crate::atoms::{Atom, AtomSet};
use crate::error::Error;
use crate::model::{
    Family, Head, Measure, MeasureAtom, Preorder, PreorderAtom, Program, Relation, Rule, ScAtom,
};
use crate::scalar::{Extended, Scalar};

/// Widest family enumerated when checking that weights cover it.
const COVERAGE_WIDTH: usize = 16;

type PResult<T> = Result<T, SyntaxError>;

fn semantic(span: SourceSpan, e: impl std::fmt::Display) -> SyntaxError {
    SyntaxError::semantic(Diagnostic::error(span, e.to_string()))
}

pub(super) fn atom_set(c: &mut Cursor) -> PResult<(AtomSet, SourceSpan)> {
    let start = c.expect(&Tok::LBrace)?;
    let mut set = AtomSet::new();
    if !c.eat(&Tok::RBrace) {
        loop {
            set.insert(c.atom()?.0);
            if c.eat(&Tok::RBrace) {
                break;
            }
            c.expect(&Tok::Comma)?;
        }
    }
    Ok((set, start.to(c.last_span())))
}

fn real<S: Scalar>(c: &mut Cursor) -> PResult<(Extended<S>, SourceSpan)> {
    let start = c.span();
    let neg = c.eat(&Tok::Minus);
    let body = match c.peek().clone() {
        Tok::Number(n) => n,
        Tok::Ident(s) if s == "inf" => s,
        _ => return Err(c.error("a number")),
    };
    c.bump();
    let text = if neg { format!("-{body}") } else { body };
    let span = start.to(c.last_span());
    Extended::parse(&text)
        .map(|v| (v, span))
        .ok_or_else(|| SyntaxError::parse(Diagnostic::error(span, format!("`{text}` is not a valid number"))))
}

fn finite<S: Scalar>(c: &mut Cursor) -> PResult<S> {
    match real::<S>(c)? {
        (Extended::Finite(v), _) => Ok(v),
        (_, span) => Err(semantic(span, "infinite values are only allowed in measures")),
    }
}

fn count(c: &mut Cursor) -> PResult<usize> {
    match c.peek().clone() {
        Tok::Number(n) => {
            let span = c.bump().span;
            n.parse().map_err(|_| SyntaxError::parse(Diagnostic::error(span, "expected a cardinality")))
        }
        _ => Err(c.error("a cardinality")),
    }
}

struct PscParser<S> {
    warnings: Vec<Diagnostic>,
    _scalar: std::marker::PhantomData<S>,
}

impl<S: Scalar> PscParser<S> {
    fn family(&mut self, c: &mut Cursor) -> PResult<Family> {
        if c.at_ident("even") {
            c.bump();
            return Ok(Family::Even);
        }
        if c.at_ident("any") {
            c.bump();
            return Ok(Family::Any);
        }
        if c.at_ident("card") {
            c.bump();
            c.expect(&Tok::LParen)?;
            let lo = count(c)?;
            c.expect(&Tok::DotDot)?;
            let hi = count(c)?;
            c.expect(&Tok::RParen)?;
            return Ok(Family::Card { lo, hi });
        }
        if c.peek() != &Tok::LBrace {
            return Err(c.error("a family (`{...}`, `card(..)`, `even` or `any`)"));
        }
        c.bump();
        let mut members = BTreeSet::new();
        if !c.eat(&Tok::RBrace) {
            loop {
                let (set, span) = atom_set(c)?;
                if !members.insert(set.clone()) {
                    self.warnings.push(Diagnostic::warning(span, format!("{set} is listed twice")));
                }
                if c.eat(&Tok::RBrace) {
                    break;
                }
                c.expect(&Tok::Comma)?;
            }
        }
        Ok(Family::Extensional(members))
    }

    /// `base , family` after the opening parenthesis.
    fn sc_parts(&mut self, c: &mut Cursor, start: SourceSpan) -> PResult<ScAtom> {
        let (base, _) = atom_set(c)?;
        c.expect(&Tok::Comma)?;
        let family = self.family(c)?;
        ScAtom::new(base, family).map_err(|e| semantic(start.to(c.last_span()), e))
    }

    fn body_atom(&mut self, c: &mut Cursor) -> PResult<ScAtom> {
        let start = c.span();
        if c.at_ident("sc") && c.peek_at(1) == &Tok::LParen {
            c.bump();
            c.bump();
            let a = self.sc_parts(c, start)?;
            c.expect(&Tok::RParen)?;
            return Ok(a);
        }
        if c.at_ident("not") && matches!(c.peek_at(1), Tok::Ident(_)) {
            c.bump();
            return Ok(crate::model::literal_to_sc(&c.atom()?.0, true));
        }
        Ok(crate::model::literal_to_sc(&c.atom()?.0, false))
    }

    /// Entries `set = value` and an optional `default = value`.
    fn weight_map<T>(
        &mut self,
        c: &mut Cursor,
        mut value: impl FnMut(&mut Cursor) -> PResult<T>,
    ) -> PResult<(BTreeMap<AtomSet, T>, Option<T>)> {
        let mut weights = BTreeMap::new();
        let mut default = None;
        if c.peek() == &Tok::RParen {
            return Ok((weights, default));
        }
        loop {
            if c.at_ident("default") {
                let span = c.bump().span;
                c.expect(&Tok::Eq)?;
                if default.replace(value(c)?).is_some() {
                    return Err(semantic(span, "`default` given twice"));
                }
            } else {
                let (set, span) = atom_set(c)?;
                c.expect(&Tok::Eq)?;
                if weights.insert(set.clone(), value(c)?).is_some() {
                    return Err(semantic(span, format!("{set} is weighted twice")));
                }
            }
            if c.peek() == &Tok::RParen {
                return Ok((weights, default));
            }
            c.expect(&Tok::Comma)?;
        }
    }

    fn set_pairs(&mut self, c: &mut Cursor) -> PResult<Vec<(AtomSet, AtomSet)>> {
        let mut pairs = Vec::new();
        if c.peek() == &Tok::RParen {
            return Ok(pairs);
        }
        loop {
            let (a, _) = atom_set(c)?;
            c.expect(&Tok::Le)?;
            let (b, _) = atom_set(c)?;
            pairs.push((a, b));
            if c.peek() == &Tok::RParen {
                return Ok(pairs);
            }
            c.expect(&Tok::Comma)?;
        }
    }

    fn order(&mut self, c: &mut Cursor) -> PResult<Preorder<S>> {
        let Tok::Ident(kind) = c.peek().clone() else {
            return Err(c.error("an order (`chain`, `pairs`, `rank` or `relation`)"));
        };
        let span = c.span();
        c.bump();
        c.expect(&Tok::LParen)?;
        let order = match kind.as_str() {
            "chain" => {
                let mut sets = Vec::new();
                if c.peek() != &Tok::RParen {
                    sets.push(atom_set(c)?.0);
                    while c.eat(&Tok::Lt) {
                        sets.push(atom_set(c)?.0);
                    }
                }
                Preorder::chain(sets)
            }
            "pairs" => Preorder::pairs(self.set_pairs(c)?),
            "relation" => Preorder::Relation(Relation::from_pairs(self.set_pairs(c)?)),
            "rank" => {
                let (weights, default) = self.weight_map(c, finite::<S>)?;
                Preorder::rank(weights, default)
            }
            other => {
                return Err(SyntaxError::parse(Diagnostic::error(span, format!("unknown order `{other}`"))))
            }
        };
        c.expect(&Tok::RParen)?;
        Ok(order)
    }

    fn measure(&mut self, c: &mut Cursor) -> PResult<Measure<S>> {
        let Tok::Ident(kind) = c.peek().clone() else {
            return Err(c.error("a measure (`weights`, `indicator` or `linear`)"));
        };
        let span = c.span();
        c.bump();
        c.expect(&Tok::LParen)?;
        let measure = match kind.as_str() {
            "weights" => {
                let (weights, default) = self.weight_map(c, |c| real::<S>(c).map(|r| r.0))?;
                Measure::Weights { weights, default }
            }
            "indicator" => {
                let (pivot, _) = c.atom()?;
                c.expect(&Tok::Comma)?;
                let (if_in, _) = real::<S>(c)?;
                c.expect(&Tok::Comma)?;
                let (if_out, _) = real::<S>(c)?;
                Measure::Indicator { pivot, if_in, if_out }
            }
            "linear" => {
                let mut weights = BTreeMap::new();
                let mut offset = S::zero();
                while c.peek() != &Tok::RParen {
                    if c.at_ident("offset") && c.peek_at(1) == &Tok::Eq {
                        c.bump();
                        c.bump();
                        offset = finite::<S>(c)?;
                    } else {
                        let (a, span) = c.atom()?;
                        c.expect(&Tok::Eq)?;
                        if weights.insert(a.clone(), finite::<S>(c)?).is_some() {
                            return Err(semantic(span, format!("`{a}` is weighted twice")));
                        }
                    }
                    if c.peek() != &Tok::RParen {
                        c.expect(&Tok::Comma)?;
                    }
                }
                Measure::Linear { weights, offset }
            }
            other => {
                return Err(SyntaxError::parse(Diagnostic::error(span, format!("unknown measure `{other}`"))))
            }
        };
        c.expect(&Tok::RParen)?;
        Ok(measure)
    }

    fn check_coverage(&mut self, sc: &ScAtom, listed: &dyn Fn(&AtomSet) -> bool, span: SourceSpan) {
        if let Ok(members) = sc.members(COVERAGE_WIDTH) {
            if let Some(missing) = members.iter().find(|m| !listed(m)) {
                self.warnings.push(Diagnostic::warning(
                    span,
                    format!("no weight for {missing} and no default; comparing it will fail"),
                ));
            }
        }
    }

    fn head(&mut self, c: &mut Cursor) -> PResult<Head<S>> {
        let start = c.span();
        if c.at_ident("pref") && c.peek_at(1) == &Tok::LParen {
            c.bump();
            c.bump();
            let sc = self.sc_parts(c, start)?;
            c.expect(&Tok::Comma)?;
            let order = self.order(c)?;
            c.expect(&Tok::RParen)?;
            let span = start.to(c.last_span());
            if let Preorder::Rank { weights, default: None } = &order {
                self.check_coverage(&sc, &|m| weights.contains_key(m), span);
            }
            return PreorderAtom::new(sc, order).map(Head::Preorder).map_err(|e| semantic(span, e));
        }
        if c.at_ident("meas") && c.peek_at(1) == &Tok::LParen {
            c.bump();
            c.bump();
            let sc = self.sc_parts(c, start)?;
            c.expect(&Tok::Comma)?;
            let measure = self.measure(c)?;
            c.expect(&Tok::RParen)?;
            let span = start.to(c.last_span());
            if let Measure::Weights { weights, default: None } = &measure {
                self.check_coverage(&sc, &|m| weights.contains_key(m), span);
            }
            return MeasureAtom::new(sc, measure).map(Head::Measure).map_err(|e| semantic(span, e));
        }
        Ok(Head::Sc(self.body_atom(c)?))
    }

    fn body(&mut self, c: &mut Cursor) -> PResult<Vec<ScAtom>> {
        let mut body = Vec::new();
        if c.peek() == &Tok::Dot {
            return Ok(body);
        }
        loop {
            body.push(self.body_atom(c)?);
            if c.peek() == &Tok::Dot {
                return Ok(body);
            }
            c.expect(&Tok::Comma)?;
        }
    }
}

fn constraint_head() -> ScAtom {
    ScAtom::new(AtomSet::new(), Family::Extensional(BTreeSet::new())).expect("empty atom is well-formed")
}

/// Parses a PSC program.
pub fn parse_psc<S: Scalar>(text: &str) -> ParseResult<Program<S>> {
    let mut c = Cursor::new(text)?;
    let mut p = PscParser::<S> { warnings: Vec::new(), _scalar: std::marker::PhantomData };
    let mut rules = Vec::new();
    let mut spans = Vec::new();
    let mut declared = AtomSet::new();
    while c.peek() != &Tok::Eof {
        let start = c.span();
        if let Tok::Directive(name) = c.peek().clone() {
            if name != "universe" {
                return Err(SyntaxError::parse(Diagnostic::error(start, format!("unknown directive `#{name}`"))));
            }
            c.bump();
            loop {
                declared.insert(c.atom()?.0);
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
            c.expect(&Tok::Dot)?;
            continue;
        }
        let head = if c.eat(&Tok::If) {
            let body = p.body(&mut c)?;
            Rule::new(Head::Sc(constraint_head()), body)
        } else {
            let head = p.head(&mut c)?;
            let body = if c.eat(&Tok::If) { p.body(&mut c)? } else { Vec::new() };
            Rule::new(head, body)
        };
        c.expect(&Tok::Dot)?;
        rules.push(head);
        spans.push(start.to(c.last_span()));
    }
    match Program::new(rules, declared) {
        Ok(value) => Ok(Parsed { value, warnings: p.warnings }),
        Err(Error::MixedKinds { rule }) => Err(semantic(
            spans[rule],
            "pre-ordered and measure preference atoms cannot be mixed in one program",
        )),
        Err(e) => Err(semantic(spans.first().copied().unwrap_or_default(), e)),
    }
}

fn write_family(out: &mut String, f: &Family) {
    match f {
        Family::Extensional(ms) => {
            out.push('{');
            for (i, m) in ms.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{m}");
            }
            out.push('}');
        }
        Family::Even => out.push_str("even"),
        Family::Card { lo, hi } => {
            let _ = write!(out, "card({lo}..{hi})");
        }
        Family::Any => out.push_str("any"),
    }
}

fn literal_form(a: &ScAtom) -> Option<(bool, &Atom)> {
    let Family::Extensional(ms) = a.family() else { return None };
    if a.base().len() != 1 || ms.len() != 1 {
        return None;
    }
    let only = a.base().iter().next()?;
    Some((ms.iter().next()?.is_empty(), only))
}

fn write_sc(out: &mut String, a: &ScAtom) {
    match literal_form(a) {
        Some((false, x)) => {
            let _ = write!(out, "{x}");
        }
        Some((true, x)) => {
            let _ = write!(out, "not {x}");
        }
        None => {
            let _ = write!(out, "sc({}, ", a.base());
            write_family(out, a.family());
            out.push(')');
        }
    }
}

fn join<T>(out: &mut String, items: impl IntoIterator<Item = T>, mut each: impl FnMut(&mut String, T)) {
    for (i, x) in items.into_iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        each(out, x);
    }
}

fn write_weights<T: std::fmt::Display>(out: &mut String, weights: &BTreeMap<AtomSet, T>, default: Option<&T>) {
    let entries = weights.iter().map(|(k, v)| format!("{k} = {v}")).chain(default.map(|d| format!("default = {d}")));
    join(out, entries, |o, e| o.push_str(&e));
}

fn write_order<S: Scalar>(out: &mut String, order: &Preorder<S>) {
    match order {
        Preorder::Chain(sets) => {
            out.push_str("chain(");
            for (i, s) in sets.iter().enumerate() {
                if i > 0 {
                    out.push_str(" < ");
                }
                let _ = write!(out, "{s}");
            }
            out.push(')');
        }
        Preorder::Pairs { listed, .. } => {
            out.push_str("pairs(");
            join(out, listed, |o, (a, b)| {
                let _ = write!(o, "{a} <= {b}");
            });
            out.push(')');
        }
        Preorder::Relation(rel) => {
            out.push_str("relation(");
            join(out, rel.pairs(), |o, (a, b)| {
                let _ = write!(o, "{a} <= {b}");
            });
            out.push(')');
        }
        Preorder::Rank { weights, default } => {
            let weights: BTreeMap<AtomSet, String> = weights.iter().map(|(k, v)| (k.clone(), v.render())).collect();
            out.push_str("rank(");
            write_weights(out, &weights, default.as_ref().map(S::render).as_ref());
            out.push(')');
        }
    }
}

fn write_measure<S: Scalar>(out: &mut String, m: &Measure<S>) {
    match m {
        Measure::Weights { weights, default } => {
            out.push_str("weights(");
            write_weights(out, weights, default.as_ref());
            out.push(')');
        }
        Measure::Indicator { pivot, if_in, if_out } => {
            let _ = write!(out, "indicator({pivot}, {if_in}, {if_out})");
        }
        Measure::Linear { weights, offset } => {
            out.push_str("linear(");
            let entries = weights
                .iter()
                .map(|(a, w)| format!("{a} = {}", w.render()))
                .chain(std::iter::once(format!("offset = {}", offset.render())));
            join(out, entries, |o, e| o.push_str(&e));
            out.push(')');
        }
    }
}

/// Prints a program in the form [`parse_psc`] reads.
pub fn write_psc<S: Scalar>(p: &Program<S>) -> String {
    let mut out = String::new();
    if !p.declared().is_empty() {
        out.push_str("#universe ");
        join(&mut out, p.declared(), |o, a| {
            let _ = write!(o, "{a}");
        });
        out.push_str(".\n");
    }
    let empty = constraint_head();
    for rule in p.rules() {
        match &rule.head {
            Head::Sc(a) if *a == empty => {}
            Head::Sc(a) => write_sc(&mut out, a),
            Head::Preorder(a) => {
                let _ = write!(out, "pref({}, ", a.base());
                write_family(&mut out, a.sc().family());
                out.push_str(", ");
                write_order(&mut out, a.order());
                out.push(')');
            }
            Head::Measure(a) => {
                let _ = write!(out, "meas({}, ", a.base());
                write_family(&mut out, a.sc().family());
                out.push_str(", ");
                write_measure(&mut out, a.measure());
                out.push(')');
            }
        }
        let constraint = matches!(&rule.head, Head::Sc(a) if *a == empty);
        if constraint {
            out.push_str(":-");
            if !rule.body.is_empty() {
                out.push(' ');
            }
        } else if !rule.body.is_empty() {
            out.push_str(" :- ");
        }
        join(&mut out, &rule.body, write_sc);
        out.push_str(".\n");
    }
    out
}
