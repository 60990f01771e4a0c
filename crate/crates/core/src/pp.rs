//! Planning preferences over trajectories.
//!
//! A trajectory is represented by the set of basic desires it satisfies.
//! [`pp_prec`] and [`pp_indist`] follow the inductive definitions of the
//! preference language; [`compile_formula`] turns a formula into a single
//! pre-ordered atom whose relation is `≺_ψ ∪ ≈_ψ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::model::{Family, Preorder, PreorderAtom, PreorderReport, Relation, ScAtom};
use crate::preference::{compare_preordered_set, CompareVerdict};
use crate::scalar::Scalar;

/// Widest desire universe [`compile_formula`] will materialize.
pub const MAX_DESIRES: usize = 12;

/// `Δ(α)`: the desires a trajectory satisfies.
pub type Trajectory = AtomSet;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrefFormula {
    Basic(Atom),
    /// `φ1 ◁ … ◁ φn` over basic desires.
    Atomic(Vec<Atom>),
    And(Box<PrefFormula>, Box<PrefFormula>),
    Or(Box<PrefFormula>, Box<PrefFormula>),
    Not(Box<PrefFormula>),
    /// `ψ1 ◁ … ◁ ψk` over general formulas.
    Lex(Vec<PrefFormula>),
}

impl PrefFormula {
    pub fn basic(name: &str) -> Self {
        PrefFormula::Basic(crate::atoms::atom(name))
    }

    pub fn and(a: PrefFormula, b: PrefFormula) -> Self {
        PrefFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PrefFormula, b: PrefFormula) -> Self {
        PrefFormula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: PrefFormula) -> Self {
        PrefFormula::Not(Box::new(a))
    }

    /// Desires occurring anywhere in the formula.
    pub fn desires(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut AtomSet) {
        match self {
            PrefFormula::Basic(d) => {
                out.insert(d.clone());
            }
            PrefFormula::Atomic(ds) => {
                for d in ds {
                    out.insert(d.clone());
                }
            }
            PrefFormula::And(a, b) | PrefFormula::Or(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            PrefFormula::Not(a) => a.collect(out),
            PrefFormula::Lex(xs) => xs.iter().for_each(|x| x.collect(out)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            PrefFormula::Basic(_) | PrefFormula::Atomic(_) => 0,
            PrefFormula::And(a, b) | PrefFormula::Or(a, b) => 1 + a.depth().max(b.depth()),
            PrefFormula::Not(a) => 1 + a.depth(),
            PrefFormula::Lex(xs) => 1 + xs.iter().map(PrefFormula::depth).max().unwrap_or(0),
        }
    }

    /// The shape the text syntax reads back: one-element chains collapse,
    /// and a chain of bare desires is atomic.
    pub fn normalized(&self) -> PrefFormula {
        match self {
            PrefFormula::Basic(_) => self.clone(),
            PrefFormula::Atomic(ds) if ds.len() == 1 => PrefFormula::Basic(ds[0].clone()),
            PrefFormula::Atomic(_) => self.clone(),
            PrefFormula::And(a, b) => PrefFormula::and(a.normalized(), b.normalized()),
            PrefFormula::Or(a, b) => PrefFormula::or(a.normalized(), b.normalized()),
            PrefFormula::Not(a) => PrefFormula::not(a.normalized()),
            PrefFormula::Lex(xs) => {
                let xs: Vec<PrefFormula> = xs.iter().map(PrefFormula::normalized).collect();
                if xs.len() == 1 {
                    return xs.into_iter().next().unwrap();
                }
                if xs.iter().all(|x| matches!(x, PrefFormula::Basic(_))) {
                    let ds = xs
                        .into_iter()
                        .map(|x| match x {
                            PrefFormula::Basic(d) => d,
                            _ => unreachable!(),
                        })
                        .collect();
                    return PrefFormula::Atomic(ds);
                }
                PrefFormula::Lex(xs)
            }
        }
    }
}

fn fmt_operand(f: &mut fmt::Formatter<'_>, x: &PrefFormula) -> fmt::Result {
    match x {
        PrefFormula::Basic(_) | PrefFormula::Not(_) => write!(f, "{x}"),
        PrefFormula::Atomic(ds) if ds.len() == 1 => write!(f, "{x}"),
        _ => write!(f, "({x})"),
    }
}

impl fmt::Display for PrefFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefFormula::Basic(d) => write!(f, "{d}"),
            PrefFormula::Atomic(ds) => {
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" <| ")?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
            PrefFormula::And(a, b) => {
                fmt_operand(f, a)?;
                f.write_str(" & ")?;
                fmt_operand(f, b)
            }
            PrefFormula::Or(a, b) => {
                fmt_operand(f, a)?;
                f.write_str(" | ")?;
                fmt_operand(f, b)
            }
            PrefFormula::Not(a) => {
                f.write_str("!")?;
                fmt_operand(f, a)
            }
            PrefFormula::Lex(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" <| ")?;
                    }
                    fmt_operand(f, x)?;
                }
                Ok(())
            }
        }
    }
}

fn basic_prec(d: &Atom, a: &Trajectory, b: &Trajectory) -> bool {
    a.contains(d) && !b.contains(d)
}

fn basic_indist(d: &Atom, a: &Trajectory, b: &Trajectory) -> bool {
    a.contains(d) == b.contains(d)
}

/// `α ≺_ψ β`.
pub fn pp_prec(psi: &PrefFormula, a: &Trajectory, b: &Trajectory) -> bool {
    match psi {
        PrefFormula::Basic(d) => basic_prec(d, a, b),
        PrefFormula::Atomic(ds) => (0..ds.len()).any(|i| {
            ds[..i].iter().all(|d| basic_indist(d, a, b)) && basic_prec(&ds[i], a, b)
        }),
        PrefFormula::And(p, q) => pp_prec(p, a, b) && pp_prec(q, a, b),
        PrefFormula::Or(p, q) => {
            (pp_prec(p, a, b) && pp_indist(q, a, b))
                || (pp_indist(p, a, b) && pp_prec(q, a, b))
                || (pp_prec(p, a, b) && pp_prec(q, a, b))
        }
        PrefFormula::Not(p) => pp_prec(p, b, a),
        PrefFormula::Lex(xs) => (0..xs.len()).any(|i| {
            xs[..i].iter().all(|x| pp_indist(x, a, b)) && pp_prec(&xs[i], a, b)
        }),
    }
}

/// `α ≈_ψ β`.
pub fn pp_indist(psi: &PrefFormula, a: &Trajectory, b: &Trajectory) -> bool {
    match psi {
        PrefFormula::Basic(d) => basic_indist(d, a, b),
        PrefFormula::Atomic(ds) => ds.iter().all(|d| basic_indist(d, a, b)),
        PrefFormula::And(p, q) | PrefFormula::Or(p, q) => pp_indist(p, a, b) && pp_indist(q, a, b),
        PrefFormula::Not(p) => pp_indist(p, a, b),
        PrefFormula::Lex(xs) => xs.iter().all(|x| pp_indist(x, a, b)),
    }
}

/// The pre-ordered atom `⟨X_ψ, P(X_ψ), ≤_ψ⟩` with `A ≤_ψ B` iff
/// `A ≺_ψ B` or `A ≈_ψ B`. The relation is not closed; see
/// [`compiled_axioms`].
pub fn compile_formula<S: Scalar>(psi: &PrefFormula) -> Result<PreorderAtom<S>> {
    let base = psi.desires();
    if base.len() > MAX_DESIRES {
        return Err(Error::WidthExceeded { width: base.len(), limit: MAX_DESIRES });
    }
    let nodes: Vec<AtomSet> = base.subsets();
    let mut rel = Relation::over(nodes.clone());
    for (i, x) in nodes.iter().enumerate() {
        for (j, y) in nodes.iter().enumerate() {
            if pp_prec(psi, x, y) || pp_indist(psi, x, y) {
                rel.set(i, j);
            }
        }
    }
    let sc = ScAtom::new(base, Family::Any)?;
    PreorderAtom::new(sc, Preorder::Relation(rel))
}

/// Reflexivity and transitivity of the compiled relation.
pub fn compiled_axioms<S: Scalar>(atom: &PreorderAtom<S>) -> Result<PreorderReport> {
    atom.check_axioms(MAX_DESIRES)
}

/// Pairwise agreement between the formula semantics and its compiled atom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileReport {
    pub pairs: usize,
    /// `α ≺_ψ β` iff the atom prefers `Δ(α)` to `Δ(β)`.
    pub strict_mismatches: Vec<(Trajectory, Trajectory)>,
    /// `α ≈_ψ β` iff `≤` holds both ways.
    pub mutual_leq_mismatches: Vec<(Trajectory, Trajectory)>,
    /// `α ≈_ψ β` iff the atom prefers neither.
    pub neither_strict_mismatches: Vec<(Trajectory, Trajectory)>,
    pub axioms: PreorderReport,
}

impl CompileReport {
    pub fn strict_agrees(&self) -> bool {
        self.strict_mismatches.is_empty()
    }
}

/// Compares `ψ` against its compiled atom on every pair of subsets of
/// `X_ψ`.
pub fn check_compilation<S: Scalar>(psi: &PrefFormula) -> Result<CompileReport> {
    let atom: PreorderAtom<S> = compile_formula(psi)?;
    let t = [&atom];
    let sets: Vec<AtomSet> = atom.base().subsets();
    let mut report = CompileReport { axioms: compiled_axioms(&atom)?, ..Default::default() };
    for a in &sets {
        for b in &sets {
            report.pairs += 1;
            let verdict = compare_preordered_set(&t, a, b)?;
            let indist = pp_indist(psi, a, b);
            if pp_prec(psi, a, b) != (verdict == CompareVerdict::FirstPreferred) {
                report.strict_mismatches.push((a.clone(), b.clone()));
            }
            let mutual = atom.leq(a, b)? && atom.leq(b, a)?;
            if indist != mutual {
                report.mutual_leq_mismatches.push((a.clone(), b.clone()));
            }
            let neither =
                !matches!(verdict, CompareVerdict::FirstPreferred | CompareVerdict::SecondPreferred);
            if indist != neither {
                report.neither_strict_mismatches.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(report)
}

/// Every trajectory abstraction over `desires`.
pub fn trajectories(desires: &AtomSet) -> BTreeSet<Trajectory> {
    desires.subsets().into_iter().collect()
}
