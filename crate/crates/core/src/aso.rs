//! Answer set optimization programs and their PSC embedding.
//!
//! An ASO program pairs a generating normal program with ranked
//! preference rules `C1 > … > Ck ← body`. Answer sets are compared by
//! their vectors of satisfaction degrees. [`translate_aso`] builds a simple
//! pre-ordered PSC program over `At ∪ bar(At) ∪ {D}` whose preferred stable
//! models project onto the optimal answer sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::model::{
    literal_to_sc, Family, Head, NormalRule, Preorder, PreorderAtom, Program, Rule, ScAtom,
};
use crate::oracle::gl_stable_models;
use crate::scalar::Scalar;

/// Widest preference rule whose order is materialized.
pub const MAX_RULE_WIDTH: usize = 16;

/// An atom or its strong negation `-a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub strong_neg: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, strong_neg: false }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, strong_neg: true }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strong_neg {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// Anything that decides which literals hold.
pub trait LiteralSet {
    fn holds(&self, l: &Literal) -> bool;
}

/// A set of atoms read as a consistent set of positive literals.
impl LiteralSet for AtomSet {
    fn holds(&self, l: &Literal) -> bool {
        !l.strong_neg && self.contains(&l.atom)
    }
}

impl LiteralSet for BTreeSet<Literal> {
    fn holds(&self, l: &Literal) -> bool {
        self.contains(l)
    }
}

/// A Boolean combination over literals. Default negation applies to
/// literals only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolComb {
    Lit(Literal),
    NotLit(Literal),
    And(Vec<BoolComb>),
    Or(Vec<BoolComb>),
}

impl BoolComb {
    pub fn atoms(&self, out: &mut AtomSet) {
        match self {
            BoolComb::Lit(l) | BoolComb::NotLit(l) => {
                out.insert(l.atom.clone());
            }
            BoolComb::And(cs) | BoolComb::Or(cs) => cs.iter().for_each(|c| c.atoms(out)),
        }
    }
}

pub fn satisfies_bc<L: LiteralSet + ?Sized>(s: &L, c: &BoolComb) -> bool {
    match c {
        BoolComb::Lit(l) => s.holds(l),
        BoolComb::NotLit(l) => !s.holds(l),
        BoolComb::And(cs) => cs.iter().all(|c| satisfies_bc(s, c)),
        BoolComb::Or(cs) => cs.iter().any(|c| satisfies_bc(s, c)),
    }
}

/// `C1 > … > Ck ← pos, not neg` with `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AsoPrefRule {
    options: Vec<BoolComb>,
    body_pos: Vec<Literal>,
    body_neg: Vec<Literal>,
}

impl AsoPrefRule {
    /// `None` when `options` is empty.
    pub fn new(options: Vec<BoolComb>, body_pos: Vec<Literal>, body_neg: Vec<Literal>) -> Option<Self> {
        (!options.is_empty()).then_some(AsoPrefRule { options, body_pos, body_neg })
    }

    pub fn options(&self) -> &[BoolComb] {
        &self.options
    }

    pub fn body_pos(&self) -> &[Literal] {
        &self.body_pos
    }

    pub fn body_neg(&self) -> &[Literal] {
        &self.body_neg
    }

    pub fn body_holds<L: LiteralSet + ?Sized>(&self, s: &L) -> bool {
        self.body_pos.iter().all(|l| s.holds(l)) && self.body_neg.iter().all(|l| !s.holds(l))
    }

    /// `At(W)`: every atom the rule mentions.
    pub fn atoms(&self) -> AtomSet {
        let mut out: AtomSet = self.body_pos.iter().chain(&self.body_neg).map(|l| l.atom.clone()).collect();
        self.options.iter().for_each(|c| c.atoms(&mut out));
        out
    }
}

/// A rule of the generating program. Strong negation is representable so
/// that it can be reported, but programs using it are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenRule {
    pub head: Option<Literal>,
    pub pos: Vec<Literal>,
    pub neg: Vec<Literal>,
}

impl GenRule {
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head.iter().chain(&self.pos).chain(&self.neg)
    }

    fn to_normal(&self) -> Result<NormalRule> {
        if let Some(l) = self.literals().find(|l| l.strong_neg) {
            return Err(Error::StrongNegInGen { atom: l.atom.clone() });
        }
        let atoms = |ls: &[Literal]| ls.iter().map(|l| l.atom.clone()).collect();
        Ok(NormalRule::new(self.head.as_ref().map(|l| l.atom.clone()), atoms(&self.pos), atoms(&self.neg)))
    }
}

impl From<&NormalRule> for GenRule {
    fn from(r: &NormalRule) -> Self {
        let lits = |xs: &[Atom]| xs.iter().cloned().map(Literal::pos).collect();
        GenRule { head: r.head.clone().map(Literal::pos), pos: lits(&r.pos), neg: lits(&r.neg) }
    }
}

/// `(P_gen, P_pref)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AsoProgram {
    pub gen: Vec<GenRule>,
    pub pref: Vec<AsoPrefRule>,
}

impl AsoProgram {
    /// The generating program as plain normal rules.
    pub fn normal_gen(&self) -> Result<Vec<NormalRule>> {
        self.gen.iter().map(GenRule::to_normal).collect()
    }

    /// `At`: atoms of both parts.
    pub fn atoms(&self) -> AtomSet {
        let mut out: AtomSet = self.gen.iter().flat_map(|r| r.literals().map(|l| l.atom.clone())).collect();
        for r in &self.pref {
            out.extend_from(&r.atoms());
        }
        out
    }
}

/// Satisfaction degree of a preference rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Irrelevant,
    /// 1-based index of the first satisfied option.
    Index(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Irrelevant => f.write_str("I"),
            Degree::Index(i) => write!(f, "{i}"),
        }
    }
}

pub fn satisfaction_degree<L: LiteralSet + ?Sized>(s: &L, r: &AsoPrefRule) -> Degree {
    if !r.body_holds(s) {
        return Degree::Irrelevant;
    }
    match r.options.iter().position(|c| satisfies_bc(s, c)) {
        Some(i) => Degree::Index(i + 1),
        None => Degree::Irrelevant,
    }
}

/// `a ≥ b`: `I` ties with 1 and beats 2, 3, …; lower indices are better.
pub fn degree_geq(a: Degree, b: Degree) -> bool {
    use Degree::*;
    match (a, b) {
        (Irrelevant, _) => true,
        (Index(i), Irrelevant) => i == 1,
        (Index(i), Index(j)) => i <= j,
    }
}

pub fn degree_gt(a: Degree, b: Degree) -> bool {
    degree_geq(a, b) && !degree_geq(b, a)
}

/// Position of a degree in the total pre-order, 1 being best.
pub fn degree_rank(d: Degree) -> usize {
    match d {
        Degree::Irrelevant => 1,
        Degree::Index(i) => i,
    }
}

/// Relation between two satisfaction vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorOrder {
    /// Identical vectors.
    Equal,
    /// `V1 ≥ V2` and `V2 ≥ V1` without being identical (`I` against `1`).
    GeqOnly,
    Greater,
    Less,
    Incomparable,
}

pub fn satisfaction_vector<L: LiteralSet + ?Sized>(s: &L, pref: &[AsoPrefRule]) -> Vec<Degree> {
    pref.iter().map(|r| satisfaction_degree(s, r)).collect()
}

pub fn compare_vectors(v1: &[Degree], v2: &[Degree]) -> VectorOrder {
    if v1 == v2 {
        return VectorOrder::Equal;
    }
    let geq12 = v1.iter().zip(v2).all(|(a, b)| degree_geq(*a, *b));
    let geq21 = v1.iter().zip(v2).all(|(a, b)| degree_geq(*b, *a));
    let gt12 = v1.iter().zip(v2).any(|(a, b)| degree_gt(*a, *b));
    let gt21 = v1.iter().zip(v2).any(|(a, b)| degree_gt(*b, *a));
    match (geq12 && gt12, geq21 && gt21) {
        (true, _) => VectorOrder::Greater,
        (_, true) => VectorOrder::Less,
        _ if geq12 && geq21 => VectorOrder::GeqOnly,
        _ => VectorOrder::Incomparable,
    }
}

pub fn vector_compare<L: LiteralSet + ?Sized>(s1: &L, s2: &L, pref: &[AsoPrefRule]) -> VectorOrder {
    compare_vectors(&satisfaction_vector(s1, pref), &satisfaction_vector(s2, pref))
}

/// Answer sets of `P_gen` that no other answer set beats.
pub fn aso_optimal_models(a: &AsoProgram, cap: usize) -> Result<Vec<AtomSet>> {
    let answer_sets = gl_stable_models(&a.normal_gen()?, cap)?;
    let vectors: Vec<Vec<Degree>> = answer_sets.iter().map(|s| satisfaction_vector(s, &a.pref)).collect();
    Ok(answer_sets
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !vectors.iter().any(|v| compare_vectors(v, &vectors[*i]) == VectorOrder::Greater)
        })
        .map(|(_, s)| s.clone())
        .collect())
}

/// The PSC program built from an ASO program, with the naming of its
/// auxiliary atoms.
#[derive(Clone, Debug)]
pub struct AsoTranslation<S> {
    pub program: Program<S>,
    /// `At`.
    pub atoms: AtomSet,
    /// `a ↦ bar(a)`.
    pub bars: BTreeMap<Atom, Atom>,
    /// The atom `D` of the consistency rules.
    pub inconsistent: Atom,
}

impl<S> AsoTranslation<S> {
    pub fn barred(&self, b: &AtomSet) -> AtomSet {
        b.iter().map(|a| self.bars[a].clone()).collect()
    }

    /// `B ∪ bar(B)`.
    pub fn lift(&self, b: &AtomSet) -> AtomSet {
        b.union(&self.barred(b))
    }

    pub fn project_unbarred(&self, m: &AtomSet) -> AtomSet {
        project_unbarred(m, &self.atoms)
    }
}

/// `M ∩ At`.
pub fn project_unbarred(m: &AtomSet, at: &AtomSet) -> AtomSet {
    m.intersection(at)
}

fn fresh_names(at: &AtomSet) -> (String, Atom) {
    let prefix = std::iter::once("bar_".to_string())
        .chain((1..).map(|i| format!("bar{i}_")))
        .find(|p| !at.iter().any(|a| a.name().starts_with(p.as_str())))
        .expect("some prefix is unused");
    let inconsistent = std::iter::once("inconsistent".to_string())
        .chain((1..).map(|i| format!("inconsistent_{i}")))
        .find(|n| !at.contains_name(n))
        .expect("some name is unused");
    (prefix, Atom::new_unchecked(&inconsistent))
}

/// Builds `P_gen ∪ P'_pref ∪ P_cons`.
///
/// Each preference rule `W` becomes the fact `⟨bar(At(W)), P(bar(At(W))), ≤_W⟩`
/// where `bar(A) ≤_W bar(B)` iff `v_A(W) ≥ v_B(W)`, materialized as a rank
/// over all subsets of `At(W)`. Each atom `a` gets `bar(a) ← a` and
/// `D ← bar(a), not a, not D`.
pub fn translate_aso<S: Scalar>(a: &AsoProgram) -> Result<AsoTranslation<S>> {
    let gen = a.normal_gen()?;
    let at = a.atoms();
    let (prefix, inconsistent) = fresh_names(&at);
    let bars: BTreeMap<Atom, Atom> = at
        .iter()
        .map(|x| (x.clone(), Atom::new_unchecked(&format!("{prefix}{}", x.name()))))
        .collect();
    let bar_set = |s: &AtomSet| -> AtomSet { s.iter().map(|x| bars[x].clone()).collect() };

    let mut rules: Vec<Rule<S>> = gen.iter().map(NormalRule::to_sc_rule).collect();
    for w in &a.pref {
        let width_atoms = w.atoms();
        if width_atoms.len() > MAX_RULE_WIDTH {
            return Err(Error::WidthExceeded { width: width_atoms.len(), limit: MAX_RULE_WIDTH });
        }
        let weights = width_atoms
            .subsets()
            .into_iter()
            .map(|sub| {
                let rank = degree_rank(satisfaction_degree(&sub, w));
                (bar_set(&sub), S::from_count(rank))
            })
            .collect();
        let sc = ScAtom::new(bar_set(&width_atoms), Family::Any)?;
        let head = PreorderAtom::new(sc, Preorder::rank(weights, None))?;
        rules.push(Rule::fact(Head::Preorder(head)));
    }
    for x in &at {
        let bx = &bars[x];
        rules.push(Rule::new(
            Head::Sc(literal_to_sc(bx, false)),
            vec![literal_to_sc(x, false)],
        ));
        rules.push(Rule::new(
            Head::Sc(literal_to_sc(&inconsistent, false)),
            vec![literal_to_sc(bx, false), literal_to_sc(x, true), literal_to_sc(&inconsistent, true)],
        ));
    }
    let program = Program::new(rules, AtomSet::new())?;
    Ok(AsoTranslation { program, atoms: at, bars, inconsistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms;
    use crate::atoms::atom;
    use crate::engine::enumerate_stable;

    fn lit(name: &str) -> BoolComb {
        BoolComb::Lit(Literal::pos(atom(name)))
    }

    fn gen_rule(head: &str, neg: &[&str]) -> GenRule {
        GenRule {
            head: Some(Literal::pos(atom(head))),
            pos: vec![],
            neg: neg.iter().map(|n| Literal::pos(atom(n))).collect(),
        }
    }

    fn a_over_b() -> AsoProgram {
        AsoProgram {
            gen: vec![gen_rule("a", &["b"]), gen_rule("b", &["a"])],
            pref: vec![AsoPrefRule::new(vec![lit("a"), lit("b")], vec![], vec![]).unwrap()],
        }
    }

    #[test]
    fn boolean_combinations() {
        let s = atoms!["a"];
        assert!(satisfies_bc(&s, &BoolComb::NotLit(Literal::pos(atom("b")))));
        let contradiction = BoolComb::And(vec![lit("a"), BoolComb::NotLit(Literal::pos(atom("a")))]);
        assert!(!satisfies_bc(&s, &contradiction));
        let either = BoolComb::Or(vec![BoolComb::Lit(Literal::neg(atom("a"))), lit("b")]);
        assert!(satisfies_bc(&atoms!["a", "b"], &either));
        // Answer sets of normal programs never contain -a, so not -a holds.
        assert!(satisfies_bc(&s, &BoolComb::NotLit(Literal::neg(atom("a")))));
    }

    #[test]
    fn degrees() {
        let r = AsoPrefRule::new(vec![lit("a"), lit("b")], vec![Literal::pos(atom("c"))], vec![]).unwrap();
        assert_eq!(satisfaction_degree(&atoms!["a"], &r), Degree::Irrelevant);
        assert_eq!(satisfaction_degree(&atoms!["b", "c"], &r), Degree::Index(2));
        assert_eq!(satisfaction_degree(&atoms!["c"], &r), Degree::Irrelevant);
        assert_eq!(satisfaction_degree(&atoms!["a", "b", "c"], &r), Degree::Index(1));
    }

    #[test]
    fn degree_order() {
        use Degree::*;
        assert!(degree_geq(Irrelevant, Index(1)) && degree_geq(Index(1), Irrelevant));
        assert!(degree_geq(Irrelevant, Index(3)) && !degree_geq(Index(3), Irrelevant));
        assert!(degree_geq(Index(1), Index(2)) && !degree_geq(Index(2), Index(1)));
        assert!(degree_geq(Index(2), Index(2)));
        assert!(degree_gt(Irrelevant, Index(2)));
        assert!(!degree_gt(Irrelevant, Index(1)));
    }

    #[test]
    fn vectors() {
        use Degree::*;
        assert_eq!(compare_vectors(&[Index(1)], &[Index(1)]), VectorOrder::Equal);
        assert_eq!(compare_vectors(&[Index(1), Index(1)], &[Index(1), Index(2)]), VectorOrder::Greater);
        assert_eq!(compare_vectors(&[Index(1), Index(2)], &[Index(1), Index(1)]), VectorOrder::Less);
        assert_eq!(compare_vectors(&[Index(1), Index(2)], &[Index(2), Index(1)]), VectorOrder::Incomparable);
        assert_eq!(compare_vectors(&[Irrelevant], &[Index(1)]), VectorOrder::GeqOnly);
    }

    #[test]
    fn optimal_models() {
        assert_eq!(aso_optimal_models(&a_over_b(), 16).unwrap(), vec![atoms!["a"]]);
        let mut no_pref = a_over_b();
        no_pref.pref.clear();
        assert_eq!(aso_optimal_models(&no_pref, 16).unwrap(), vec![atoms!["a"], atoms!["b"]]);
        let unsat = AsoProgram { gen: vec![gen_rule("a", &["a"])], pref: vec![] };
        assert!(aso_optimal_models(&unsat, 16).unwrap().is_empty());
    }

    #[test]
    fn translated_order() {
        let t = translate_aso::<f64>(&a_over_b()).unwrap();
        let crate::model::Head::Preorder(head) = &t.program.rules()[2].head else {
            panic!("third rule should be the preference fact");
        };
        let ba = t.barred(&atoms!["a"]);
        let bb = t.barred(&atoms!["b"]);
        assert!(head.leq(&ba, &bb).unwrap());
        assert!(!head.leq(&bb, &ba).unwrap());
    }

    #[test]
    fn translated_stable_models() {
        let t = translate_aso::<f64>(&a_over_b()).unwrap();
        let models = enumerate_stable(&t.program, 22).unwrap();
        assert_eq!(models, vec![t.lift(&atoms!["a"]), t.lift(&atoms!["b"])]);
        for m in &models {
            let b = t.project_unbarred(m);
            assert_eq!(*m, t.lift(&b));
        }
    }

    #[test]
    fn strong_negation_in_gen_is_rejected() {
        let mut p = a_over_b();
        p.gen.push(GenRule { head: Some(Literal::neg(atom("c"))), pos: vec![], neg: vec![] });
        assert_eq!(
            translate_aso::<f64>(&p).unwrap_err(),
            Error::StrongNegInGen { atom: atom("c") }
        );
        assert!(matches!(aso_optimal_models(&p, 16), Err(Error::StrongNegInGen { .. })));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let p = AsoProgram {
            gen: vec![gen_rule("bar_a", &[]), gen_rule("inconsistent", &[])],
            pref: vec![],
        };
        let t = translate_aso::<f64>(&p).unwrap();
        assert!(t.bars.values().all(|b| b.name().starts_with("bar1_")));
        assert_eq!(t.inconsistent.name(), "inconsistent_1");
    }

    #[test]
    fn project() {
        let at = atoms!["a", "b"];
        assert_eq!(project_unbarred(&atoms!["a", "bar_a"], &at), atoms!["a"]);
        assert_eq!(project_unbarred(&atoms!["inconsistent"], &at), atoms![]);
        assert_eq!(project_unbarred(&atoms!["b", "bar_b", "bar_a"], &at), atoms!["b"]);
    }
}
