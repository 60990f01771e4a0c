//! Set constraint atoms, preference atoms, rules and programs.
//!
//! A set constraint (SC) atom `⟨X, F⟩` pairs a finite base `X` with a
//! family `F` of subsets of `X`; a set of atoms `M` satisfies it when
//! `M ∩ X ∈ F`. Preference atoms extend an SC atom with either a pre-order
//! on `F` or a measure `F → [-inf, inf]`. Both are ignored for stability
//! and only used to rank stable models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::scalar::{Extended, Scalar};

/// The family `F` of an SC atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// An explicit list of subsets of the base.
    Extensional(BTreeSet<AtomSet>),
    /// Subsets of even cardinality.
    Even,
    /// Subsets whose cardinality lies in `lo..=hi`.
    Card { lo: usize, hi: usize },
    /// The whole powerset of the base.
    Any,
}

impl Family {
    pub fn extensional<I: IntoIterator<Item = AtomSet>>(members: I) -> Self {
        Family::Extensional(members.into_iter().collect())
    }

    /// Membership of `y`, which the caller guarantees is a subset of the base.
    pub fn contains(&self, y: &AtomSet) -> bool {
        match self {
            Family::Extensional(members) => members.contains(y),
            Family::Even => y.len().is_multiple_of(2),
            Family::Card { lo, hi } => (*lo..=*hi).contains(&y.len()),
            Family::Any => true,
        }
    }
}

/// A set constraint atom `⟨X, F⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScAtom {
    base: AtomSet,
    family: Family,
}

impl ScAtom {
    pub fn new(base: AtomSet, family: Family) -> Result<Self> {
        match &family {
            Family::Extensional(members) => {
                if let Some(bad) = members.iter().find(|m| !m.is_subset(&base)) {
                    return Err(Error::FamilyNotSubset { member: bad.clone(), base });
                }
            }
            Family::Card { lo, hi } if lo > hi => {
                return Err(Error::CardBounds { lo: *lo, hi: *hi });
            }
            _ => {}
        }
        Ok(ScAtom { base, family })
    }

    pub fn base(&self) -> &AtomSet {
        &self.base
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Whether `y ⊆ X` belongs to `F`. Sets reaching outside the base are
    /// never members.
    pub fn admits(&self, y: &AtomSet) -> bool {
        y.is_subset(&self.base) && self.family.contains(y)
    }

    /// Lists the members of `F` in canonical order. Builtin families are
    /// expanded by subset enumeration, which is refused above `max_width`
    /// base atoms.
    pub fn members(&self, max_width: usize) -> Result<Vec<AtomSet>> {
        if let Family::Extensional(members) = &self.family {
            let mut out: Vec<AtomSet> = members.iter().cloned().collect();
            out.sort();
            return Ok(out);
        }
        if self.base.len() > max_width {
            return Err(Error::WidthExceeded { width: self.base.len(), limit: max_width });
        }
        Ok(self
            .base
            .subsets()
            .into_iter()
            .filter(|y| self.family.contains(y))
            .collect())
    }
}

/// `M ⊨ ⟨X, F⟩`, i.e. `M ∩ X ∈ F`.
pub fn satisfies_sc(m: &AtomSet, a: &ScAtom) -> bool {
    a.family.contains(&m.intersection(&a.base))
}

/// `M ⊨ ⟨X, F̄⟩` where `F̄` is the upper closure of `F` in `X`, decided
/// without materializing `F̄`.
pub fn satisfies_closure(m: &AtomSet, a: &ScAtom) -> bool {
    let y = m.intersection(&a.base);
    match &a.family {
        Family::Extensional(members) => members.iter().any(|z| z.is_subset(&y)),
        // The empty set has even cardinality.
        Family::Even => true,
        Family::Card { lo, hi } => y.len() >= *lo && lo <= hi,
        Family::Any => true,
    }
}

/// Encodes `a` as `⟨{a}, {{a}}⟩` and `not a` as `⟨{a}, {∅}⟩`.
pub fn literal_to_sc(name: &Atom, negated: bool) -> ScAtom {
    let base: AtomSet = std::iter::once(name.clone()).collect();
    let member = if negated { AtomSet::new() } else { base.clone() };
    ScAtom { base, family: Family::extensional([member]) }
}

/// An explicit binary relation over a finite list of sets, stored as a
/// bit matrix.
#[derive(Clone, Debug)]
pub struct Relation {
    nodes: Vec<AtomSet>,
    index: BTreeMap<AtomSet, usize>,
    rows: Vec<Vec<u64>>,
}

impl Relation {
    pub fn from_pairs<I: IntoIterator<Item = (AtomSet, AtomSet)>>(pairs: I) -> Self {
        let pairs: Vec<(AtomSet, AtomSet)> = pairs.into_iter().collect();
        let nodes: BTreeSet<AtomSet> =
            pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let mut rel = Relation::over(nodes.into_iter().collect());
        for (a, b) in &pairs {
            let (i, j) = (rel.index[a], rel.index[b]);
            rel.set(i, j);
        }
        rel
    }

    /// An empty relation over `nodes`, which must be sorted and distinct.
    pub fn over(nodes: Vec<AtomSet>) -> Self {
        let words = nodes.len().div_ceil(64);
        let index = nodes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let rows = vec![vec![0u64; words]; nodes.len()];
        Relation { nodes, index, rows }
    }

    pub fn nodes(&self) -> &[AtomSet] {
        &self.nodes
    }

    pub fn index_of(&self, s: &AtomSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    /// Whether `a R b`; `false` if either set is not a node.
    pub fn holds(&self, a: &AtomSet, b: &AtomSet) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.get(i, j),
            _ => false,
        }
    }

    /// All related pairs, row-major in node order.
    pub fn pairs(&self) -> impl Iterator<Item = (&AtomSet, &AtomSet)> + '_ {
        (0..self.nodes.len()).flat_map(move |i| {
            (0..self.nodes.len())
                .filter(move |&j| self.get(i, j))
                .map(move |j| (&self.nodes[i], &self.nodes[j]))
        })
    }

    pub fn len(&self) -> usize {
        self.rows.iter().flatten().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Adds the reflexive pairs and closes under transitivity (Warshall).
    fn close(&mut self) {
        for i in 0..self.nodes.len() {
            self.set(i, i);
        }
        for k in 0..self.nodes.len() {
            let row_k = self.rows[k].clone();
            for i in 0..self.nodes.len() {
                if self.get(i, k) {
                    for (w, bits) in self.rows[i].iter_mut().zip(&row_k) {
                        *w |= bits;
                    }
                }
            }
        }
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.rows == other.rows
    }
}

/// A pre-order `≤_F`; smaller means preferred.
#[derive(Clone, Debug, PartialEq)]
pub enum Preorder<S> {
    /// Every element is below every later element.
    Chain(Vec<AtomSet>),
    /// The reflexive-transitive closure of the listed pairs `(a, b)`,
    /// read `a ≤ b`.
    Pairs { listed: BTreeSet<(AtomSet, AtomSet)>, closure: Relation },
    /// `a ≤ b` iff `w(a) ≤ w(b)`; unlisted sets take the default.
    Rank { weights: BTreeMap<AtomSet, S>, default: Option<S> },
    /// An explicit relation taken as given, without any closure. Used by
    /// compiled preference formulas, whose pre-order property is checked
    /// rather than assumed.
    Relation(Relation),
}

impl<S: Scalar> Preorder<S> {
    pub fn chain(sets: Vec<AtomSet>) -> Self {
        Preorder::Chain(sets)
    }

    pub fn pairs<I: IntoIterator<Item = (AtomSet, AtomSet)>>(pairs: I) -> Self {
        let listed: BTreeSet<(AtomSet, AtomSet)> = pairs.into_iter().collect();
        let mut closure = Relation::from_pairs(listed.iter().cloned());
        closure.close();
        Preorder::Pairs { listed, closure }
    }

    pub fn rank(weights: BTreeMap<AtomSet, S>, default: Option<S>) -> Self {
        Preorder::Rank { weights, default }
    }

    /// `a ≤ b`. Both sets are expected to be family members.
    pub fn leq(&self, a: &AtomSet, b: &AtomSet) -> Result<bool> {
        Ok(match self {
            Preorder::Chain(sets) => {
                a == b || {
                    let pa = sets.iter().position(|s| s == a);
                    let pb = sets.iter().position(|s| s == b);
                    matches!((pa, pb), (Some(i), Some(j)) if i < j)
                }
            }
            Preorder::Pairs { closure, .. } => a == b || closure.holds(a, b),
            Preorder::Rank { weights, default } => {
                let weight = |s: &AtomSet| {
                    weights.get(s).or(default.as_ref()).cloned().ok_or_else(|| {
                        Error::OrderDomain { projection: s.clone(), base: AtomSet::new() }
                    })
                };
                weight(a)? <= weight(b)?
            }
            Preorder::Relation(rel) => rel.holds(a, b),
        })
    }

    /// Sets that the order names explicitly.
    pub fn mentioned(&self) -> Vec<&AtomSet> {
        match self {
            Preorder::Chain(sets) => sets.iter().collect(),
            Preorder::Pairs { listed, .. } => listed.iter().flat_map(|(a, b)| [a, b]).collect(),
            Preorder::Rank { weights, .. } => weights.keys().collect(),
            Preorder::Relation(rel) => rel.nodes().iter().collect(),
        }
    }
}

/// A measure `ρ_F : F → [-inf, inf]`; smaller sums are preferred.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure<S> {
    Weights { weights: BTreeMap<AtomSet, Extended<S>>, default: Option<Extended<S>> },
    /// `if_in` when the pivot is in the set, `if_out` otherwise.
    Indicator { pivot: Atom, if_in: Extended<S>, if_out: Extended<S> },
    /// `offset + Σ w(a)` over the members of the set; unlisted atoms weigh 0.
    Linear { weights: BTreeMap<Atom, S>, offset: S },
}

impl<S: Scalar> Measure<S> {
    pub fn value(&self, y: &AtomSet) -> Result<Extended<S>> {
        match self {
            Measure::Weights { weights, default } => weights
                .get(y)
                .or(default.as_ref())
                .cloned()
                .ok_or_else(|| Error::OrderDomain { projection: y.clone(), base: AtomSet::new() }),
            Measure::Indicator { pivot, if_in, if_out } => {
                Ok(if y.contains(pivot) { if_in.clone() } else { if_out.clone() })
            }
            Measure::Linear { weights, offset } => {
                let sum = y
                    .iter()
                    .filter_map(|a| weights.get(a))
                    .fold(offset.clone(), |acc, w| acc + w.clone());
                Ok(Extended::Finite(sum))
            }
        }
    }

    /// The same measure with `c` added to every value.
    pub fn shifted(&self, c: &S) -> Self {
        match self {
            Measure::Weights { weights, default } => Measure::Weights {
                weights: weights.iter().map(|(k, v)| (k.clone(), v.shifted(c))).collect(),
                default: default.as_ref().map(|d| d.shifted(c)),
            },
            Measure::Indicator { pivot, if_in, if_out } => Measure::Indicator {
                pivot: pivot.clone(),
                if_in: if_in.shifted(c),
                if_out: if_out.shifted(c),
            },
            Measure::Linear { weights, offset } => Measure::Linear {
                weights: weights.clone(),
                offset: offset.clone() + c.clone(),
            },
        }
    }
}

/// `⟨X, F, ≤_F⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreorderAtom<S> {
    sc: ScAtom,
    order: Preorder<S>,
}

impl<S: Scalar> PreorderAtom<S> {
    pub fn new(sc: ScAtom, order: Preorder<S>) -> Result<Self> {
        if let Preorder::Chain(sets) = &order {
            let mut seen = BTreeSet::new();
            if let Some(dup) = sets.iter().find(|s| !seen.insert(*s)) {
                return Err(Error::ChainRepeats { set: dup.clone() });
            }
        }
        if let Some(bad) = order.mentioned().into_iter().find(|s| !sc.admits(s)) {
            return Err(Error::OrderOutsideFamily { set: bad.clone() });
        }
        Ok(PreorderAtom { sc, order })
    }

    pub fn sc(&self) -> &ScAtom {
        &self.sc
    }

    pub fn order(&self) -> &Preorder<S> {
        &self.order
    }

    pub fn base(&self) -> &AtomSet {
        self.sc.base()
    }

    /// `a ≤_F b`, failing with `OrderDomain` if either set is outside `F`.
    pub fn leq(&self, a: &AtomSet, b: &AtomSet) -> Result<bool> {
        for s in [a, b] {
            if !self.sc.admits(s) {
                return Err(Error::OrderDomain { projection: s.clone(), base: self.base().clone() });
            }
        }
        self.order.leq(a, b).map_err(|e| self.locate(e))
    }

    fn locate(&self, e: Error) -> Error {
        match e {
            Error::OrderDomain { projection, .. } => {
                Error::OrderDomain { projection, base: self.base().clone() }
            }
            other => other,
        }
    }

    /// Checks reflexivity and transitivity over every member of `F`.
    pub fn check_axioms(&self, max_width: usize) -> Result<PreorderReport> {
        let members = self.sc.members(max_width)?;
        let n = members.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, a) in members.iter().enumerate() {
            for (j, b) in members.iter().enumerate() {
                leq[i][j] = self.order.leq(a, b).map_err(|e| self.locate(e))?;
            }
        }
        let mut report = PreorderReport { family_size: n, ..Default::default() };
        for i in 0..n {
            if !leq[i][i] {
                report.reflexivity_violations.push(members[i].clone());
            }
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        report.transitivity_violations.push((
                            members[i].clone(),
                            members[j].clone(),
                            members[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(report)
    }
}

/// Outcome of [`PreorderAtom::check_axioms`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreorderReport {
    pub family_size: usize,
    pub reflexivity_violations: Vec<AtomSet>,
    /// Triples `(a, b, c)` with `a ≤ b`, `b ≤ c` but not `a ≤ c`.
    pub transitivity_violations: Vec<(AtomSet, AtomSet, AtomSet)>,
}

impl PreorderReport {
    pub fn is_preorder(&self) -> bool {
        self.reflexivity_violations.is_empty() && self.transitivity_violations.is_empty()
    }
}

/// `⟨X, F, ρ_F⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureAtom<S> {
    sc: ScAtom,
    measure: Measure<S>,
}

impl<S: Scalar> MeasureAtom<S> {
    pub fn new(sc: ScAtom, measure: Measure<S>) -> Result<Self> {
        match &measure {
            Measure::Weights { weights, .. } => {
                if let Some(bad) = weights.keys().find(|s| !sc.admits(s)) {
                    return Err(Error::WeightOutsideFamily { set: bad.clone() });
                }
            }
            Measure::Indicator { pivot, .. } => {
                if !sc.base().contains(pivot) {
                    return Err(Error::MeasureAtomOutsideBase { atom: pivot.clone() });
                }
            }
            Measure::Linear { weights, .. } => {
                if let Some(bad) = weights.keys().find(|a| !sc.base().contains(a)) {
                    return Err(Error::MeasureAtomOutsideBase { atom: bad.clone() });
                }
            }
        }
        Ok(MeasureAtom { sc, measure })
    }

    pub fn sc(&self) -> &ScAtom {
        &self.sc
    }

    pub fn measure(&self) -> &Measure<S> {
        &self.measure
    }

    pub fn base(&self) -> &AtomSet {
        self.sc.base()
    }

    /// `ρ_F(y)`, failing with `OrderDomain` if `y` is outside `F`.
    pub fn value(&self, y: &AtomSet) -> Result<Extended<S>> {
        if !self.sc.admits(y) {
            return Err(Error::OrderDomain { projection: y.clone(), base: self.base().clone() });
        }
        self.measure.value(y).map_err(|e| match e {
            Error::OrderDomain { projection, .. } => {
                Error::OrderDomain { projection, base: self.base().clone() }
            }
            other => other,
        })
    }

    pub fn shifted(&self, c: &S) -> Self {
        MeasureAtom { sc: self.sc.clone(), measure: self.measure.shifted(c) }
    }
}

/// The head of a rule.
#[derive(Clone, Debug, PartialEq)]
pub enum Head<S> {
    Sc(ScAtom),
    Preorder(PreorderAtom<S>),
    Measure(MeasureAtom<S>),
}

impl<S> Head<S> {
    pub fn is_preference(&self) -> bool {
        !matches!(self, Head::Sc(_))
    }
}

/// `red(s)`: the SC atom underneath a head.
pub fn reduct<S>(head: &Head<S>) -> &ScAtom {
    match head {
        Head::Sc(a) => a,
        Head::Preorder(p) => &p.sc,
        Head::Measure(m) => &m.sc,
    }
}

/// `head ← body`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<S> {
    pub head: Head<S>,
    pub body: Vec<ScAtom>,
}

impl<S> Rule<S> {
    pub fn new(head: Head<S>, body: Vec<ScAtom>) -> Self {
        Rule { head, body }
    }

    pub fn fact(head: Head<S>) -> Self {
        Rule { head, body: Vec::new() }
    }
}

/// Which preference atoms a program's heads use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProgramKind {
    /// No preference heads at all.
    Plain,
    Preordered,
    Measure,
}

impl fmt::Display for ProgramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProgramKind::Plain => "plain",
            ProgramKind::Preordered => "pre-ordered",
            ProgramKind::Measure => "measure",
        })
    }
}

/// A preference atom borrowed from a program head.
#[derive(Clone, Copy, Debug)]
pub enum PscRef<'a, S> {
    Preorder(&'a PreorderAtom<S>),
    Measure(&'a MeasureAtom<S>),
}

/// A PSC program: a list of rules over a finite universe.
#[derive(Clone, Debug)]
pub struct Program<S> {
    rules: Vec<Rule<S>>,
    declared: AtomSet,
    universe: AtomSet,
    kind: ProgramKind,
    /// For each rule with a preference head, the index of the first rule
    /// carrying a structurally equal head. Equal heads are the same atom.
    pref_ids: Vec<Option<usize>>,
}

impl<S: Scalar> Program<S> {
    /// Builds a program; `declared` lists extra universe atoms.
    pub fn new(rules: Vec<Rule<S>>, declared: AtomSet) -> Result<Self> {
        let mut kind = ProgramKind::Plain;
        for (i, rule) in rules.iter().enumerate() {
            let this = match rule.head {
                Head::Sc(_) => continue,
                Head::Preorder(_) => ProgramKind::Preordered,
                Head::Measure(_) => ProgramKind::Measure,
            };
            if kind != ProgramKind::Plain && kind != this {
                return Err(Error::MixedKinds { rule: i });
            }
            kind = this;
        }
        let mut universe = declared.clone();
        for rule in &rules {
            universe.extend_from(reduct(&rule.head).base());
            for b in &rule.body {
                universe.extend_from(b.base());
            }
        }
        let mut pref_ids = Vec::with_capacity(rules.len());
        for (i, rule) in rules.iter().enumerate() {
            pref_ids.push(rule.head.is_preference().then(|| {
                rules[..i].iter().position(|r| r.head == rule.head).unwrap_or(i)
            }));
        }
        Ok(Program { rules, declared, universe, kind, pref_ids })
    }

    /// The SC program of a normal logic program, literals encoded by
    /// [`literal_to_sc`]. A headless rule gets the unsatisfiable head `⟨∅, ∅⟩`.
    pub fn from_normal(rules: &[NormalRule]) -> Self {
        let rules = rules.iter().map(NormalRule::to_sc_rule).collect();
        Program::new(rules, AtomSet::new()).expect("plain programs are always well-formed")
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    pub fn universe(&self) -> &AtomSet {
        &self.universe
    }

    pub fn declared(&self) -> &AtomSet {
        &self.declared
    }

    pub fn kind(&self) -> ProgramKind {
        self.kind
    }

    pub(crate) fn pref_id(&self, rule: usize) -> Option<usize> {
        self.pref_ids[rule]
    }

    /// The preference atom with the given id.
    pub fn pref_atom(&self, id: usize) -> PscRef<'_, S> {
        match &self.rules[id].head {
            Head::Preorder(p) => PscRef::Preorder(p),
            Head::Measure(m) => PscRef::Measure(m),
            Head::Sc(_) => panic!("rule {id} has no preference head"),
        }
    }
}

/// `head ← pos, not neg` over plain atoms; no head means a constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalRule {
    pub head: Option<Atom>,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

impl NormalRule {
    pub fn new(head: Option<Atom>, pos: Vec<Atom>, neg: Vec<Atom>) -> Self {
        NormalRule { head, pos, neg }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head.iter().chain(&self.pos).chain(&self.neg)
    }

    pub fn to_sc_rule<S>(&self) -> Rule<S> {
        let head = match &self.head {
            Some(h) => literal_to_sc(h, false),
            None => ScAtom { base: AtomSet::new(), family: Family::Extensional(BTreeSet::new()) },
        };
        let body = self
            .pos
            .iter()
            .map(|a| literal_to_sc(a, false))
            .chain(self.neg.iter().map(|a| literal_to_sc(a, true)))
            .collect();
        Rule::new(Head::Sc(head), body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms;
    use crate::atoms::atom;

    fn sc(base: AtomSet, family: Family) -> ScAtom {
        ScAtom::new(base, family).unwrap()
    }

    #[test]
    fn satisfaction_examples() {
        let a = sc(atoms!["a", "b"], Family::Any);
        assert!(satisfies_sc(&atoms!["a"], &a));

        let choice = sc(atoms!["j1", "j2"], Family::extensional([atoms!["j1"], atoms!["j2"]]));
        assert!(satisfies_sc(&atoms!["j1"], &choice));
        assert!(!satisfies_sc(&atoms!["j1", "j2"], &choice));

        let xs: AtomSet = (1..=8).map(|i| atom(&format!("x{i}"))).collect();
        let even = sc(xs, Family::Even);
        assert!(satisfies_sc(&atoms!["x1", "x3"], &even));
        assert!(!satisfies_sc(&atoms!["x1"], &even));
    }

    #[test]
    fn closure_examples() {
        assert!(satisfies_closure(&atoms![], &sc(atoms!["a", "b"], Family::Even)));
        let card = sc(atoms!["a", "b", "c", "d"], Family::Card { lo: 2, hi: 2 });
        assert!(satisfies_closure(&atoms!["a", "b", "c"], &card));
        let only_ab = sc(atoms!["a", "b"], Family::extensional([atoms!["a", "b"]]));
        assert!(!satisfies_closure(&atoms!["a"], &only_ab));
    }

    #[test]
    fn literal_encoding() {
        let pos = literal_to_sc(&atom("a"), false);
        assert_eq!(pos.base(), &atoms!["a"]);
        assert_eq!(pos.family(), &Family::extensional([atoms!["a"]]));
        let neg = literal_to_sc(&atom("a"), true);
        assert_eq!(neg.family(), &Family::extensional([atoms![]]));
        assert!(satisfies_sc(&atoms!["b"], &neg));
    }

    #[test]
    fn reduct_strips_preferences() {
        let base = sc(atoms!["a", "b"], Family::Any);
        let pre = PreorderAtom::<f64>::new(base.clone(), Preorder::chain(vec![])).unwrap();
        let meas = MeasureAtom::<f64>::new(
            base.clone(),
            Measure::Linear { weights: BTreeMap::new(), offset: 0.0 },
        )
        .unwrap();
        assert_eq!(reduct(&Head::Preorder(pre)), &base);
        assert_eq!(reduct(&Head::Measure(meas)), &base);
        assert_eq!(reduct(&Head::<f64>::Sc(base.clone())), &base);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            ScAtom::new(atoms!["a"], Family::extensional([atoms!["b"]])),
            Err(Error::FamilyNotSubset { .. })
        ));
        assert!(matches!(
            ScAtom::new(atoms!["a"], Family::Card { lo: 2, hi: 1 }),
            Err(Error::CardBounds { lo: 2, hi: 1 })
        ));
        let base = sc(atoms!["r", "t"], Family::Any);
        assert!(matches!(
            PreorderAtom::<f64>::new(base.clone(), Preorder::chain(vec![atoms!["r"], atoms!["z"]])),
            Err(Error::OrderOutsideFamily { .. })
        ));
        assert!(matches!(
            PreorderAtom::<f64>::new(base, Preorder::chain(vec![atoms!["r"], atoms!["r"]])),
            Err(Error::ChainRepeats { .. })
        ));
    }

    #[test]
    fn mixed_kinds_rejected() {
        let base = sc(atoms!["a"], Family::Any);
        let pre = PreorderAtom::<f64>::new(base.clone(), Preorder::chain(vec![])).unwrap();
        let meas = MeasureAtom::new(
            base,
            Measure::Indicator {
                pivot: atom("a"),
                if_in: Extended::Finite(0.0),
                if_out: Extended::Finite(1.0),
            },
        )
        .unwrap();
        let rules = vec![Rule::fact(Head::Preorder(pre)), Rule::fact(Head::Measure(meas))];
        assert_eq!(Program::new(rules, AtomSet::new()).unwrap_err(), Error::MixedKinds { rule: 1 });
    }

    #[test]
    fn pairs_are_closed() {
        let order: Preorder<f64> = Preorder::pairs([
            (atoms!["a"], atoms!["b"]),
            (atoms!["b"], atoms!["c"]),
        ]);
        assert!(order.leq(&atoms!["a"], &atoms!["c"]).unwrap());
        assert!(order.leq(&atoms!["b"], &atoms!["b"]).unwrap());
        assert!(!order.leq(&atoms!["c"], &atoms!["a"]).unwrap());
        // Sets never mentioned are related to themselves only.
        assert!(order.leq(&atoms![], &atoms![]).unwrap());
        assert!(!order.leq(&atoms![], &atoms!["a"]).unwrap());
    }

    #[test]
    fn measures() {
        let lin: Measure<f64> = Measure::Linear {
            weights: [(atom("t"), 500.0), (atom("d(120)"), 120.0)].into_iter().collect(),
            offset: 0.0,
        };
        assert_eq!(lin.value(&atoms!["t", "d(120)"]).unwrap(), Extended::Finite(620.0));
        let w: Measure<f64> = Measure::Weights { weights: BTreeMap::new(), default: None };
        assert!(matches!(w.value(&atoms!["a"]), Err(Error::OrderDomain { .. })));
    }

    #[test]
    fn constraint_encoding_is_unsatisfiable_head() {
        let rule: Rule<f64> = NormalRule::new(None, vec![atom("a")], vec![]).to_sc_rule();
        assert!(!satisfies_sc(&atoms!["a"], reduct(&rule.head)));
        assert!(!satisfies_sc(&atoms![], reduct(&rule.head)));
    }
}
