//! Brute-force reference semantics.
//!
//! Everything here re-derives the definitions directly over the full
//! universe and shares only data types with the engine: set families are
//! tested member by member, upper closures are searched subset by subset,
//! and preference orders are re-read from their raw data. The functions
//! are exponential and meant for cross-checking small instances.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::model::{Family, Head, Measure, NormalRule, Preorder, Program, ScAtom};
use crate::preference::OrderMode;
use crate::scalar::{Extended, Scalar};

/// Largest universe the oracles accept by default.
pub const ORACLE_CAP: usize = 16;

fn all_subsets(atoms: &[Atom]) -> impl Iterator<Item = AtomSet> + '_ {
    (0u64..1 << atoms.len()).map(move |mask| {
        atoms.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, a)| a.clone()).collect()
    })
}

/// Gelfond–Lifschitz stable models of a normal program. Constraints
/// (headless rules) discard every candidate whose reduct fires them.
pub fn gl_stable_models(rules: &[NormalRule], cap: usize) -> Result<Vec<AtomSet>> {
    let atoms: BTreeSet<Atom> = rules.iter().flat_map(|r| r.atoms().cloned()).collect();
    if atoms.len() > cap {
        return Err(Error::CapExceeded { support: atoms.len(), cap });
    }
    let atoms: Vec<Atom> = atoms.into_iter().collect();
    let mut out = Vec::new();
    for m in all_subsets(&atoms) {
        let reduct: Vec<&NormalRule> =
            rules.iter().filter(|r| r.neg.iter().all(|b| !m.contains(b))).collect();
        let mut lm = AtomSet::new();
        let mut violated = false;
        loop {
            let mut changed = false;
            for r in &reduct {
                if r.pos.iter().all(|a| lm.contains(a)) {
                    match &r.head {
                        Some(h) => changed |= lm.insert(h.clone()),
                        None => violated = true,
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if lm == m && !violated {
            out.push(m);
        }
    }
    out.sort();
    Ok(out)
}

fn member(y: &AtomSet, a: &ScAtom) -> bool {
    match a.family() {
        Family::Extensional(ms) => ms.iter().any(|z| z == y),
        Family::Even => y.len().is_multiple_of(2),
        Family::Card { lo, hi } => *lo <= y.len() && y.len() <= *hi,
        Family::Any => true,
    }
}

fn sat(m: &AtomSet, a: &ScAtom) -> bool {
    let y: AtomSet = m.iter().filter(|x| a.base().contains(x)).cloned().collect();
    member(&y, a)
}

/// `M ∩ X` lies in the upper closure iff some subset of it is in `F`.
fn sat_closed(m: &AtomSet, a: &ScAtom) -> bool {
    let y: Vec<Atom> = m.iter().filter(|x| a.base().contains(x)).cloned().collect();
    let found = all_subsets(&y).any(|z| member(&z, a));
    found
}

fn head_sc<S>(h: &Head<S>) -> &ScAtom {
    crate::model::reduct(h)
}

fn stable_over_universe<S: Scalar>(p: &Program<S>, m: &AtomSet) -> bool {
    let mut horn: Vec<(Atom, &[ScAtom])> = Vec::new();
    for rule in p.rules() {
        let fires = rule.body.iter().all(|b| sat(m, b));
        if fires && !sat(m, head_sc(&rule.head)) {
            return false;
        }
        if fires {
            for a in head_sc(&rule.head).base().iter().filter(|a| m.contains(a)) {
                horn.push((a.clone(), &rule.body));
            }
        }
    }
    let mut n = AtomSet::new();
    loop {
        let next: AtomSet = horn
            .iter()
            .filter(|(_, body)| body.iter().all(|b| sat_closed(&n, b)))
            .map(|(a, _)| a.clone())
            .collect();
        if next == n {
            break;
        }
        n = next;
    }
    n == *m
}

/// SC stable models found by checking every subset of the universe.
pub fn oracle_stable_models<S: Scalar>(p: &Program<S>, cap: usize) -> Result<Vec<AtomSet>> {
    let universe = p.universe().to_vec();
    if universe.len() > cap {
        return Err(Error::CapExceeded { support: universe.len(), cap });
    }
    let mut out: Vec<AtomSet> = all_subsets(&universe).filter(|m| stable_over_universe(p, m)).collect();
    out.sort();
    Ok(out)
}

fn project(m: &AtomSet, base: &AtomSet) -> AtomSet {
    m.iter().filter(|x| base.contains(x)).cloned().collect()
}

fn order_leq<S: Scalar>(order: &Preorder<S>, a: &AtomSet, b: &AtomSet) -> Result<bool> {
    match order {
        Preorder::Chain(sets) => {
            if a == b {
                return Ok(true);
            }
            let mut seen_a = false;
            for s in sets {
                if s == a {
                    seen_a = true;
                } else if s == b {
                    return Ok(seen_a);
                }
            }
            Ok(false)
        }
        Preorder::Pairs { listed, .. } => {
            // Breadth-first reachability from a along the listed pairs.
            let mut seen = BTreeSet::from([a.clone()]);
            let mut queue = VecDeque::from([a.clone()]);
            while let Some(x) = queue.pop_front() {
                if x == *b {
                    return Ok(true);
                }
                for (l, r) in listed {
                    if *l == x && seen.insert(r.clone()) {
                        queue.push_back(r.clone());
                    }
                }
            }
            Ok(false)
        }
        Preorder::Rank { weights, default } => {
            let w = |s: &AtomSet| -> Result<S> {
                match weights.iter().find(|(k, _)| *k == s) {
                    Some((_, v)) => Ok(v.clone()),
                    None => default
                        .clone()
                        .ok_or(Error::OrderDomain { projection: s.clone(), base: AtomSet::new() }),
                }
            };
            Ok(w(a)? <= w(b)?)
        }
        Preorder::Relation(rel) => Ok(rel.pairs().any(|(l, r)| l == a && r == b)),
    }
}

fn measure_value<S: Scalar>(m: &Measure<S>, y: &AtomSet) -> Result<Extended<S>> {
    match m {
        Measure::Weights { weights, default } => weights
            .iter()
            .find(|(k, _)| *k == y)
            .map(|(_, v)| v.clone())
            .or_else(|| default.clone())
            .ok_or(Error::OrderDomain { projection: y.clone(), base: AtomSet::new() }),
        Measure::Indicator { pivot, if_in, if_out } => {
            Ok(if y.iter().any(|x| x == pivot) { if_in.clone() } else { if_out.clone() })
        }
        Measure::Linear { weights, offset } => {
            let mut total = offset.clone();
            for x in y {
                if let Some(w) = weights.get(x) {
                    total = total + w.clone();
                }
            }
            Ok(Extended::Finite(total))
        }
    }
}

/// Sum of extended values: track the finite part and which infinities occur.
fn extended_sum<S: Scalar>(values: Vec<Extended<S>>) -> Result<Extended<S>> {
    let (mut pos, mut neg) = (false, false);
    let mut finite = S::zero();
    for v in values {
        match v {
            Extended::PosInf => pos = true,
            Extended::NegInf => neg = true,
            Extended::Finite(x) => finite = finite + x,
        }
    }
    match (pos, neg) {
        (true, true) => Err(Error::MixedInfinity),
        (true, false) => Ok(Extended::PosInf),
        (false, true) => Ok(Extended::NegInf),
        (false, false) => Ok(Extended::Finite(finite)),
    }
}

fn extended_cmp<S: Scalar>(a: &Extended<S>, b: &Extended<S>) -> Ordering {
    let tier = |v: &Extended<S>| match v {
        Extended::NegInf => 0,
        Extended::Finite(_) => 1,
        Extended::PosInf => 2,
    };
    match (a, b) {
        (Extended::Finite(x), Extended::Finite(y)) => x.partial_cmp(y).unwrap_or(Ordering::Equal),
        _ => tier(a).cmp(&tier(b)),
    }
}

/// Distinct preference heads activated by `m`.
fn activated<'a, S: Scalar>(p: &'a Program<S>, m: &AtomSet) -> Vec<&'a Head<S>> {
    let mut out: Vec<&Head<S>> = Vec::new();
    for rule in p.rules() {
        if matches!(rule.head, Head::Sc(_)) || !rule.body.iter().all(|b| sat(m, b)) {
            continue;
        }
        if !out.iter().any(|h| **h == rule.head) {
            out.push(&rule.head);
        }
    }
    out
}

fn common<'a, S: Scalar>(x: &[&'a Head<S>], y: &[&'a Head<S>]) -> Vec<&'a Head<S>> {
    x.iter().filter(|h| y.contains(h)).copied().collect()
}

fn same_set<S: Scalar>(x: &[&Head<S>], y: &[&Head<S>]) -> bool {
    x.len() == y.len() && x.iter().all(|h| y.contains(h))
}

fn proper_superset<S: Scalar>(x: &[&Head<S>], y: &[&Head<S>]) -> bool {
    x.len() > y.len() && y.iter().all(|h| x.contains(h))
}

/// (`∀ ≤`, `∃ <`, `∀ ≥`) of `a` against `b` over pre-ordered heads.
fn local_orders<S: Scalar>(heads: &[&Head<S>], a: &AtomSet, b: &AtomSet) -> Result<(bool, bool, bool)> {
    let (mut all_le, mut some_lt, mut all_ge) = (true, false, true);
    for h in heads {
        let Head::Preorder(atom) = h else { continue };
        let ya = project(a, atom.base());
        let yb = project(b, atom.base());
        for y in [&ya, &yb] {
            if !member(y, atom.sc()) {
                return Err(Error::OrderDomain { projection: y.clone(), base: atom.base().clone() });
            }
        }
        let le = order_leq(atom.order(), &ya, &yb)?;
        let ge = order_leq(atom.order(), &yb, &ya)?;
        all_le &= le;
        all_ge &= ge;
        some_lt |= le && !ge;
    }
    Ok((all_le, some_lt, all_ge))
}

fn sum_over<S: Scalar>(heads: &[&Head<S>], m: &AtomSet) -> Result<Extended<S>> {
    let mut values = Vec::new();
    for h in heads {
        let Head::Measure(atom) = h else { continue };
        let y = project(m, atom.base());
        if !member(&y, atom.sc()) {
            return Err(Error::OrderDomain { projection: y, base: atom.base().clone() });
        }
        values.push(measure_value(atom.measure(), &y)?);
    }
    extended_sum(values)
}

/// Whether `challenger` is strictly preferred to `incumbent` under `mode`.
fn beats<S: Scalar>(p: &Program<S>, mode: OrderMode, challenger: &AtomSet, incumbent: &AtomSet) -> Result<bool> {
    let pc = activated(p, challenger);
    let pi = activated(p, incumbent);
    let both = common(&pc, &pi);
    Ok(match mode {
        OrderMode::Ic => {
            let (le, lt, _) = local_orders(&both, challenger, incumbent)?;
            !both.is_empty() && le && lt
        }
        OrderMode::It => {
            let (le, lt, ge) = local_orders(&both, challenger, incumbent)?;
            let strict = !both.is_empty() && le && lt;
            (same_set(&pc, &pi) && strict) || (proper_superset(&pc, &pi) && (strict || (le && ge)))
        }
        OrderMode::WIc => {
            extended_cmp(&sum_over(&both, challenger)?, &sum_over(&both, incumbent)?) == Ordering::Less
        }
        OrderMode::WIt => {
            let ord = extended_cmp(&sum_over(&both, challenger)?, &sum_over(&both, incumbent)?);
            (same_set(&pc, &pi) && ord == Ordering::Less)
                || (proper_superset(&pc, &pi) && ord != Ordering::Greater)
        }
        OrderMode::WIs => {
            extended_cmp(&sum_over(&pc, challenger)?, &sum_over(&pi, incumbent)?) == Ordering::Less
        }
    })
}

/// Preferred stable models by the all-pairs definition.
pub fn oracle_preferred<S: Scalar>(p: &Program<S>, mode: OrderMode, cap: usize) -> Result<Vec<AtomSet>> {
    let kind_ok = match p.kind() {
        crate::model::ProgramKind::Plain => true,
        crate::model::ProgramKind::Preordered => matches!(mode, OrderMode::Ic | OrderMode::It),
        crate::model::ProgramKind::Measure => {
            matches!(mode, OrderMode::WIc | OrderMode::WIt | OrderMode::WIs)
        }
    };
    if !kind_ok {
        return Err(Error::ModeMismatch { mode: mode.to_string(), kind: p.kind().to_string() });
    }
    let models = oracle_stable_models(p, cap)?;
    let mut out = Vec::new();
    for m in &models {
        let mut dominated = false;
        for other in &models {
            if other != m && beats(p, mode, other, m)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(m.clone());
        }
    }
    Ok(out)
}

/// Brute-force vertex covers of the encoded kind: every edge has exactly
/// one endpoint in the set, and the set has fewer than `k` vertices.
/// Returns the ones minimizing the pivot indicator (0 in, 1 out).
pub fn oracle_exact_covers(vertices: &AtomSet, edges: &[(Atom, Atom)], k: usize, pivot: &Atom) -> Vec<AtomSet> {
    let vs = vertices.to_vec();
    let covers: Vec<AtomSet> = all_subsets(&vs)
        .filter(|u| u.len() < k)
        .filter(|u| edges.iter().all(|(a, b)| u.contains(a) != u.contains(b)))
        .collect();
    let cost = |u: &AtomSet| usize::from(!u.contains(pivot));
    let Some(best) = covers.iter().map(cost).min() else {
        return Vec::new();
    };
    let mut out: Vec<AtomSet> = covers.into_iter().filter(|u| cost(u) == best).collect();
    out.sort();
    out
}

/// Materializes the upper closure `{Y ⊆ X | ∃ Z ∈ F, Z ⊆ Y}`.
pub fn materialize_closure(a: &ScAtom) -> BTreeSet<AtomSet> {
    let base = a.base().to_vec();
    let members: Vec<AtomSet> = all_subsets(&base).filter(|z| member(z, a)).collect();
    all_subsets(&base).filter(|y| members.iter().any(|z| z.is_subset(y))).collect()
}
