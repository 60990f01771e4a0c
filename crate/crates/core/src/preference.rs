//! Ranking stable models with preference atoms.
//!
//! Pre-ordered atoms compare two models by the product of their local
//! orders; measure atoms compare them by summed measure values. At the
//! program level the atoms taking part are the heads of rules whose body
//! the model satisfies, and the five order modes differ in how the two
//! models' atom sets are combined.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::atoms::AtomSet;
use crate::engine::enumerate_stable;
use crate::error::{Error, Result};
use crate::model::{satisfies_sc, MeasureAtom, PreorderAtom, Program, ProgramKind, PscRef};
use crate::scalar::{Extended, Scalar};

/// Outcome of comparing two models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompareVerdict {
    FirstPreferred,
    SecondPreferred,
    /// Mutually `≤` on every pre-ordered atom, or equal measure sums.
    Equivalent,
    /// Neither is strictly preferred and they are not equivalent.
    Indistinguishable,
}

impl CompareVerdict {
    /// The verdict with the two models swapped.
    pub fn mirror(self) -> Self {
        match self {
            CompareVerdict::FirstPreferred => CompareVerdict::SecondPreferred,
            CompareVerdict::SecondPreferred => CompareVerdict::FirstPreferred,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CompareVerdict::FirstPreferred => "first-preferred",
            CompareVerdict::SecondPreferred => "second-preferred",
            CompareVerdict::Equivalent => "equivalent",
            CompareVerdict::Indistinguishable => "indistinguishable",
        }
    }
}

impl fmt::Display for CompareVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the preference atoms of two models are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderMode {
    /// In common: only atoms both models activate.
    Ic,
    /// In total: activating more atoms is better.
    It,
    /// In common, weakly (measure sums).
    WIc,
    /// In total, weakly.
    WIt,
    /// Each model's own sum over all atoms it activates.
    WIs,
}

impl OrderMode {
    pub const ALL: [OrderMode; 5] =
        [OrderMode::Ic, OrderMode::It, OrderMode::WIc, OrderMode::WIt, OrderMode::WIs];

    pub fn is_weak(self) -> bool {
        matches!(self, OrderMode::WIc | OrderMode::WIt | OrderMode::WIs)
    }

    pub fn applies_to(self, kind: ProgramKind) -> bool {
        match kind {
            ProgramKind::Plain => true,
            ProgramKind::Preordered => !self.is_weak(),
            ProgramKind::Measure => self.is_weak(),
        }
    }

    /// `ic` for pre-ordered programs, `w-is` for measure programs.
    pub fn default_for(kind: ProgramKind) -> Self {
        match kind {
            ProgramKind::Measure => OrderMode::WIs,
            _ => OrderMode::Ic,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrderMode::Ic => "ic",
            OrderMode::It => "it",
            OrderMode::WIc => "w-ic",
            OrderMode::WIt => "w-it",
            OrderMode::WIs => "w-is",
        }
    }
}

impl fmt::Display for OrderMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        OrderMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown order mode `{s}` (expected ic, it, w-ic, w-it or w-is)"))
    }
}

fn require_model(sc_model: &AtomSet, atom: &crate::model::ScAtom) -> Result<()> {
    if satisfies_sc(sc_model, atom) {
        Ok(())
    } else {
        Err(Error::NotAModel { model: sc_model.clone(), base: atom.base().clone() })
    }
}

/// Per-atom comparison of two models on a set of pre-ordered atoms.
struct Product {
    le12: bool,
    le21: bool,
    strict12: bool,
    strict21: bool,
}

fn product<S: Scalar>(t: &[&PreorderAtom<S>], m1: &AtomSet, m2: &AtomSet) -> Result<Product> {
    let mut out = Product { le12: true, le21: true, strict12: false, strict21: false };
    for a in t {
        require_model(m1, a.sc())?;
        require_model(m2, a.sc())?;
        let y1 = m1.intersection(a.base());
        let y2 = m2.intersection(a.base());
        let le12 = a.leq(&y1, &y2)?;
        let le21 = a.leq(&y2, &y1)?;
        out.le12 &= le12;
        out.le21 &= le21;
        out.strict12 |= le12 && !le21;
        out.strict21 |= le21 && !le12;
    }
    Ok(out)
}

/// `T ⊨ M1 ≺ M2`, `T ⊨ M2 ≺ M1`, `T ⊨ M1 ∼ M2`, or neither.
///
/// An empty `T` yields `Indistinguishable`: no atom can witness a strict
/// preference, and equivalence is reserved for a nonempty comparison.
pub fn compare_preordered_set<S: Scalar>(
    t: &[&PreorderAtom<S>],
    m1: &AtomSet,
    m2: &AtomSet,
) -> Result<CompareVerdict> {
    let p = product(t, m1, m2)?;
    Ok(if t.is_empty() {
        CompareVerdict::Indistinguishable
    } else if p.le12 && p.strict12 {
        CompareVerdict::FirstPreferred
    } else if p.le21 && p.strict21 {
        CompareVerdict::SecondPreferred
    } else if p.le12 && p.le21 {
        CompareVerdict::Equivalent
    } else {
        CompareVerdict::Indistinguishable
    })
}

/// `T ⊨ M1 ∼ M2`: both directions of `≤` on every atom (vacuous on `∅`).
pub fn preordered_equivalent<S: Scalar>(
    t: &[&PreorderAtom<S>],
    m1: &AtomSet,
    m2: &AtomSet,
) -> Result<bool> {
    let p = product(t, m1, m2)?;
    Ok(p.le12 && p.le21)
}

/// `Σ ρ_F(M ∩ X)` over the atoms of `T`.
pub fn weak_sum<S: Scalar>(t: &[&MeasureAtom<S>], m: &AtomSet) -> Result<Extended<S>> {
    t.iter().try_fold(Extended::zero(), |acc, a| {
        let v = a.value(&m.intersection(a.base()))?;
        acc.checked_add(&v).ok_or(Error::MixedInfinity)
    })
}

fn order_sums<S: Scalar>(s1: &Extended<S>, s2: &Extended<S>) -> CompareVerdict {
    match s1.compare(s2) {
        Some(Ordering::Less) => CompareVerdict::FirstPreferred,
        Some(Ordering::Greater) => CompareVerdict::SecondPreferred,
        Some(Ordering::Equal) => CompareVerdict::Equivalent,
        None => CompareVerdict::Indistinguishable,
    }
}

/// Weak preference: the smaller measure sum wins; equal sums are equivalent.
pub fn compare_measure_set<S: Scalar>(
    t: &[&MeasureAtom<S>],
    m1: &AtomSet,
    m2: &AtomSet,
) -> Result<CompareVerdict> {
    Ok(order_sums(&weak_sum(t, m1)?, &weak_sum(t, m2)?))
}

/// `pref(P, M)` as a set of preference-atom ids; see [`Program::pref_atom`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefSet(BTreeSet<usize>);

impl PrefSet {
    pub fn ids(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersection(&self, other: &PrefSet) -> PrefSet {
        PrefSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_proper_superset(&self, other: &PrefSet) -> bool {
        self.0.len() > other.0.len() && self.0.is_superset(&other.0)
    }
}

/// The preference heads of rules whose body `M` satisfies.
pub fn pref_set<S: Scalar>(p: &Program<S>, m: &AtomSet) -> PrefSet {
    PrefSet(
        p.rules()
            .iter()
            .enumerate()
            .filter_map(|(i, rule)| {
                let id = p.pref_id(i)?;
                rule.body.iter().all(|b| satisfies_sc(m, b)).then_some(id)
            })
            .collect(),
    )
}

/// The atoms behind a [`PrefSet`].
pub fn pref_atoms<'a, S: Scalar>(p: &'a Program<S>, set: &PrefSet) -> Vec<PscRef<'a, S>> {
    set.ids().iter().map(|&id| p.pref_atom(id)).collect()
}

fn preorder_atoms<'a, S: Scalar>(p: &'a Program<S>, set: &PrefSet) -> Vec<&'a PreorderAtom<S>> {
    pref_atoms(p, set)
        .into_iter()
        .filter_map(|a| match a {
            PscRef::Preorder(a) => Some(a),
            PscRef::Measure(_) => None,
        })
        .collect()
}

fn measure_atoms<'a, S: Scalar>(p: &'a Program<S>, set: &PrefSet) -> Vec<&'a MeasureAtom<S>> {
    pref_atoms(p, set)
        .into_iter()
        .filter_map(|a| match a {
            PscRef::Measure(a) => Some(a),
            PscRef::Preorder(_) => None,
        })
        .collect()
}

fn check_mode<S: Scalar>(p: &Program<S>, mode: OrderMode) -> Result<()> {
    if mode.applies_to(p.kind()) {
        Ok(())
    } else {
        Err(Error::ModeMismatch { mode: mode.to_string(), kind: p.kind().to_string() })
    }
}

fn compare_with<S: Scalar>(
    p: &Program<S>,
    mode: OrderMode,
    (m1, p1): (&AtomSet, &PrefSet),
    (m2, p2): (&AtomSet, &PrefSet),
) -> Result<CompareVerdict> {
    use CompareVerdict::*;
    let common = p1.intersection(p2);
    match mode {
        OrderMode::Ic => compare_preordered_set(&preorder_atoms(p, &common), m1, m2),
        OrderMode::WIc => compare_measure_set(&measure_atoms(p, &common), m1, m2),
        OrderMode::It | OrderMode::WIt => {
            let (verdict, equivalent) = if mode == OrderMode::It {
                let t = preorder_atoms(p, &common);
                (compare_preordered_set(&t, m1, m2)?, preordered_equivalent(&t, m1, m2)?)
            } else {
                let v = compare_measure_set(&measure_atoms(p, &common), m1, m2)?;
                (v, v == Equivalent)
            };
            Ok(if p1 == p2 {
                verdict
            } else if p1.is_proper_superset(p2) && (verdict == FirstPreferred || equivalent) {
                FirstPreferred
            } else if p2.is_proper_superset(p1) && (verdict == SecondPreferred || equivalent) {
                SecondPreferred
            } else {
                Indistinguishable
            })
        }
        OrderMode::WIs => {
            let s1 = weak_sum(&measure_atoms(p, p1), m1)?;
            let s2 = weak_sum(&measure_atoms(p, p2), m2)?;
            Ok(order_sums(&s1, &s2))
        }
    }
}

/// Compares two stable models of `P` under `mode`.
pub fn compare_models<S: Scalar>(
    p: &Program<S>,
    m1: &AtomSet,
    m2: &AtomSet,
    mode: OrderMode,
) -> Result<CompareVerdict> {
    check_mode(p, mode)?;
    let p1 = pref_set(p, m1);
    let p2 = pref_set(p, m2);
    compare_with(p, mode, (m1, &p1), (m2, &p2))
}

/// The stable models that no other stable model strictly beats.
pub fn preferred_models<S: Scalar>(
    p: &Program<S>,
    mode: OrderMode,
    cap: usize,
) -> Result<Vec<AtomSet>> {
    check_mode(p, mode)?;
    let models = enumerate_stable(p, cap)?;
    preferred_among(p, &models, mode)
}

/// Filters `models`, which must be stable models of `P`, down to the
/// undominated ones, keeping their order.
pub fn preferred_among<S: Scalar>(
    p: &Program<S>,
    models: &[AtomSet],
    mode: OrderMode,
) -> Result<Vec<AtomSet>> {
    check_mode(p, mode)?;
    let prefs: Vec<PrefSet> = models.iter().map(|m| pref_set(p, m)).collect();
    let keep: Vec<bool> = (0..models.len())
        .into_par_iter()
        .map(|i| -> Result<bool> {
            for j in 0..models.len() {
                if i == j {
                    continue;
                }
                let v = compare_with(p, mode, (&models[j], &prefs[j]), (&models[i], &prefs[i]))?;
                if v == CompareVerdict::FirstPreferred {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<_>>()?;
    Ok(models.iter().zip(keep).filter(|(_, k)| *k).map(|(m, _)| m.clone()).collect())
}

/// Verdicts for every ordered pair of `models`.
pub fn verdict_matrix<S: Scalar>(
    p: &Program<S>,
    models: &[AtomSet],
    mode: OrderMode,
) -> Result<Vec<Vec<CompareVerdict>>> {
    check_mode(p, mode)?;
    let prefs: Vec<PrefSet> = models.iter().map(|m| pref_set(p, m)).collect();
    (0..models.len())
        .map(|i| {
            (0..models.len())
                .map(|j| compare_with(p, mode, (&models[i], &prefs[i]), (&models[j], &prefs[j])))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms;
    use crate::model::{Family, Preorder, ScAtom};

    fn chain_atom(base: AtomSet, chain: Vec<AtomSet>) -> PreorderAtom<f64> {
        PreorderAtom::new(ScAtom::new(base, Family::Any).unwrap(), Preorder::chain(chain)).unwrap()
    }

    #[test]
    fn empty_set_of_atoms() {
        let v = compare_preordered_set::<f64>(&[], &atoms!["a"], &atoms!["b"]).unwrap();
        assert_eq!(v, CompareVerdict::Indistinguishable);
        assert!(preordered_equivalent::<f64>(&[], &atoms!["a"], &atoms!["b"]).unwrap());
        assert_eq!(weak_sum::<f64>(&[], &atoms!["a"]).unwrap(), Extended::Finite(0.0));
    }

    #[test]
    fn equivalent_pairs() {
        let order = Preorder::pairs([(atoms!["a"], atoms!["b"]), (atoms!["b"], atoms!["a"])]);
        let atom = PreorderAtom::<f64>::new(ScAtom::new(atoms!["a", "b"], Family::Any).unwrap(), order)
            .unwrap();
        let v = compare_preordered_set(&[&atom], &atoms!["a"], &atoms!["b"]).unwrap();
        assert_eq!(v, CompareVerdict::Equivalent);
    }

    #[test]
    fn chain_strictness_and_precondition() {
        let atom = chain_atom(atoms!["a", "b"], vec![atoms!["a"], atoms!["b"]]);
        assert_eq!(
            compare_preordered_set(&[&atom], &atoms!["a"], &atoms!["b"]).unwrap(),
            CompareVerdict::FirstPreferred
        );
        assert_eq!(
            compare_preordered_set(&[&atom], &atoms!["b"], &atoms!["a"]).unwrap(),
            CompareVerdict::SecondPreferred
        );
        // {a,b} and {} are in the family but unranked by the chain.
        assert_eq!(
            compare_preordered_set(&[&atom], &atoms!["a", "b"], &atoms![]).unwrap(),
            CompareVerdict::Indistinguishable
        );
        let narrow = PreorderAtom::<f64>::new(
            ScAtom::new(atoms!["a", "b"], Family::extensional([atoms!["a"], atoms!["b"]])).unwrap(),
            Preorder::chain(vec![atoms!["a"], atoms!["b"]]),
        )
        .unwrap();
        assert!(matches!(
            compare_preordered_set(&[&narrow], &atoms![], &atoms!["a"]),
            Err(Error::NotAModel { .. })
        ));
    }

    #[test]
    fn measure_comparisons() {
        use crate::model::Measure;
        let inf = MeasureAtom::<f64>::new(
            ScAtom::new(atoms!["a"], Family::Any).unwrap(),
            Measure::Indicator { pivot: crate::atoms::atom("a"), if_in: Extended::NegInf, if_out: Extended::Finite(5.0) },
        )
        .unwrap();
        assert_eq!(
            compare_measure_set(&[&inf], &atoms!["a"], &atoms![]).unwrap(),
            CompareVerdict::FirstPreferred
        );
        assert_eq!(
            compare_measure_set(&[&inf], &atoms![], &atoms![]).unwrap(),
            CompareVerdict::Equivalent
        );
        let pos = MeasureAtom::<f64>::new(
            ScAtom::new(atoms!["b"], Family::Any).unwrap(),
            Measure::Indicator { pivot: crate::atoms::atom("b"), if_in: Extended::PosInf, if_out: Extended::Finite(0.0) },
        )
        .unwrap();
        assert_eq!(weak_sum(&[&inf, &pos], &atoms!["a", "b"]), Err(Error::MixedInfinity));
    }

    #[test]
    fn mode_parsing() {
        for m in OrderMode::ALL {
            assert_eq!(m.as_str().parse::<OrderMode>().unwrap(), m);
        }
        assert!("wis".parse::<OrderMode>().is_err());
    }
}
