//! Stable models of SC programs.
//!
//! `M` is stable for `P` when it is a model of `red(P)` and coincides with
//! the least model of the Horn program `NSS(P, M)`. Enumeration checks
//! every subset of the head support, the union of the head bases, since
//! the NSS transform only ever derives atoms drawn from head bases.

use rayon::prelude::*;

use crate::atoms::{select, Atom, AtomSet};
use crate::error::{Error, Result};
use crate::model::{reduct, satisfies_closure, satisfies_sc, Family, Program, ScAtom};
use crate::scalar::Scalar;

/// Default bound on the number of head-support atoms for exhaustive search.
pub const DEFAULT_CAP: usize = 22;

/// Hard bound imposed by the 64-bit candidate encoding.
pub const MAX_SUPPORT: usize = 63;

/// `p ← b1, …, bn` with every body atom read through its upper closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornRule {
    pub head: Atom,
    pub body: Vec<ScAtom>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HornProgram {
    pub rules: Vec<HornRule>,
}

impl HornProgram {
    fn head_count(&self) -> usize {
        self.rules.iter().map(|r| &r.head).collect::<std::collections::BTreeSet<_>>().len()
    }
}

/// One-step provability `T_H(M)`.
pub fn tp_step(h: &HornProgram, m: &AtomSet) -> AtomSet {
    h.rules
        .iter()
        .filter(|r| r.body.iter().all(|b| satisfies_closure(m, b)))
        .map(|r| r.head.clone())
        .collect()
}

/// Least fixpoint of `T_H`, iterated from the empty set.
pub fn least_model(h: &HornProgram) -> AtomSet {
    let limit = h.head_count() + 1;
    let mut current = AtomSet::new();
    for _ in 0..=limit {
        let next = tp_step(h, &current);
        if next == current {
            return current;
        }
        current = next;
    }
    panic!("T_P did not reach a fixpoint within {limit} steps");
}

/// `NSS(P, M)`: drop rules whose body `M` falsifies, then emit
/// `a ← closed(body)` for every `a ∈ X ∩ M` of each remaining head `⟨X, F⟩`.
pub fn nss_transform<S: Scalar>(p: &Program<S>, m: &AtomSet) -> HornProgram {
    let mut rules = Vec::new();
    for rule in p.rules() {
        if !rule.body.iter().all(|b| satisfies_sc(m, b)) {
            continue;
        }
        for a in reduct(&rule.head).base().intersection(m) {
            rules.push(HornRule { head: a, body: rule.body.clone() });
        }
    }
    HornProgram { rules }
}

/// Whether `M` is a model of `red(P)`.
pub fn is_model<S: Scalar>(p: &Program<S>, m: &AtomSet) -> bool {
    p.rules().iter().all(|rule| {
        !rule.body.iter().all(|b| satisfies_sc(m, b)) || satisfies_sc(m, reduct(&rule.head))
    })
}

pub fn is_stable<S: Scalar>(p: &Program<S>, m: &AtomSet) -> bool {
    is_model(p, m) && least_model(&nss_transform(p, m)) == *m
}

/// Union of the base sets of all rule heads.
pub fn head_support<S: Scalar>(p: &Program<S>) -> AtomSet {
    let mut out = AtomSet::new();
    for rule in p.rules() {
        out.extend_from(reduct(&rule.head).base());
    }
    out
}

/// All stable models, in canonical order.
pub fn enumerate_stable<S: Scalar>(p: &Program<S>, cap: usize) -> Result<Vec<AtomSet>> {
    let compiled = Compiled::new(p, cap)?;
    let count = 1u64 << compiled.support.len();
    let mut masks: Vec<u64> = if compiled.support.len() >= 12 {
        (0..count).into_par_iter().filter(|&m| compiled.is_stable(m)).collect()
    } else {
        (0..count).filter(|&m| compiled.is_stable(m)).collect()
    };
    masks.sort_unstable();
    let mut models: Vec<AtomSet> =
        masks.into_iter().map(|m| select(&compiled.support, m)).collect();
    models.sort();
    Ok(models)
}

/// A family restricted to the head support, as bit masks.
#[derive(Debug)]
enum MaskFamily {
    Extensional(Vec<u64>),
    Even,
    Card { lo: u32, hi: u32 },
    Any,
}

#[derive(Debug)]
struct MaskAtom {
    base: u64,
    family: MaskFamily,
}

impl MaskAtom {
    fn new(a: &ScAtom, support: &[Atom]) -> Self {
        let mask_of = |s: &AtomSet| -> Option<u64> {
            s.iter().try_fold(0u64, |acc, x| {
                support.binary_search(x).ok().map(|i| acc | 1 << i)
            })
        };
        let base = a.base().iter().fold(0u64, |acc, x| match support.binary_search(x) {
            Ok(i) => acc | 1 << i,
            Err(_) => acc,
        });
        let family = match a.family() {
            // A member naming an atom outside the support can never be met,
            // since candidates are subsets of the support.
            Family::Extensional(members) => {
                MaskFamily::Extensional(members.iter().filter_map(mask_of).collect())
            }
            Family::Even => MaskFamily::Even,
            Family::Card { lo, hi } => MaskFamily::Card {
                lo: (*lo).min(u32::MAX as usize) as u32,
                hi: (*hi).min(u32::MAX as usize) as u32,
            },
            Family::Any => MaskFamily::Any,
        };
        MaskAtom { base, family }
    }

    fn sat(&self, m: u64) -> bool {
        let y = m & self.base;
        match &self.family {
            MaskFamily::Extensional(members) => members.contains(&y),
            MaskFamily::Even => y.count_ones().is_multiple_of(2),
            MaskFamily::Card { lo, hi } => (*lo..=*hi).contains(&y.count_ones()),
            MaskFamily::Any => true,
        }
    }

    fn sat_closure(&self, m: u64) -> bool {
        let y = m & self.base;
        match &self.family {
            MaskFamily::Extensional(members) => members.iter().any(|&z| z & !y == 0),
            MaskFamily::Even | MaskFamily::Any => true,
            MaskFamily::Card { lo, hi } => y.count_ones() >= *lo && lo <= hi,
        }
    }
}

struct MaskRule {
    head: MaskAtom,
    body: Vec<MaskAtom>,
}

struct Compiled {
    support: Vec<Atom>,
    rules: Vec<MaskRule>,
}

impl Compiled {
    fn new<S: Scalar>(p: &Program<S>, cap: usize) -> Result<Self> {
        let support = head_support(p).to_vec();
        let cap = cap.min(MAX_SUPPORT);
        if support.len() > cap {
            return Err(Error::CapExceeded { support: support.len(), cap });
        }
        let rules = p
            .rules()
            .iter()
            .map(|r| MaskRule {
                head: MaskAtom::new(reduct(&r.head), &support),
                body: r.body.iter().map(|b| MaskAtom::new(b, &support)).collect(),
            })
            .collect();
        Ok(Compiled { support, rules })
    }

    fn is_stable(&self, m: u64) -> bool {
        let mut live: Vec<&MaskRule> = Vec::new();
        let mut reachable = 0u64;
        for rule in &self.rules {
            if rule.body.iter().all(|b| b.sat(m)) {
                if !rule.head.sat(m) {
                    return false;
                }
                reachable |= rule.head.base & m;
                live.push(rule);
            }
        }
        if reachable != m {
            return false;
        }
        let mut derived = 0u64;
        loop {
            let mut next = derived;
            for rule in &live {
                if rule.body.iter().all(|b| b.sat_closure(derived)) {
                    next |= rule.head.base & m;
                }
            }
            if next == derived {
                return derived == m;
            }
            derived = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms;
    use crate::atoms::atom;
    use crate::model::{literal_to_sc, Head, NormalRule, Rule};

    type P = Program<f64>;

    fn horn(head: &str, body: Vec<ScAtom>) -> HornRule {
        HornRule { head: atom(head), body }
    }

    fn normal(text: &[(&str, &[&str], &[&str])]) -> P {
        let rules: Vec<NormalRule> = text
            .iter()
            .map(|(h, pos, neg)| {
                NormalRule::new(
                    (!h.is_empty()).then(|| atom(h)),
                    pos.iter().map(|a| atom(a)).collect(),
                    neg.iter().map(|a| atom(a)).collect(),
                )
            })
            .collect();
        Program::from_normal(&rules)
    }

    fn choice_j() -> P {
        let head = ScAtom::new(atoms!["j1", "j2"], Family::extensional([atoms!["j1"], atoms!["j2"]]))
            .unwrap();
        Program::new(vec![Rule::fact(Head::Sc(head))], AtomSet::new()).unwrap()
    }

    #[test]
    fn tp_step_examples() {
        assert_eq!(tp_step(&HornProgram::default(), &atoms!["a"]), atoms![]);
        let fact = HornProgram { rules: vec![horn("a", vec![])] };
        assert_eq!(tp_step(&fact, &atoms![]), atoms!["a"]);
        let b_if_a = HornProgram { rules: vec![horn("b", vec![literal_to_sc(&atom("a"), false)])] };
        assert_eq!(tp_step(&b_if_a, &atoms!["a"]), atoms!["b"]);
        assert_eq!(tp_step(&b_if_a, &atoms![]), atoms![]);
    }

    #[test]
    fn least_model_examples() {
        let chained = HornProgram {
            rules: vec![horn("a", vec![]), horn("b", vec![literal_to_sc(&atom("a"), false)])],
        };
        assert_eq!(least_model(&chained), atoms!["a", "b"]);
        let unsupported = HornProgram { rules: vec![horn("a", vec![literal_to_sc(&atom("b"), false)])] };
        assert_eq!(least_model(&unsupported), atoms![]);
        let card = ScAtom::new(atoms!["a", "b"], Family::Card { lo: 1, hi: 2 }).unwrap();
        let with_card = HornProgram { rules: vec![horn("p", vec![card]), horn("a", vec![])] };
        assert_eq!(least_model(&with_card), atoms!["a", "p"]);
    }

    #[test]
    fn nss_examples() {
        let p = normal(&[("a", &[], &["b"])]);
        let h = nss_transform(&p, &atoms!["a"]);
        assert_eq!(h.rules.len(), 1);
        assert_eq!(h.rules[0].head, atom("a"));
        assert_eq!(least_model(&h), atoms!["a"]);
        assert!(nss_transform(&p, &atoms!["b"]).rules.is_empty());

        let h = nss_transform(&choice_j(), &atoms!["j1"]);
        assert_eq!(h, HornProgram { rules: vec![horn("j1", vec![])] });
        assert_eq!(least_model(&h), atoms!["j1"]);
    }

    #[test]
    fn stability_examples() {
        let p = choice_j();
        assert!(is_stable(&p, &atoms!["j1"]));
        assert!(!is_stable(&p, &atoms!["j1", "j2"]));

        let empty = normal(&[]);
        assert!(is_stable(&empty, &atoms![]));
        assert!(!is_stable(&empty, &atoms!["a"]));

        let odd = normal(&[("a", &[], &["a"])]);
        assert!(!is_model(&odd, &atoms![]));
        assert!(!is_stable(&odd, &atoms![]));
        assert!(is_model(&odd, &atoms!["a"]));
        assert!(!is_stable(&odd, &atoms!["a"]));
    }

    #[test]
    fn head_support_examples() {
        let head = ScAtom::new(atoms!["a", "b"], Family::Any).unwrap();
        let p: P = Program::new(
            vec![Rule::new(Head::Sc(head), vec![literal_to_sc(&atom("c"), false)])],
            AtomSet::new(),
        )
        .unwrap();
        assert_eq!(head_support(&p), atoms!["a", "b"]);
        assert_eq!(head_support(&normal(&[])), atoms![]);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_stable(&normal(&[("a", &[], &["a"])]), 22).unwrap(), Vec::<AtomSet>::new());
        assert_eq!(enumerate_stable(&normal(&[]), 22).unwrap(), vec![atoms![]]);
        let even = normal(&[("a", &[], &["b"]), ("b", &[], &["a"])]);
        assert_eq!(enumerate_stable(&even, 22).unwrap(), vec![atoms!["a"], atoms!["b"]]);
        assert_eq!(enumerate_stable(&choice_j(), 22).unwrap(), vec![atoms!["j1"], atoms!["j2"]]);
    }

    #[test]
    fn cap_is_enforced() {
        let p = choice_j();
        assert_eq!(enumerate_stable(&p, 1).unwrap_err(), Error::CapExceeded { support: 2, cap: 1 });
    }

    #[test]
    fn constraints_prune() {
        // a :- not b.  b :- not a.  :- a.
        let p = normal(&[("a", &[], &["b"]), ("b", &[], &["a"]), ("", &["a"], &[])]);
        assert_eq!(enumerate_stable(&p, 22).unwrap(), vec![atoms!["b"]]);
    }

    #[test]
    fn enumeration_agrees_with_is_stable() {
        let p = normal(&[("a", &[], &["b"]), ("b", &[], &["a"]), ("c", &["a"], &[]), ("c", &["b"], &["c"])]);
        let support = head_support(&p);
        let expected: Vec<AtomSet> = support.subsets().into_iter().filter(|m| is_stable(&p, m)).collect();
        assert_eq!(enumerate_stable(&p, 22).unwrap(), expected);
    }
}
