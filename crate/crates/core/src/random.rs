//! Seeded generators for random programs, preference atoms and formulas.
//!
//! Every generator draws from a caller-supplied [`Rng`], so a fixed seed
//! reproduces the same instance.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::aso::{AsoPrefRule, AsoProgram, BoolComb, GenRule, Literal};
use crate::atoms::{atom, Atom, AtomSet};
use crate::model::{
    Family, Head, Measure, MeasureAtom, NormalRule, Preorder, PreorderAtom, Program, Rule, ScAtom,
};
use crate::pp::PrefFormula;
use crate::scalar::{Extended, Scalar};

/// `prefix0 … prefix{n-1}`.
pub fn names(prefix: &str, n: usize) -> Vec<Atom> {
    (0..n).map(|i| atom(&format!("{prefix}{i}"))).collect()
}

fn pick_subset<R: Rng>(rng: &mut R, pool: &[Atom], max: usize) -> Vec<Atom> {
    let n = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, n).cloned().collect()
}

fn random_set<R: Rng>(rng: &mut R, pool: &[Atom]) -> AtomSet {
    pool.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

/// A small integer in `lo..=hi` as a scalar.
pub fn small_scalar<S: Scalar, R: Rng>(rng: &mut R, lo: i64, hi: i64) -> S {
    let v = rng.gen_range(lo..=hi);
    let magnitude = S::from_count(v.unsigned_abs() as usize);
    if v < 0 {
        -magnitude
    } else {
        magnitude
    }
}

/// A normal program over at most `max_atoms` atoms with at most
/// `max_rules` rules; about one rule in ten is a constraint.
pub fn normal_program<R: Rng>(rng: &mut R, max_atoms: usize, max_rules: usize) -> Vec<NormalRule> {
    let pool = names("p", rng.gen_range(1..=max_atoms));
    let n = rng.gen_range(1..=max_rules);
    (0..n)
        .map(|_| {
            let head = (!rng.gen_bool(0.1)).then(|| pool.choose(rng).unwrap().clone());
            let pos = pick_subset(rng, &pool, 2);
            let neg = pick_subset(rng, &pool, 2);
            NormalRule::new(head, pos, neg)
        })
        .collect()
}

fn random_family<R: Rng>(rng: &mut R, base: &[Atom]) -> Family {
    match rng.gen_range(0..6) {
        0 => Family::Any,
        1 => Family::Even,
        2 => {
            let lo = rng.gen_range(0..=base.len());
            Family::Card { lo, hi: rng.gen_range(lo..=base.len()) }
        }
        _ => {
            let n = rng.gen_range(0..=3);
            Family::extensional((0..n).map(|_| random_set(rng, base)))
        }
    }
}

/// An SC atom over at most `max_width` atoms of `pool`.
pub fn sc_atom<R: Rng>(rng: &mut R, pool: &[Atom], max_width: usize) -> ScAtom {
    let base = pick_subset(rng, pool, max_width);
    let family = random_family(rng, &base);
    ScAtom::new(base.into_iter().collect(), family).expect("members are drawn from the base")
}

/// A pre-order over the members of `sc`'s family (which must be
/// enumerable): a chain, listed pairs, or a ranking.
pub fn preorder_for<S: Scalar, R: Rng>(rng: &mut R, sc: &ScAtom) -> Preorder<S> {
    let mut members = sc.members(16).expect("generated families are small");
    members.shuffle(rng);
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(0..=members.len());
            members.truncate(n);
            Preorder::chain(members)
        }
        1 => {
            let n = if members.is_empty() { 0 } else { rng.gen_range(0..=members.len() * 2) };
            let pairs: Vec<(AtomSet, AtomSet)> = (0..n)
                .map(|_| (members.choose(rng).unwrap().clone(), members.choose(rng).unwrap().clone()))
                .collect();
            Preorder::pairs(pairs)
        }
        _ => {
            let weights = members.iter().map(|m| (m.clone(), small_scalar(rng, -3, 5))).collect();
            Preorder::rank(weights, None)
        }
    }
}

/// A pre-ordered atom over at most `max_width` atoms of `pool`.
pub fn preorder_atom<S: Scalar, R: Rng>(rng: &mut R, pool: &[Atom], max_width: usize) -> PreorderAtom<S> {
    let sc = sc_atom(rng, pool, max_width);
    let order = preorder_for(rng, &sc);
    PreorderAtom::new(sc, order).expect("orders only mention family members")
}

fn extended_value<S: Scalar, R: Rng>(rng: &mut R, infinite: bool) -> Extended<S> {
    if infinite && rng.gen_bool(0.1) {
        return if rng.gen_bool(0.5) { Extended::PosInf } else { Extended::NegInf };
    }
    Extended::Finite(small_scalar(rng, -3, 5))
}

/// A measure atom over at most `max_width` atoms of `pool`. Infinite
/// values appear only when `infinite` is set.
pub fn measure_atom<S: Scalar, R: Rng>(
    rng: &mut R,
    pool: &[Atom],
    max_width: usize,
    infinite: bool,
) -> MeasureAtom<S> {
    let sc = sc_atom(rng, pool, max_width);
    let base = sc.base().to_vec();
    let measure = match rng.gen_range(0..3) {
        0 if !base.is_empty() => Measure::Indicator {
            pivot: base.choose(rng).unwrap().clone(),
            if_in: extended_value(rng, infinite),
            if_out: extended_value(rng, infinite),
        },
        1 => {
            let mut weights = Vec::new();
            for a in base.iter() {
                if rng.gen_bool(0.7) {
                    weights.push((a.clone(), small_scalar(rng, -3, 5)));
                }
            }
            Measure::Linear { weights: weights.into_iter().collect(), offset: small_scalar(rng, -2, 2) }
        }
        _ => {
            let members = sc.members(16).expect("generated families are small");
            Measure::Weights {
                weights: members.into_iter().map(|m| (m, extended_value(rng, infinite))).collect(),
                default: None,
            }
        }
    };
    MeasureAtom::new(sc, measure).expect("measures only mention base atoms")
}

/// Which preference heads a random PSC program may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeadKinds {
    Plain,
    Preordered,
    Measure,
}

/// A PSC program over at most `max_atoms` atoms with at most `max_rules`
/// rules. Bodies mix literals and general SC atoms.
pub fn psc_program<S: Scalar, R: Rng>(
    rng: &mut R,
    max_atoms: usize,
    max_rules: usize,
    kinds: HeadKinds,
) -> Program<S> {
    let pool = names("q", rng.gen_range(1..=max_atoms));
    let n = rng.gen_range(1..=max_rules);
    let mut rules = Vec::with_capacity(n);
    for _ in 0..n {
        let head = match (kinds, rng.gen_range(0..3)) {
            (HeadKinds::Preordered, 0) => Head::Preorder(preorder_atom(rng, &pool, 3)),
            (HeadKinds::Measure, 0) => Head::Measure(measure_atom(rng, &pool, 3, false)),
            (_, 1) => Head::Sc(sc_atom(rng, &pool, 3)),
            _ => Head::Sc(crate::model::literal_to_sc(pool.choose(rng).unwrap(), false)),
        };
        let body = (0..rng.gen_range(0..=2))
            .map(|_| {
                if rng.gen_bool(0.3) {
                    sc_atom(rng, &pool, 2)
                } else {
                    crate::model::literal_to_sc(pool.choose(rng).unwrap(), rng.gen_bool(0.4))
                }
            })
            .collect();
        rules.push(Rule::new(head, body));
    }
    Program::new(rules, AtomSet::new()).expect("a single preference kind is used")
}

fn literal<R: Rng>(rng: &mut R, pool: &[Atom]) -> Literal {
    Literal { atom: pool.choose(rng).unwrap().clone(), strong_neg: rng.gen_bool(0.1) }
}

fn bool_comb<R: Rng>(rng: &mut R, pool: &[Atom], depth: usize) -> BoolComb {
    if depth == 0 || rng.gen_bool(0.5) {
        let l = literal(rng, pool);
        return if rng.gen_bool(0.25) { BoolComb::NotLit(l) } else { BoolComb::Lit(l) };
    }
    let parts = (0..rng.gen_range(2..=3)).map(|_| bool_comb(rng, pool, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        BoolComb::And(parts)
    } else {
        BoolComb::Or(parts)
    }
}

/// Size limits for [`aso_program`].
#[derive(Clone, Copy, Debug)]
pub struct AsoLimits {
    pub atoms: usize,
    pub gen_rules: usize,
    pub pref_rules: usize,
    pub options: usize,
    pub width: usize,
}

impl Default for AsoLimits {
    fn default() -> Self {
        AsoLimits { atoms: 6, gen_rules: 8, pref_rules: 4, options: 3, width: 4 }
    }
}

/// An ASO program within `limits`. Generating rules are plain normal
/// rules; each preference rule mentions at most `limits.width` atoms.
pub fn aso_program<R: Rng>(rng: &mut R, limits: AsoLimits) -> AsoProgram {
    let pool = names("x", rng.gen_range(1..=limits.atoms));
    let gen = normal_over(rng, &pool, limits.gen_rules).iter().map(GenRule::from).collect();
    let pref = (0..rng.gen_range(0..=limits.pref_rules))
        .map(|_| {
            let k = rng.gen_range(1..=limits.width.min(pool.len()));
            let scope: Vec<Atom> = pool.choose_multiple(rng, k).cloned().collect();
            let options = (0..rng.gen_range(1..=limits.options)).map(|_| bool_comb(rng, &scope, 2)).collect();
            let body_pos = pick_subset(rng, &scope, 1).into_iter().map(Literal::pos).collect();
            let body_neg = pick_subset(rng, &scope, 1).into_iter().map(Literal::pos).collect();
            AsoPrefRule::new(options, body_pos, body_neg).expect("at least one option")
        })
        .collect();
    AsoProgram { gen, pref }
}

fn normal_over<R: Rng>(rng: &mut R, pool: &[Atom], max_rules: usize) -> Vec<NormalRule> {
    (0..rng.gen_range(0..=max_rules))
        .map(|_| {
            let head = (!rng.gen_bool(0.1)).then(|| pool.choose(rng).unwrap().clone());
            NormalRule::new(head, pick_subset(rng, pool, 2), pick_subset(rng, pool, 2))
        })
        .collect()
}

/// A PP formula over at most `max_desires` desires with nesting depth at
/// most `max_depth`, in the normal form the text syntax reads back.
pub fn pp_formula<R: Rng>(rng: &mut R, max_desires: usize, max_depth: usize) -> PrefFormula {
    let pool = names("d", rng.gen_range(1..=max_desires));
    pp_over(rng, &pool, max_depth).normalized()
}

fn pp_over<R: Rng>(rng: &mut R, pool: &[Atom], depth: usize) -> PrefFormula {
    if depth == 0 || rng.gen_bool(0.3) {
        let n = rng.gen_range(1..=3);
        return PrefFormula::Atomic((0..n).map(|_| pool.choose(rng).unwrap().clone()).collect());
    }
    match rng.gen_range(0..4) {
        0 => PrefFormula::and(pp_over(rng, pool, depth - 1), pp_over(rng, pool, depth - 1)),
        1 => PrefFormula::or(pp_over(rng, pool, depth - 1), pp_over(rng, pool, depth - 1)),
        2 => PrefFormula::not(pp_over(rng, pool, depth - 1)),
        _ => PrefFormula::Lex((0..rng.gen_range(2..=3)).map(|_| pp_over(rng, pool, depth - 1)).collect()),
    }
}
