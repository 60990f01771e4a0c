//! Checks shared by the property tests and the acceptance runner. Each
//! takes a seed and returns a description of the first failure.

#![allow(dead_code)]

use psc_core::aso::{aso_optimal_models, translate_aso, AsoTranslation};
use psc_core::atoms::AtomSet;
use psc_core::model::{satisfies_closure, satisfies_sc, PreorderAtom, Program};
use psc_core::oracle::{gl_stable_models, materialize_closure, oracle_preferred, oracle_stable_models};
use psc_core::pp::{check_compilation, pp_indist, pp_prec, CompileReport};
use psc_core::preference::{compare_measure_set, compare_preordered_set, preordered_equivalent};
use psc_core::random::{self, AsoLimits, HeadKinds};
use psc_core::syntax::{parse_aso, parse_pp, parse_psc, write_aso, write_pp, write_psc};
use psc_core::{enumerate_stable, preferred_models, CompareVerdict, OrderMode, Rational64, DEFAULT_CAP};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fail<T: std::fmt::Debug>(what: &str, detail: T) -> Check {
    Err(format!("{what}: {detail:?}"))
}

/// Engine stable models of a random normal program equal the
/// Gelfond–Lifschitz stable models.
pub fn normal_program_matches_gl(seed: u64) -> Check {
    let rules = random::normal_program(&mut rng(seed), 8, 12);
    let engine = enumerate_stable(&Program::<f64>::from_normal(&rules), DEFAULT_CAP).map_err(|e| e.to_string())?;
    let oracle = gl_stable_models(&rules, 16).map_err(|e| e.to_string())?;
    if engine != oracle {
        return fail("stable models differ", (rules, engine, oracle));
    }
    Ok(())
}

/// Engine stable and preferred models of a random PSC program equal the
/// brute-force ones.
pub fn psc_program_matches_oracle(seed: u64) -> Check {
    let mut r = rng(seed);
    let kinds = [HeadKinds::Plain, HeadKinds::Preordered, HeadKinds::Measure][r.gen_range(0..3)];
    let p: Program<f64> = random::psc_program(&mut r, 6, 6, kinds);
    let engine = enumerate_stable(&p, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let oracle = oracle_stable_models(&p, 16).map_err(|e| e.to_string())?;
    if engine != oracle {
        return fail("stable models differ", (write_psc(&p), engine, oracle));
    }
    for mode in OrderMode::ALL.into_iter().filter(|m| m.applies_to(p.kind())) {
        let a = preferred_models(&p, mode, DEFAULT_CAP);
        let b = oracle_preferred(&p, mode, 16);
        if a != b {
            return fail("preferred models differ", (write_psc(&p), mode, a, b));
        }
    }
    Ok(())
}

/// Satisfaction is monotone under the upper closure, matches the
/// materialized closure, and implies closure satisfaction.
pub fn closure_monotone(seed: u64) -> Check {
    let mut r = rng(seed);
    let pool = random::names("a", 5);
    let atom = random::sc_atom(&mut r, &pool, 5);
    let closed = materialize_closure(&atom);
    let subsets = pool.iter().cloned().collect::<AtomSet>().subsets();
    for m in &subsets {
        let here = satisfies_closure(m, &atom);
        if here != closed.contains(&m.intersection(atom.base())) {
            return fail("closure membership", (atom, m));
        }
        if satisfies_sc(m, &atom) && !here {
            return fail("model outside its closure", (atom, m));
        }
        for n in &subsets {
            if m.is_subset(n) && here && !satisfies_closure(n, &atom) {
                return fail("closure not monotone", (atom, m, n));
            }
        }
    }
    Ok(())
}

/// A random set of one to three pre-ordered atoms and every subset of the
/// pool that all of them admit.
fn preordered_setup(seed: u64) -> (Vec<PreorderAtom<f64>>, Vec<AtomSet>) {
    let mut r = rng(seed);
    let pool = random::names("a", 4);
    let atoms: Vec<PreorderAtom<f64>> =
        (0..r.gen_range(1..=3)).map(|_| random::preorder_atom(&mut r, &pool, 3)).collect();
    let valid = pool
        .iter()
        .cloned()
        .collect::<AtomSet>()
        .subsets()
        .into_iter()
        .filter(|m| atoms.iter().all(|a| a.sc().admits(&m.intersection(a.base()))))
        .collect();
    (atoms, valid)
}

/// Strict preference is irreflexive and transitive.
pub fn strict_order(seed: u64) -> Check {
    let (atoms, valid) = preordered_setup(seed);
    let t: Vec<&PreorderAtom<f64>> = atoms.iter().collect();
    let n = valid.len();
    let mut first = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            first[i][j] = compare_preordered_set(&t, &valid[i], &valid[j]).map_err(|e| e.to_string())?
                == CompareVerdict::FirstPreferred;
        }
        if first[i][i] {
            return fail("strictly preferred to itself", &valid[i]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if first[i][j] && first[j][k] && !first[i][k] {
                    return fail("not transitive", (&valid[i], &valid[j], &valid[k]));
                }
            }
        }
    }
    Ok(())
}

/// `∼` is reflexive, symmetric and transitive.
pub fn equivalence_relation(seed: u64) -> Check {
    let (atoms, valid) = preordered_setup(seed);
    let t: Vec<&PreorderAtom<f64>> = atoms.iter().collect();
    let n = valid.len();
    let mut eq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            eq[i][j] = preordered_equivalent(&t, &valid[i], &valid[j]).map_err(|e| e.to_string())?;
        }
    }
    for i in 0..n {
        if !eq[i][i] {
            return fail("not reflexive", &valid[i]);
        }
        for j in 0..n {
            if eq[i][j] != eq[j][i] {
                return fail("not symmetric", (&valid[i], &valid[j]));
            }
            for k in 0..n {
                if eq[i][j] && eq[j][k] && !eq[i][k] {
                    return fail("not transitive", (&valid[i], &valid[j], &valid[k]));
                }
            }
        }
    }
    Ok(())
}

/// Adding a constant to every measure value keeps every verdict.
pub fn measure_shift(seed: u64) -> Check {
    let mut r = rng(seed);
    let pool = random::names("a", 4);
    let atoms: Vec<_> = (0..r.gen_range(1..=3))
        .map(|_| random::measure_atom::<Rational64, _>(&mut r, &pool, 3, false))
        .collect();
    let c = Rational64::new(r.gen_range(-20..=20), r.gen_range(1..=7));
    let shifted: Vec<_> = atoms.iter().map(|a| a.shifted(&c)).collect();
    let t: Vec<_> = atoms.iter().collect();
    let ts: Vec<_> = shifted.iter().collect();
    let subsets = pool.iter().cloned().collect::<AtomSet>().subsets();
    let valid: Vec<&AtomSet> =
        subsets.iter().filter(|m| atoms.iter().all(|a| a.sc().admits(&m.intersection(a.base())))).collect();
    for m1 in &valid {
        for m2 in &valid {
            let before = compare_measure_set(&t, m1, m2).map_err(|e| e.to_string())?;
            let after = compare_measure_set(&ts, m1, m2).map_err(|e| e.to_string())?;
            if before != after {
                return fail("shift changed a verdict", (m1, m2, c, before, after));
            }
        }
    }
    Ok(())
}

/// Swapping the arguments mirrors the verdict.
pub fn mirror_symmetry(seed: u64) -> Check {
    let mut r = rng(seed);
    let kinds = [HeadKinds::Preordered, HeadKinds::Measure][r.gen_range(0..2)];
    let p: Program<f64> = random::psc_program(&mut r, 6, 6, kinds);
    let models = enumerate_stable(&p, DEFAULT_CAP).map_err(|e| e.to_string())?;
    for mode in OrderMode::ALL.into_iter().filter(|m| m.applies_to(p.kind())) {
        for m1 in &models {
            for m2 in &models {
                let a = psc_core::compare_models(&p, m1, m2, mode).map_err(|e| e.to_string())?;
                let b = psc_core::compare_models(&p, m2, m1, mode).map_err(|e| e.to_string())?;
                if a != b.mirror() {
                    return fail("verdicts are not mirrored", (write_psc(&p), mode, m1, m2, a, b));
                }
            }
        }
    }
    Ok(())
}

/// Printing, parsing and printing again gives the same text, and the
/// parsed objects equal the originals.
pub fn round_trip(seed: u64) -> Check {
    let mut r = rng(seed);
    let kinds = [HeadKinds::Plain, HeadKinds::Preordered, HeadKinds::Measure][r.gen_range(0..3)];
    let p: Program<Rational64> = random::psc_program(&mut r, 6, 6, kinds);
    let text = write_psc(&p);
    let back = parse_psc::<Rational64>(&text).map_err(|e| format!("{e}\n{text}"))?.value;
    if back.rules() != p.rules() || write_psc(&back) != text {
        return fail("program round trip", text);
    }

    let a = random::aso_program(&mut r, AsoLimits::default());
    let text = write_aso(&a);
    let back = parse_aso(&text).map_err(|e| format!("{e}\n{text}"))?.value;
    if back != a || write_aso(&back) != text {
        return fail("ASO round trip", text);
    }

    let f = random::pp_formula(&mut r, 4, 3);
    let text = write_pp(&f);
    let back = parse_pp(&text).map_err(|e| format!("{e}\n{text}"))?.value;
    if back != f || write_pp(&back) != text {
        return fail("formula round trip", text);
    }
    Ok(())
}

/// `≈` is reflexive and symmetric, `≺` asymmetric, and the two exclusive.
pub fn pp_relations(seed: u64) -> Check {
    let f = random::pp_formula(&mut rng(seed), 4, 3);
    let sets = f.desires().subsets();
    for a in &sets {
        if !pp_indist(&f, a, a) {
            return fail("not reflexive", (f.to_string(), a));
        }
        for b in &sets {
            let (ab, ba) = (pp_prec(&f, a, b), pp_prec(&f, b, a));
            if pp_indist(&f, a, b) != pp_indist(&f, b, a) {
                return fail("not symmetric", (f.to_string(), a, b));
            }
            if ab && ba {
                return fail("not asymmetric", (f.to_string(), a, b));
            }
            if ab && pp_indist(&f, a, b) {
                return fail("preferred and indistinguishable", (f.to_string(), a, b));
            }
        }
    }
    Ok(())
}

/// Stable models of the translation are exactly the lifted answer sets,
/// and both preferred filters project to the optimal answer sets.
pub fn aso_translation(seed: u64) -> Check {
    let a = random::aso_program(&mut rng(seed), AsoLimits::default());
    let gen = a.normal_gen().map_err(|e| e.to_string())?;
    let answer_sets = gl_stable_models(&gen, 16).map_err(|e| e.to_string())?;
    let t: AsoTranslation<f64> = translate_aso(&a).map_err(|e| e.to_string())?;
    let mut lifted: Vec<AtomSet> = answer_sets.iter().map(|b| t.lift(b)).collect();
    lifted.sort();
    let stable = enumerate_stable(&t.program, DEFAULT_CAP).map_err(|e| e.to_string())?;
    if stable != lifted {
        return fail("translation models are not the lifted answer sets", (write_aso(&a), stable, lifted));
    }
    let optimal = aso_optimal_models(&a, 16).map_err(|e| e.to_string())?;
    for mode in [OrderMode::Ic, OrderMode::It] {
        let preferred = preferred_models(&t.program, mode, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let mut projected: Vec<AtomSet> = preferred.iter().map(|m| t.project_unbarred(m)).collect();
        projected.sort();
        if projected != optimal {
            return fail("preferred models differ from optimal ones", (write_aso(&a), mode, projected, optimal));
        }
    }
    Ok(())
}

/// The compiled atom's strict verdict agrees with the formula on every
/// pair of trajectories.
pub fn pp_compilation(seed: u64) -> Result<CompileReport, String> {
    let f = random::pp_formula(&mut rng(seed), 4, 3);
    let report = check_compilation::<f64>(&f).map_err(|e| e.to_string())?;
    if !report.strict_agrees() {
        return Err(format!("{f}: strict mismatches {:?}", report.strict_mismatches));
    }
    Ok(report)
}
