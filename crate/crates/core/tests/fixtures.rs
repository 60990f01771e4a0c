use psc_core::atoms;
use psc_core::instances::{parse_edges, vertex_cover_program};
use psc_core::oracle::{oracle_exact_covers, oracle_preferred};
use psc_core::preference::{pref_atoms, pref_set};
use psc_core::syntax::{parse_aso, parse_pp, parse_psc, write_aso, write_pp, write_psc};
use psc_core::{atom, compare_models, enumerate_stable, preferred_models, AtomSet, CompareVerdict, OrderMode, Program};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn program(name: &str) -> Program {
    parse_psc(&fixture(name)).unwrap().value
}

#[test]
fn job_choice_by_chain() {
    let p = program("jobs_chain.psc");
    let models = enumerate_stable(&p, 22).unwrap();
    assert_eq!(models, vec![atoms!["cal", "j1", "r"], atoms!["j2", "ncal", "t"]]);
    assert_eq!(preferred_models(&p, OrderMode::Ic, 22).unwrap(), vec![atoms!["cal", "j1", "r"]]);
    assert_eq!(
        compare_models(&p, &models[0], &models[1], OrderMode::Ic).unwrap(),
        CompareVerdict::FirstPreferred
    );
}

#[test]
fn conditional_preference_verdicts() {
    let p = program("jobs_conditional.psc");
    let models = enumerate_stable(&p, 22).unwrap();
    let without = atoms!["cal", "j1", "r"];
    let with = atoms!["cm", "j2", "ncal", "pt", "t"];
    assert_eq!(models, vec![without.clone(), with.clone()]);
    assert_eq!(pref_set(&p, &with).len(), 2);
    assert_eq!(pref_set(&p, &without).len(), 1);
    assert!(pref_set(&p, &with).is_proper_superset(&pref_set(&p, &without)));
    assert_eq!(pref_atoms(&p, &pref_set(&p, &without)).len(), 1);
    assert_eq!(compare_models(&p, &without, &with, OrderMode::Ic).unwrap(), CompareVerdict::FirstPreferred);
    assert_eq!(compare_models(&p, &with, &without, OrderMode::It).unwrap(), CompareVerdict::Indistinguishable);
}

#[test]
fn distance_measure() {
    let p = program("jobs_distance.psc");
    assert!(p.universe().contains(&atom("d(120)")));
    let models = enumerate_stable(&p, 22).unwrap();
    assert_eq!(models.len(), 2);
    let best = atoms!["d(0)", "j2", "t"];
    assert_eq!(preferred_models(&p, OrderMode::WIs, 22).unwrap(), vec![best.clone()]);
    assert_eq!(oracle_preferred(&p, OrderMode::WIs, 16).unwrap(), vec![best]);
}

#[test]
fn vertex_cover_path() {
    let edges = parse_edges(&fixture("path4.edges")).unwrap();
    let p: Program = vertex_cover_program(&edges, 3, &atom("b")).unwrap();
    let preferred = preferred_models(&p, OrderMode::WIs, 22).unwrap();
    let all: AtomSet = atoms!["a", "b", "c", "d"];
    assert_eq!(preferred, oracle_exact_covers(&all, &edges, 3, &atom("b")));
    assert_eq!(preferred, vec![atoms!["b", "d"]]);
}

#[test]
fn odd_cycles_have_no_models() {
    assert!(enumerate_stable(&program("odd_loop.psc"), 22).unwrap().is_empty());
    let edges = parse_edges(&fixture("triangle.edges")).unwrap();
    let p: Program = vertex_cover_program(&edges, 3, &atom("x")).unwrap();
    assert!(enumerate_stable(&p, 22).unwrap().is_empty());
}

#[test]
fn fixtures_round_trip() {
    for name in ["jobs_chain.psc", "jobs_distance.psc", "jobs_conditional.psc", "odd_loop.psc"] {
        let p = program(name);
        let text = write_psc(&p);
        let again: Program = parse_psc(&text).unwrap().value;
        assert_eq!(again.rules(), p.rules(), "{name}");
        assert_eq!(write_psc(&again), text, "{name}");
    }
    for name in ["choice.aso", "unsat.aso"] {
        let a = parse_aso(&fixture(name)).unwrap().value;
        assert_eq!(parse_aso(&write_aso(&a)).unwrap().value, a);
    }
    let f = parse_pp(&fixture("nested.pp")).unwrap().value;
    assert_eq!(write_pp(&f), "(d1 | d2) <| !d3");
}

#[test]
fn empty_program_round_trips() {
    let p: Program = parse_psc("").unwrap().value;
    assert_eq!(write_psc(&p), "");
    assert_eq!(enumerate_stable(&p, 22).unwrap(), vec![AtomSet::new()]);
}
