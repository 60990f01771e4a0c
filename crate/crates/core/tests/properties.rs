mod common;

use proptest::prelude::*;

fn run(check: fn(u64) -> common::Check, seed: u64) -> Result<(), TestCaseError> {
    check(seed).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_programs_match_gl(seed in any::<u64>()) {
        run(common::normal_program_matches_gl, seed)?;
    }

    #[test]
    fn psc_programs_match_oracle(seed in any::<u64>()) {
        run(common::psc_program_matches_oracle, seed)?;
    }

    #[test]
    fn closure_is_monotone(seed in any::<u64>()) {
        run(common::closure_monotone, seed)?;
    }

    #[test]
    fn strict_preference_is_a_strict_order(seed in any::<u64>()) {
        run(common::strict_order, seed)?;
    }

    #[test]
    fn equivalence_is_an_equivalence(seed in any::<u64>()) {
        run(common::equivalence_relation, seed)?;
    }

    #[test]
    fn measure_shift_keeps_verdicts(seed in any::<u64>()) {
        run(common::measure_shift, seed)?;
    }

    #[test]
    fn verdicts_mirror(seed in any::<u64>()) {
        run(common::mirror_symmetry, seed)?;
    }

    #[test]
    fn text_round_trips(seed in any::<u64>()) {
        run(common::round_trip, seed)?;
    }

    #[test]
    fn formula_relations(seed in any::<u64>()) {
        run(common::pp_relations, seed)?;
    }

    #[test]
    fn aso_translation_agrees(seed in any::<u64>()) {
        run(common::aso_translation, seed)?;
    }

    #[test]
    fn compiled_formulas_agree(seed in any::<u64>()) {
        common::pp_compilation(seed).map_err(TestCaseError::fail)?;
    }
}
