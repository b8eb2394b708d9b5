//! Fusion invariants: oracle agreement, algebraic laws, conditioning, and the
//! matrix realizations of both rules.

mod common;

use common::*;
use randset_core::frame::Subset;
use randset_core::fusion::{
    combine_bruteforce, condition, conjunctive, disjunctive, generalization_matrix, leq_info,
    specialization_matrix, CombineMode, InfoOrder,
};
use randset_core::mass::MassFunction;
use randset_core::randgen::substream;
use randset_core::transforms::to_implicability;

#[test]
fn both_rules_agree_with_the_double_sum_oracle() {
    let mut trial = 0;
    for n in 1..=8usize {
        let frame = letters(n);
        for _ in 0..125 {
            let m1 = general_mass(&frame, 0xF00D, trial);
            let m2 = general_mass(&frame, 0xF00E, trial);
            trial += 1;
            let fast = conjunctive(&m1, &m2).unwrap();
            let slow = combine_bruteforce(&m1, &m2, CombineMode::Intersection).unwrap();
            assert!(max_abs_diff(fast.values(), slow.values()) < 1e-12);
            let fast = disjunctive(&m1, &m2).unwrap();
            let slow = combine_bruteforce(&m1, &m2, CombineMode::Union).unwrap();
            assert!(max_abs_diff(fast.values(), slow.values()) < 1e-12);
        }
    }
}

#[test]
fn commutative_and_associative() {
    for n in [3usize, 5, 8] {
        let frame = letters(n);
        for trial in 0..100 {
            let m1 = general_mass(&frame, 1, trial);
            let m2 = general_mass(&frame, 2, trial);
            let m3 = general_mass(&frame, 3, trial);
            for mode in [CombineMode::Intersection, CombineMode::Union] {
                let comb = |a: &MassFunction<f64>, b: &MassFunction<f64>| {
                    randset_core::fusion::combine(a, b, mode).unwrap()
                };
                assert!(max_abs_diff(comb(&m1, &m2).values(), comb(&m2, &m1).values()) < 1e-12);
                let left = comb(&comb(&m1, &m2), &m3);
                let right = comb(&m1, &comb(&m2, &m3));
                assert!(max_abs_diff(left.values(), right.values()) < 1e-12);
            }
        }
    }
}

#[test]
fn de_morgan_between_the_rules() {
    for n in [2usize, 4, 6] {
        let frame = letters(n);
        for trial in 0..200 {
            let m1 = general_mass(&frame, 0xDE, trial + 1000 * n as u64);
            let m2 = general_mass(&frame, 0xDF, trial + 1000 * n as u64);
            let lhs = conjunctive(&m1, &m2).unwrap().negation();
            let rhs = disjunctive(&m1.negation(), &m2.negation()).unwrap();
            assert!(max_abs_diff(lhs.values(), rhs.values()) < 1e-12);
        }
    }
}

#[test]
fn identities_of_the_two_monoids() {
    let frame = letters(6);
    for trial in 0..100 {
        let m = general_mass(&frame, 0x1D, trial);
        let vac = MassFunction::vacuous(&frame);
        let conflict = MassFunction::total_conflict(&frame);
        // identity up to the transform roundtrip
        assert!(max_abs_diff(conjunctive(&m, &vac).unwrap().values(), m.values()) < 1e-12);
        assert!(max_abs_diff(disjunctive(&m, &conflict).unwrap().values(), m.values()) < 1e-12);
    }
}

#[test]
fn conditioning_equals_combination_with_a_categorical() {
    let frame = letters(7);
    for trial in 0..300 {
        let mut rng = substream(0xC01D, trial);
        let m = general_mass_from(&frame, &mut rng);
        let e = random_subset_from(&frame, &mut rng);
        let direct = condition(&m, e);
        let via_rule = conjunctive(&m, &MassFunction::categorical(&frame, e)).unwrap();
        assert!(max_abs_diff(direct.values(), via_rule.values()) < 1e-12);
    }
}

#[test]
fn conditioned_implicability_reads_off_the_original() {
    // b_{m|E}(A) = b(E^c ∪ A), both sides computed independently
    for n in [3usize, 5, 8] {
        let frame = letters(n);
        for trial in 0..350 {
            let mut rng = substream(0x1E, trial + 5000 * n as u64);
            let m = general_mass_from(&frame, &mut rng);
            let e = random_subset_from(&frame, &mut rng);
            let a = random_subset_from(&frame, &mut rng);
            let lhs = to_implicability(&condition(&m, e)).value(a);
            let rhs = to_implicability(&m).value(frame.complement(e) | a);
            assert!((lhs - rhs).abs() < 1e-12, "n={n} trial={trial}");
        }
    }
}

#[test]
fn matrices_realize_the_rules_on_random_pairs() {
    for n in [2usize, 4, 6, 8] {
        let frame = letters(n);
        for trial in 0..40 {
            let m1 = general_mass(&frame, 0x5A, trial + 999 * n as u64);
            let m2 = general_mass(&frame, 0x5B, trial + 999 * n as u64);
            let via_s = specialization_matrix(&m1).unwrap().apply(&m2).unwrap();
            assert!(max_abs_diff(via_s.values(), conjunctive(&m1, &m2).unwrap().values()) < 1e-12);
            let via_g = generalization_matrix(&m1).unwrap().apply(&m2).unwrap();
            assert!(max_abs_diff(via_g.values(), disjunctive(&m1, &m2).unwrap().values()) < 1e-12);
        }
    }
}

#[test]
fn combination_respects_the_information_orders() {
    let frame = letters(6);
    for trial in 0..200 {
        let m1 = general_mass(&frame, 0xAA, trial);
        let m2 = general_mass(&frame, 0xAB, trial);
        let conj = conjunctive(&m1, &m2).unwrap();
        assert!(leq_info(&conj, &m1, InfoOrder::Q).unwrap());
        assert!(leq_info(&conj, &m2, InfoOrder::Q).unwrap());
        let disj = disjunctive(&m1, &m2).unwrap();
        assert!(leq_info(&m1, &disj, InfoOrder::B).unwrap());
        assert!(leq_info(&m2, &disj, InfoOrder::B).unwrap());
    }
}

#[test]
fn empty_mass_grows_under_conditioning() {
    let frame = letters(6);
    for trial in 0..100 {
        let mut rng = substream(0xEC, trial);
        let m = general_mass_from(&frame, &mut rng);
        for e in frame.subsets() {
            assert!(condition(&m, e).empty_mass() + 1e-15 >= m.empty_mass());
        }
    }
}

#[test]
fn conditioning_on_the_empty_set_yields_total_conflict() {
    let frame = letters(4);
    let m = general_mass(&frame, 0xE0, 0);
    assert_eq!(condition(&m, Subset::EMPTY).empty_mass(), 1.0);
}
