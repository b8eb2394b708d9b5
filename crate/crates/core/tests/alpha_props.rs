//! Interpolated-rule invariants: reductions, roundtrips, bounds, algebraic
//! laws and the non-expansiveness of the α-rules for α-set-function norms.

mod common;

use common::*;
use randset_core::alpha::{
    alpha_combine, alpha_norm_distance, alpha_transfer_matrix, from_alpha, to_alpha, Alpha,
    AlphaFamily,
};
use randset_core::experiments::{run_alpha_consistency, AlphaConsistencyConfig};
use randset_core::fusion::{combine, CombineMode};
use randset_core::metrics::NormOrder;

const ALPHAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[test]
fn roundtrip_and_bounds_across_the_parameter_range() {
    for n in [2usize, 4, 6, 8] {
        let frame = letters(n);
        for trial in 0..50 {
            let m = general_mass(&frame, 0xA1FA, trial + 7000 * n as u64);
            for &a in &ALPHAS {
                let alpha = Alpha::new(a).unwrap();
                for family in [AlphaFamily::Q, AlphaFamily::B] {
                    let img = to_alpha(&m, alpha, family);
                    for &v in img.values() {
                        assert!(v >= a - 1.0 - 1e-12, "lower bound at α={a}");
                        assert!(v <= 1.0 + 1e-12, "upper bound at α={a}");
                    }
                    let back = from_alpha(&img).unwrap();
                    assert!(max_abs_diff(back.values(), m.values()) < 1e-12);
                }
            }
        }
    }
}

#[test]
fn dense_transfer_agrees_with_the_butterfly() {
    for n in [1usize, 2, 4, 6] {
        let frame = letters(n);
        let n_sub = frame.num_subsets();
        for trial in 0..20 {
            let m = general_mass(&frame, 0xD5, trial + 31 * n as u64);
            for &a in &ALPHAS {
                let alpha = Alpha::new(a).unwrap();
                for family in [AlphaFamily::Q, AlphaFamily::B] {
                    let dense = alpha_transfer_matrix::<f64>(&frame, alpha, family).unwrap();
                    let expected: Vec<f64> = (0..n_sub)
                        .map(|row| {
                            (0..n_sub)
                                .map(|col| dense[row * n_sub + col] * m.values()[col])
                                .sum()
                        })
                        .collect();
                    let fast = to_alpha(&m, alpha, family);
                    assert!(max_abs_diff(fast.values(), &expected) < 1e-12);
                }
            }
        }
    }
}

#[test]
fn unit_alpha_recovers_both_rules() {
    for n in [3usize, 6] {
        let frame = letters(n);
        for trial in 0..100 {
            let m1 = general_mass(&frame, 0xB1, trial + 51 * n as u64);
            let m2 = general_mass(&frame, 0xB2, trial + 51 * n as u64);
            for mode in [CombineMode::Intersection, CombineMode::Union] {
                let via_alpha = alpha_combine(&m1, &m2, Alpha::one(), mode).unwrap();
                let direct = combine(&m1, &m2, mode).unwrap();
                assert!(max_abs_diff(via_alpha.values(), direct.values()) < 1e-12);
            }
        }
    }
}

#[test]
fn interpolated_rules_commute_and_associate() {
    let alpha = Alpha::new(0.5).unwrap();
    for n in [3usize, 5, 6] {
        let frame = letters(n);
        for trial in 0..100 {
            let m1 = general_mass(&frame, 0xC1, trial + 77 * n as u64);
            let m2 = general_mass(&frame, 0xC2, trial + 77 * n as u64);
            let m3 = general_mass(&frame, 0xC3, trial + 77 * n as u64);
            for mode in [CombineMode::Intersection, CombineMode::Union] {
                let ab = alpha_combine(&m1, &m2, alpha, mode).unwrap();
                let ba = alpha_combine(&m2, &m1, alpha, mode).unwrap();
                assert!(max_abs_diff(ab.values(), ba.values()) < 1e-12);
                let left = alpha_combine(&ab, &m3, alpha, mode).unwrap();
                let bc = alpha_combine(&m2, &m3, alpha, mode).unwrap();
                let right = alpha_combine(&m1, &bc, alpha, mode).unwrap();
                assert!(max_abs_diff(left.values(), right.values()) < 1e-12);
            }
        }
    }
}

#[test]
fn alpha_rules_are_nonexpansive_for_their_norms() {
    for &a in &ALPHAS {
        for mode in [CombineMode::Intersection, CombineMode::Union] {
            let mut cfg = AlphaConsistencyConfig::new(mode, a, 0xA11A);
            cfg.trials = 1_000;
            let report = run_alpha_consistency::<f64>(&cfg).unwrap();
            for row in &report.rows {
                assert_eq!(
                    row.successes, row.trials,
                    "α={a} mode={mode:?} k={}: violation of {}",
                    row.k, row.max_violation
                );
            }
        }
    }
}

#[test]
fn norm_distances_reject_frame_mismatch() {
    let f3 = letters(3);
    let f4 = letters(4);
    let m3 = general_mass(&f3, 1, 1);
    let m4 = general_mass(&f4, 1, 1);
    assert!(alpha_norm_distance(
        &m3,
        &m4,
        Alpha::new(0.5).unwrap(),
        AlphaFamily::Q,
        NormOrder::Finite(1)
    )
    .is_err());
}
