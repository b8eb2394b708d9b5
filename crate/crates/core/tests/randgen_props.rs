//! Generator contracts: golden stream, determinism, marginals and validity.

mod common;

use common::*;
use randset_core::frame::Frame;
use randset_core::mass::MassFunction;
use randset_core::randgen::{make_rng, random_mass, substream, GenSpec};

/// First three simple draws for seed 42 on the frame (a, b, c), recorded at
/// first implementation. Bit patterns, not decimals: the stream identity is
/// part of the output contract.
#[test]
fn golden_stream_for_seed_42() {
    let frame = Frame::new(["a", "b", "c"]).unwrap();
    let mut rng = make_rng(42);
    let expected: [[u64; 8]; 3] = [
        [0, 0, 0, 0, 0, 4606734539489062706, 0, 4587326890011069664],
        [0, 0, 0, 4603825980764259020, 0, 0, 0, 4600384495989422696],
        [0, 0, 0, 4594570857989418688, 0, 0, 0, 4605831709375296592],
    ];
    for draw in expected {
        let m: MassFunction<f64> = random_mass(&frame, &mut rng, &GenSpec::simple()).unwrap();
        let bits: Vec<u64> = m.values().iter().map(|v| v.to_bits()).collect();
        assert_eq!(bits, draw);
    }
}

#[test]
fn draws_are_deterministic_per_seed() {
    let frame = letters(5);
    for kind in [
        GenSpec::categorical(),
        GenSpec::simple(),
        GenSpec::general(None),
    ] {
        let mut a = make_rng(1234);
        let mut b = make_rng(1234);
        for _ in 0..50 {
            let ma: MassFunction<f64> = random_mass(&frame, &mut a, &kind).unwrap();
            let mb: MassFunction<f64> = random_mass(&frame, &mut b, &kind).unwrap();
            assert_eq!(ma.values(), mb.values());
        }
    }
}

#[test]
fn simple_marginal_is_uniform_over_nonempty_subsets() {
    let frame = letters(3);
    let n_nonempty = 7usize;
    let trials = 100_000u64;
    let mut counts = vec![0u64; frame.num_subsets()];
    for trial in 0..trials {
        let mut rng = substream(0xFA1, trial);
        let m: MassFunction<f64> = random_mass(&frame, &mut rng, &GenSpec::simple()).unwrap();
        // focal sets iterate by ascending index, so the categorical part
        // comes first; a lone focal Ω means the part was Ω itself
        let part = m.focal_elements().map(|(s, _)| s).next().unwrap();
        counts[part.index()] += 1;
    }
    assert_eq!(counts[0], 0, "the empty set is excluded by default");
    let p = 1.0 / n_nonempty as f64;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    for (i, &count) in counts.iter().enumerate().skip(1) {
        let freq = count as f64 / trials as f64;
        assert!(
            (freq - p).abs() <= 3.0 * sigma,
            "subset {i}: freq {freq} vs p {p} (3σ = {})",
            3.0 * sigma
        );
    }
}

#[test]
fn generated_masses_revalidate() {
    let frame = letters(6);
    for (s, kind) in [
        (1u64, GenSpec::categorical()),
        (2, GenSpec::simple()),
        (3, GenSpec::general(None)),
        (4, GenSpec::general(Some(5))),
    ] {
        for trial in 0..200 {
            let mut rng = substream(s, trial);
            let m: MassFunction<f64> = random_mass(&frame, &mut rng, &kind).unwrap();
            let assignments: Vec<_> = m.focal_elements().collect();
            let rebuilt = MassFunction::from_assignments(&frame, &assignments).unwrap();
            assert_eq!(rebuilt.values(), m.values());
        }
    }
}
