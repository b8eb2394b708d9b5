//! Shared helpers for the integration suites: direct-definition set-function
//! oracles (independent of the butterfly kernels) and random-mass plumbing.
#![allow(dead_code)]

use randset_core::frame::{Frame, Subset};
use randset_core::mass::MassFunction;
use randset_core::randgen::{random_mass, substream, GenSpec, RngHandle};

/// `bel(A) = Σ_{E ⊆ A, E ≠ ∅} m(E)`, straight from the definition.
pub fn bel_direct(m: &MassFunction<f64>) -> Vec<f64> {
    let n_sub = m.frame().num_subsets();
    (0..n_sub)
        .map(|a| {
            (1..n_sub)
                .filter(|&e| e & a == e)
                .map(|e| m.values()[e])
                .sum()
        })
        .collect()
}

/// `pl(A) = Σ_{E ∩ A ≠ ∅} m(E)`.
pub fn pl_direct(m: &MassFunction<f64>) -> Vec<f64> {
    let n_sub = m.frame().num_subsets();
    (0..n_sub)
        .map(|a| {
            (0..n_sub)
                .filter(|&e| e & a != 0)
                .map(|e| m.values()[e])
                .sum()
        })
        .collect()
}

/// `q(A) = Σ_{E ⊇ A} m(E)`.
pub fn q_direct(m: &MassFunction<f64>) -> Vec<f64> {
    let n_sub = m.frame().num_subsets();
    (0..n_sub)
        .map(|a| {
            (0..n_sub)
                .filter(|&e| e & a == a)
                .map(|e| m.values()[e])
                .sum()
        })
        .collect()
}

/// `b(A) = Σ_{E ⊆ A} m(E)`.
pub fn b_direct(m: &MassFunction<f64>) -> Vec<f64> {
    let n_sub = m.frame().num_subsets();
    (0..n_sub)
        .map(|a| {
            (0..n_sub)
                .filter(|&e| e & a == e)
                .map(|e| m.values()[e])
                .sum()
        })
        .collect()
}

pub fn letters(n: usize) -> Frame {
    Frame::letters(n).unwrap()
}

/// One general random mass function per `(seed, trial)`.
pub fn general_mass(frame: &Frame, seed: u64, trial: u64) -> MassFunction<f64> {
    let mut rng = substream(seed, trial);
    random_mass(frame, &mut rng, &GenSpec::general(None)).unwrap()
}

/// One simple random mass function per `(seed, trial)`.
pub fn simple_mass(frame: &Frame, seed: u64, trial: u64) -> MassFunction<f64> {
    let mut rng = substream(seed, trial);
    random_mass(frame, &mut rng, &GenSpec::simple()).unwrap()
}

pub fn general_mass_from(frame: &Frame, rng: &mut RngHandle) -> MassFunction<f64> {
    random_mass(frame, rng, &GenSpec::general(None)).unwrap()
}

pub fn simple_mass_from(frame: &Frame, rng: &mut RngHandle) -> MassFunction<f64> {
    random_mass(frame, rng, &GenSpec::simple()).unwrap()
}

pub fn random_subset_from(frame: &Frame, rng: &mut RngHandle) -> Subset {
    randset_core::randgen::random_subset(frame, rng, true)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
