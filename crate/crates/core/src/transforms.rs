//! Fast bidirectional transforms between mass functions and the set-function
//! families bel, pl, q and b.
//!
//! The workhorses are in-place zeta/Möbius transforms over the subset lattice:
//! one butterfly pass per bit position, `O(n·2^n)` total. Plausibility is
//! derived from implicability through the complement permutation
//! (`pl(A) = 1 − b(A^c)`) so both directions reuse a single kernel pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;
use crate::real::Real;

/// Which set-function family a dense vector of values belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetFamily {
    Bel,
    Pl,
    Q,
    B,
}

impl SetFamily {
    pub const ALL: [SetFamily; 4] = [SetFamily::Bel, SetFamily::Pl, SetFamily::Q, SetFamily::B];

    pub fn name(self) -> &'static str {
        match self {
            SetFamily::Bel => "bel",
            SetFamily::Pl => "pl",
            SetFamily::Q => "q",
            SetFamily::B => "b",
        }
    }
}

/// The image of a mass function under one of the four transforms.
#[derive(Clone, Debug, PartialEq)]
pub struct SetFunction<T: Real> {
    frame: Frame,
    family: SetFamily,
    values: Vec<T>,
}

impl<T: Real> SetFunction<T> {
    /// Wraps externally supplied values (e.g. parsed from JSON). Only shape is
    /// checked here; [`mass_of`] decides whether they are a valid image.
    pub fn from_values(frame: &Frame, family: SetFamily, values: Vec<T>) -> Result<Self> {
        if values.len() != frame.num_subsets() {
            return Err(Error::Format(format!(
                "expected {} values, got {}",
                frame.num_subsets(),
                values.len()
            )));
        }
        Ok(SetFunction {
            frame: frame.clone(),
            family,
            values,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn family(&self) -> SetFamily {
        self.family
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> T {
        self.values[s.index()]
    }
}

/// Subset-sum zeta: `out[A] = Σ_{E ⊆ A} in[E]`.
pub(crate) fn subset_sums<T: Real>(values: &mut [T]) {
    butterfly(values, |lo, hi| *hi += *lo);
}

/// Inverse of [`subset_sums`].
pub(crate) fn subset_sums_inverse<T: Real>(values: &mut [T]) {
    butterfly(values, |lo, hi| *hi -= *lo);
}

/// Superset-sum zeta: `out[A] = Σ_{E ⊇ A} in[E]`.
pub(crate) fn superset_sums<T: Real>(values: &mut [T]) {
    butterfly(values, |lo, hi| *lo += *hi);
}

/// Inverse of [`superset_sums`].
pub(crate) fn superset_sums_inverse<T: Real>(values: &mut [T]) {
    butterfly(values, |lo, hi| *lo -= *hi);
}

/// Runs `step(without_bit, with_bit)` over every pair differing in one bit,
/// once per bit position. The per-bit passes commute.
pub(crate) fn butterfly<T: Real>(values: &mut [T], step: impl Fn(&mut T, &mut T)) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut block = 1;
    while block < len {
        for chunk in values.chunks_exact_mut(block * 2) {
            let (lo, hi) = chunk.split_at_mut(block);
            for (l, h) in lo.iter_mut().zip(hi) {
                step(l, h);
            }
        }
        block <<= 1;
    }
}

/// Commonality: `q(A) = Σ_{E ⊇ A} m(E)`.
pub fn to_commonality<T: Real>(m: &MassFunction<T>) -> SetFunction<T> {
    let mut values = m.values().to_vec();
    superset_sums(&mut values);
    SetFunction {
        frame: m.frame().clone(),
        family: SetFamily::Q,
        values,
    }
}

/// Implicability: `b(A) = Σ_{E ⊆ A} m(E)`.
pub fn to_implicability<T: Real>(m: &MassFunction<T>) -> SetFunction<T> {
    let mut values = m.values().to_vec();
    subset_sums(&mut values);
    SetFunction {
        frame: m.frame().clone(),
        family: SetFamily::B,
        values,
    }
}

/// Plausibility: `pl(A) = 1 − b(A^c)`.
pub fn to_plausibility<T: Real>(m: &MassFunction<T>) -> SetFunction<T> {
    let b = to_implicability(m);
    let full = m.frame().num_subsets() - 1;
    let values = (0..=full).map(|a| T::one() - b.values[a ^ full]).collect();
    SetFunction {
        frame: m.frame().clone(),
        family: SetFamily::Pl,
        values,
    }
}

/// Belief: `bel(A) = b(A) − m(∅)`.
pub fn to_belief<T: Real>(m: &MassFunction<T>) -> SetFunction<T> {
    let empty_mass = m.empty_mass();
    let mut f = to_implicability(m);
    for v in &mut f.values {
        *v -= empty_mass;
    }
    f.family = SetFamily::Bel;
    f
}

pub fn to_set_function<T: Real>(m: &MassFunction<T>, family: SetFamily) -> SetFunction<T> {
    match family {
        SetFamily::Bel => to_belief(m),
        SetFamily::Pl => to_plausibility(m),
        SetFamily::Q => to_commonality(m),
        SetFamily::B => to_implicability(m),
    }
}

/// Exact inverse of the matching forward transform (Möbius inversion).
///
/// Fails with [`Error::NotAMassImage`] when the recovered vector is not a
/// valid mass function.
pub fn mass_of<T: Real>(f: &SetFunction<T>) -> Result<MassFunction<T>> {
    let full = f.frame.num_subsets() - 1;
    let mut values: Vec<T> = match f.family {
        SetFamily::Q => f.values.clone(),
        SetFamily::B => f.values.clone(),
        // b(A) = 1 − pl(A^c)
        SetFamily::Pl => (0..=full).map(|a| T::one() - f.values[a ^ full]).collect(),
        // b(A) = bel(A) + m(∅), and b(Ω) = 1 forces m(∅) = 1 − bel(Ω)
        SetFamily::Bel => {
            let empty_mass = T::one() - f.values[full];
            f.values.iter().map(|&v| v + empty_mass).collect()
        }
    };
    match f.family {
        SetFamily::Q => superset_sums_inverse(&mut values),
        _ => subset_sums_inverse(&mut values),
    }
    MassFunction::from_computed(f.frame.clone(), values)
}

/// Contour function: plausibility restricted to singletons, in element order.
pub fn contour<T: Real>(m: &MassFunction<T>) -> Vec<T> {
    let b = to_implicability(m);
    let full = m.frame().num_subsets() - 1;
    (0..m.frame().len())
        .map(|i| T::one() - b.values[full ^ (1 << i)])
        .collect()
}
