//! Distances between mass functions and between plain subsets.
//!
//! Vector distances compare set-function images under an `L_k` norm and
//! normalize by the diameter of the mass simplex, which is attained on a pair
//! of categorical mass functions. For commonalities, plausibilities and
//! implicabilities the diameter has the closed form `(N−1)^{1/k}`; for the
//! specialization distance it is `(2(N−1))^{1/k}`; for beliefs no closed form
//! is claimed and the value is computed from the categorical pairs directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset, MATRIX_FRAME_CAP};
use crate::fusion::{generalization_matrix, specialization_matrix, MatrixKind};
use crate::mass::MassFunction;
use crate::real::Real;
use crate::transforms::{to_set_function, SetFamily};

/// `L_k` norm order: a positive integer or infinity (max norm).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NormOrder {
    Finite(u32),
    Infinity,
}

// Wire form: a JSON number for finite orders, the string "inf" otherwise.
impl Serialize for NormOrder {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormOrder::Finite(k) => serializer.serialize_u32(*k),
            NormOrder::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for NormOrder {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(k) => NormOrder::finite(k).map_err(|e| D::Error::custom(e.to_string())),
            Raw::Str(s) => NormOrder::parse(&s).map_err(|e| D::Error::custom(e.to_string())),
        }
    }
}

impl NormOrder {
    pub fn finite(k: u32) -> Result<NormOrder> {
        if k >= 1 {
            Ok(NormOrder::Finite(k))
        } else {
            Err(Error::InvalidNormOrder)
        }
    }

    pub fn parse(s: &str) -> Result<NormOrder> {
        match s {
            "inf" | "infinity" | "∞" => Ok(NormOrder::Infinity),
            _ => s
                .parse::<u32>()
                .map_err(|_| Error::InvalidNormOrder)
                .and_then(Self::finite),
        }
    }
}

impl std::fmt::Display for NormOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormOrder::Finite(k) => write!(f, "{k}"),
            NormOrder::Infinity => write!(f, "inf"),
        }
    }
}

/// `L_k` norm of a difference stream.
pub fn lk_norm<T: Real>(diffs: impl Iterator<Item = T>, k: NormOrder) -> T {
    match k {
        NormOrder::Infinity => diffs.fold(T::zero(), |acc, d| acc.max(d.abs())),
        NormOrder::Finite(1) => diffs.fold(T::zero(), |acc, d| acc + d.abs()),
        NormOrder::Finite(2) => {
            let sum = diffs.fold(T::zero(), |acc, d| acc + d * d);
            sum.sqrt()
        }
        NormOrder::Finite(k) => {
            let sum = diffs.fold(T::zero(), |acc, d| acc + d.abs().powi(k as i32));
            sum.powf(T::one() / T::of_usize(k as usize))
        }
    }
}

fn root<T: Real>(value: T, k: u32) -> T {
    match k {
        1 => value,
        2 => value.sqrt(),
        _ => value.powf(T::one() / T::of_usize(k as usize)),
    }
}

/// Distance families exposed by the harness and the CLI.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceFamily {
    Q,
    Pl,
    Bel,
    B,
    Spe,
    Jousselme,
}

impl DistanceFamily {
    pub fn name(self) -> &'static str {
        match self {
            DistanceFamily::Q => "q",
            DistanceFamily::Pl => "pl",
            DistanceFamily::Bel => "bel",
            DistanceFamily::B => "b",
            DistanceFamily::Spe => "spe",
            DistanceFamily::Jousselme => "jousselme",
        }
    }

    pub fn parse(s: &str) -> Result<DistanceFamily> {
        match s {
            "q" => Ok(DistanceFamily::Q),
            "pl" => Ok(DistanceFamily::Pl),
            "bel" => Ok(DistanceFamily::Bel),
            "b" => Ok(DistanceFamily::B),
            "spe" => Ok(DistanceFamily::Spe),
            "jousselme" | "j" => Ok(DistanceFamily::Jousselme),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

/// A fully specified mass-function distance. `k` is ignored for the Jousselme
/// distance, whose similarity matrix is fixed to Jaccard.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DistanceSpec {
    pub family: DistanceFamily,
    pub k: NormOrder,
}

impl DistanceSpec {
    pub fn new(family: DistanceFamily, k: NormOrder) -> DistanceSpec {
        DistanceSpec { family, k }
    }

    pub fn jousselme() -> DistanceSpec {
        DistanceSpec {
            family: DistanceFamily::Jousselme,
            k: NormOrder::Finite(2),
        }
    }
}

impl std::fmt::Display for DistanceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            DistanceFamily::Jousselme => write!(f, "d_J"),
            family => write!(f, "d_{},{}", family.name(), self.k),
        }
    }
}

/// Diameter of the mass simplex under the given distance: the normalization
/// constant `ρ`. Unsupported for the Jousselme distance (already normalized).
pub fn diameter_rho<T: Real>(spec: &DistanceSpec, frame: &Frame) -> Result<T> {
    let n_sub = frame.num_subsets();
    match (spec.family, spec.k) {
        (DistanceFamily::Jousselme, _) => Err(Error::UnsupportedFamily("jousselme".to_string())),
        (_, NormOrder::Infinity) => Ok(T::one()),
        (DistanceFamily::Q | DistanceFamily::Pl | DistanceFamily::B, NormOrder::Finite(k)) => {
            Ok(root(T::of_usize(n_sub - 1), k))
        }
        (DistanceFamily::Spe, NormOrder::Finite(k)) => Ok(root(T::of_usize(2 * (n_sub - 1)), k)),
        (DistanceFamily::Bel, NormOrder::Finite(k)) => {
            // categorical beliefs are 0/1-valued, so one differing-entry count
            // gives the diameter for every finite k
            Ok(root(T::of(frame.bel_diameter_count() as f64), k))
        }
    }
}

/// Normalized `L_k` distance between the set-function images of the operands.
///
/// The plausibility distance is evaluated on the implicability images: the
/// two difference vectors are complement-permutations of one another, so the
/// norms agree, and sharing the summation order keeps `d_pl = d_b` bit-exact.
pub fn f_distance<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    family: SetFamily,
    k: NormOrder,
) -> Result<T> {
    m1.same_frame(m2)?;
    let family = match family {
        SetFamily::Pl => SetFamily::B,
        other => other,
    };
    let f1 = to_set_function(m1, family);
    let f2 = to_set_function(m2, family);
    let norm = lk_norm(f1.values().iter().zip(f2.values()).map(|(&a, &b)| a - b), k);
    let dist_family = match family {
        SetFamily::Q => DistanceFamily::Q,
        SetFamily::Pl => DistanceFamily::Pl,
        SetFamily::Bel => DistanceFamily::Bel,
        SetFamily::B => DistanceFamily::B,
    };
    let rho = diameter_rho::<T>(&DistanceSpec::new(dist_family, k), m1.frame())?;
    Ok(norm / rho)
}

/// Jousselme distance `sqrt(½ (m1−m2)ᵀ D (m1−m2))` with the Jaccard
/// similarity matrix `D`, cached per frame.
pub fn jousselme<T: Real>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    m1.same_frame(m2)?;
    let n = m1.frame().len();
    if n > MATRIX_FRAME_CAP {
        return Err(Error::FrameTooLargeForMatrix {
            n,
            cap: MATRIX_FRAME_CAP,
        });
    }
    let d = m1.frame().jaccard_matrix();
    let n_sub = m1.frame().num_subsets();
    let diff: Vec<T> = m1
        .values()
        .iter()
        .zip(m2.values())
        .map(|(&a, &b)| a - b)
        .collect();
    let mut quad = T::zero();
    for (row, &x) in diff.iter().enumerate() {
        if x == T::zero() {
            continue;
        }
        let mut acc = T::zero();
        for (col, &y) in diff.iter().enumerate() {
            acc += T::of(d[row * n_sub + col]) * y;
        }
        quad += x * acc;
    }
    // the quadratic form is positive semidefinite; clamp floating noise
    Ok((quad.max(T::zero()) / T::of(2.0)).sqrt())
}

/// Normalized entrywise `L_k` distance between the operands' evidential
/// matrices of the given kind. The generalization variant coincides with the
/// specialization distance and exists for that equality check.
pub fn matrix_distance<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    kind: MatrixKind,
    k: NormOrder,
) -> Result<T> {
    m1.same_frame(m2)?;
    let (a, b) = match kind {
        MatrixKind::Specialization => (specialization_matrix(m1)?, specialization_matrix(m2)?),
        MatrixKind::Generalization => (generalization_matrix(m1)?, generalization_matrix(m2)?),
    };
    let norm = lk_norm(a.entries().iter().zip(b.entries()).map(|(&x, &y)| x - y), k);
    let rho = diameter_rho::<T>(&DistanceSpec::new(DistanceFamily::Spe, k), m1.frame())?;
    Ok(norm / rho)
}

/// Normalized `L_k` specialization distance.
pub fn specialization_distance<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    k: NormOrder,
) -> Result<T> {
    matrix_distance(m1, m2, MatrixKind::Specialization, k)
}

/// Dispatches a [`DistanceSpec`] to the matching distance.
pub fn distance<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    spec: &DistanceSpec,
) -> Result<T> {
    match spec.family {
        DistanceFamily::Q => f_distance(m1, m2, SetFamily::Q, spec.k),
        DistanceFamily::Pl => f_distance(m1, m2, SetFamily::Pl, spec.k),
        DistanceFamily::Bel => f_distance(m1, m2, SetFamily::Bel, spec.k),
        DistanceFamily::B => f_distance(m1, m2, SetFamily::B, spec.k),
        DistanceFamily::Spe => specialization_distance(m1, m2, spec.k),
        DistanceFamily::Jousselme => jousselme(m1, m2),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetDistanceKind {
    Hamming,
    Jaccard,
}

/// Normalized set distance between two subsets of the frame.
pub fn set_distance<T: Real>(a: Subset, b: Subset, frame: &Frame, kind: SetDistanceKind) -> T {
    let sym_diff = (a ^ b).card() as usize;
    match kind {
        SetDistanceKind::Hamming => T::of_usize(sym_diff) / T::of_usize(frame.len()),
        SetDistanceKind::Jaccard => {
            let union = (a | b).card() as usize;
            if union == 0 {
                T::zero()
            } else {
                T::of_usize(sym_diff) / T::of_usize(union)
            }
        }
    }
}
