//! Consistency measures and degrees of conflict between mass functions.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frame::Subset;
use crate::fusion::conjunctive;
use crate::mass::MassFunction;
use crate::metrics::{distance, DistanceSpec};
use crate::real::Real;
use crate::transforms::contour;

/// Dempster's degree of conflict: the mass the conjunctive combination puts
/// on the empty set.
pub fn kappa<T: Real>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    Ok(conjunctive(m1, m2)?.empty_mass())
}

/// Consistency measure `φ(m) = 1 − m(∅)`.
pub fn phi<T: Real>(m: &MassFunction<T>) -> T {
    T::one() - m.empty_mass()
}

/// Strong consistency measure `Φ(m)`: the largest singleton plausibility.
pub fn strong_phi<T: Real>(m: &MassFunction<T>) -> T {
    contour(m).into_iter().fold(T::zero(), T::max)
}

/// Degree of strong conflict: one minus the largest singleton plausibility of
/// the conjunctive combination.
pub fn strong_conflict<T: Real>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<T> {
    Ok(T::one() - strong_phi(&conjunctive(m1, m2)?))
}

/// Distance-spanned conflict degree: `1 − d(m1 ⊗∩ m2, m_∅)`, clamped to
/// `[0, 1]` against floating noise.
pub fn distance_conflict<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    spec: &DistanceSpec,
) -> Result<T> {
    let combined = conjunctive(m1, m2)?;
    let reference = MassFunction::total_conflict(m1.frame());
    let d = distance(&combined, &reference, spec)?;
    Ok((T::one() - d).max(T::zero()).min(T::one()))
}

/// Non-conflict predicates over focal elements (masses above the focal
/// threshold).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NonConflictKind {
    /// Every focal element of one operand intersects every focal element of
    /// the other.
    Pairwise,
    /// The intersection of all focal elements of both operands is nonempty.
    Global,
}

pub fn nonconflict<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    kind: NonConflictKind,
) -> Result<bool> {
    m1.same_frame(m2)?;
    match kind {
        NonConflictKind::Pairwise => {
            for (a, _) in m1.focal_elements() {
                for (b, _) in m2.focal_elements() {
                    if !a.intersects(b) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        NonConflictKind::Global => {
            let full = m1.frame().full();
            let mut core = full;
            for (a, _) in m1.focal_elements() {
                core = core & a;
            }
            for (b, _) in m2.focal_elements() {
                core = core & b;
            }
            Ok(core != Subset::EMPTY)
        }
    }
}

/// Which degree a report was computed with.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DegreeSpec {
    /// κ — mass of the empty set after conjunctive combination.
    Kappa,
    /// K — one minus the max contour of the conjunctive combination.
    Strong,
    /// φ — consistency of a single mass function.
    Phi,
    /// Φ — strong consistency of a single mass function.
    StrongPhi,
    /// 1 − d(m_{1∩2}, m_∅) for a distance spec.
    Distance { spec: DistanceSpec },
}

impl DegreeSpec {
    pub fn is_unary(self) -> bool {
        matches!(self, DegreeSpec::Phi | DegreeSpec::StrongPhi)
    }

    pub fn name(self) -> String {
        match self {
            DegreeSpec::Kappa => "kappa".to_string(),
            DegreeSpec::Strong => "K".to_string(),
            DegreeSpec::Phi => "phi".to_string(),
            DegreeSpec::StrongPhi => "Phi".to_string(),
            DegreeSpec::Distance { spec } => format!("C[{spec}]"),
        }
    }
}

/// Evaluation record for one degree on one or two mass functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConflictReport {
    pub degree: String,
    pub value: f64,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise_nonconflicting: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub globally_nonconflicting: Option<bool>,
}

/// Evaluates a degree and packages the result. Binary degrees also report the
/// two non-conflict predicates; unary ones ignore `m2`.
pub fn evaluate<T: Real>(
    degree: DegreeSpec,
    m1: &MassFunction<T>,
    m2: Option<&MassFunction<T>>,
    inputs: Vec<String>,
) -> Result<ConflictReport> {
    let value = match (degree, m2) {
        (DegreeSpec::Phi, _) => phi(m1),
        (DegreeSpec::StrongPhi, _) => strong_phi(m1),
        (DegreeSpec::Kappa, Some(m2)) => kappa(m1, m2)?,
        (DegreeSpec::Strong, Some(m2)) => strong_conflict(m1, m2)?,
        (DegreeSpec::Distance { spec }, Some(m2)) => distance_conflict(m1, m2, &spec)?,
        (_, None) => {
            return Err(crate::error::Error::InvalidSpec(format!(
                "degree {} needs two mass functions",
                degree.name()
            )))
        }
    };
    let value = value.max(T::zero()).min(T::one()).to_f64_lossy();
    let (pairwise, global) = match (degree.is_unary(), m2) {
        (false, Some(m2)) => (
            Some(nonconflict(m1, m2, NonConflictKind::Pairwise)?),
            Some(nonconflict(m1, m2, NonConflictKind::Global)?),
        ),
        _ => (None, None),
    };
    Ok(ConflictReport {
        degree: degree.name(),
        value,
        inputs,
        pairwise_nonconflicting: pairwise,
        globally_nonconflicting: global,
    })
}
