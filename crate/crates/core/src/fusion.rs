//! Conjunctive and disjunctive combination, conditioning, evidential matrices
//! and the informational partial orders.
//!
//! The production path for both rules goes through the transform domain: the
//! commonality of a conjunctive combination is the entrywise product of the
//! operands' commonalities, and dually for implicabilities and the disjunctive
//! rule. The literal `O(4^n)` double sum survives as a named oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset, MATRIX_FRAME_CAP, ORACLE_FRAME_CAP};
use crate::mass::MassFunction;
use crate::real::Real;
use crate::transforms::{
    subset_sums, subset_sums_inverse, superset_sums, superset_sums_inverse, to_commonality,
    to_implicability,
};

/// Which lattice operation a combination distributes mass over.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMode {
    Intersection,
    Union,
}

/// Distribution of the intersection of two independent random sets.
pub fn conjunctive<T: Real>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<MassFunction<T>> {
    m1.same_frame(m2)?;
    let mut values = m1.values().to_vec();
    superset_sums(&mut values);
    let mut q2 = m2.values().to_vec();
    superset_sums(&mut q2);
    for (v, w) in values.iter_mut().zip(&q2) {
        *v *= *w;
    }
    superset_sums_inverse(&mut values);
    MassFunction::from_computed(m1.frame().clone(), values)
}

/// Distribution of the union of two independent random sets.
pub fn disjunctive<T: Real>(m1: &MassFunction<T>, m2: &MassFunction<T>) -> Result<MassFunction<T>> {
    m1.same_frame(m2)?;
    let mut values = m1.values().to_vec();
    subset_sums(&mut values);
    let mut b2 = m2.values().to_vec();
    subset_sums(&mut b2);
    for (v, w) in values.iter_mut().zip(&b2) {
        *v *= *w;
    }
    subset_sums_inverse(&mut values);
    MassFunction::from_computed(m1.frame().clone(), values)
}

pub fn combine<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    mode: CombineMode,
) -> Result<MassFunction<T>> {
    match mode {
        CombineMode::Intersection => conjunctive(m1, m2),
        CombineMode::Union => disjunctive(m1, m2),
    }
}

/// Literal double-sum evaluation of either rule; `O(4^n)` test oracle for the
/// transform-domain paths.
pub fn combine_bruteforce<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    mode: CombineMode,
) -> Result<MassFunction<T>> {
    m1.same_frame(m2)?;
    let n = m1.frame().len();
    if n > ORACLE_FRAME_CAP {
        return Err(Error::FrameTooLargeForOracle {
            n,
            cap: ORACLE_FRAME_CAP,
        });
    }
    let n_sub = m1.frame().num_subsets();
    let mut values = vec![T::zero(); n_sub];
    for a in 0..n_sub {
        let ma = m1.values()[a];
        if ma == T::zero() {
            continue;
        }
        for b in 0..n_sub {
            let target = match mode {
                CombineMode::Intersection => a & b,
                CombineMode::Union => a | b,
            };
            values[target] += ma * m2.values()[b];
        }
    }
    MassFunction::from_computed(m1.frame().clone(), values)
}

/// Conditioning `m_{|E}`: conjunctive combination with the categorical `m_E`,
/// computed directly as `out[C ∩ E] += m(C)`. Exact (a sum of input masses).
pub fn condition<T: Real>(m: &MassFunction<T>, e: Subset) -> MassFunction<T> {
    let mut values = vec![T::zero(); m.frame().num_subsets()];
    for (c, &mass) in m.values().iter().enumerate() {
        values[c & e.index()] += mass;
    }
    MassFunction::from_raw(m.frame().clone(), values)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Specialization,
    Generalization,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Specialization => "specialization",
            MatrixKind::Generalization => "generalization",
        }
    }
}

/// Dense `N x N` matrix in bijection with a mass function. Column `B` holds
/// `m_{|B}` (specialization) or `m ⊗∪ m_B` (generalization), so applying the
/// matrix to a mass vector realizes the corresponding combination rule.
#[derive(Clone, Debug, PartialEq)]
pub struct EvidentialMatrix<T: Real> {
    frame: Frame,
    kind: MatrixKind,
    entries: Vec<T>, // row-major, entries[row * N + col]
}

impl<T: Real> EvidentialMatrix<T> {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Row-major entries; `entry(A, B) = entries[A * N + B]`.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn entry(&self, row: Subset, col: Subset) -> T {
        self.entries[row.index() * self.frame.num_subsets() + col.index()]
    }

    pub(crate) fn from_parts(frame: Frame, kind: MatrixKind, entries: Vec<T>) -> Result<Self> {
        if entries.len() != frame.num_subsets() * frame.num_subsets() {
            return Err(Error::Format(format!(
                "expected {} matrix entries, got {}",
                frame.num_subsets() * frame.num_subsets(),
                entries.len()
            )));
        }
        Ok(EvidentialMatrix {
            frame,
            kind,
            entries,
        })
    }

    /// Matrix–vector product `M · m`.
    pub fn apply(&self, m: &MassFunction<T>) -> Result<MassFunction<T>> {
        if self.frame != *m.frame() {
            return Err(Error::FrameMismatch);
        }
        let n_sub = self.frame.num_subsets();
        let mut out = vec![T::zero(); n_sub];
        for (row, o) in out.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (col, &mass) in m.values().iter().enumerate() {
                acc += self.entries[row * n_sub + col] * mass;
            }
            *o = acc;
        }
        MassFunction::from_computed(self.frame.clone(), out)
    }
}

fn build_matrix<T: Real>(m: &MassFunction<T>, kind: MatrixKind) -> Result<EvidentialMatrix<T>> {
    let n = m.frame().len();
    if n > MATRIX_FRAME_CAP {
        return Err(Error::FrameTooLargeForMatrix {
            n,
            cap: MATRIX_FRAME_CAP,
        });
    }
    let n_sub = m.frame().num_subsets();
    let mut entries = vec![T::zero(); n_sub * n_sub];
    for col in 0..n_sub {
        for (c, &mass) in m.values().iter().enumerate() {
            let row = match kind {
                MatrixKind::Specialization => c & col,
                MatrixKind::Generalization => c | col,
            };
            entries[row * n_sub + col] += mass;
        }
    }
    Ok(EvidentialMatrix {
        frame: m.frame().clone(),
        kind,
        entries,
    })
}

/// Matrix with columns `m_{|B}`; applying it realizes the conjunctive rule.
pub fn specialization_matrix<T: Real>(m: &MassFunction<T>) -> Result<EvidentialMatrix<T>> {
    build_matrix(m, MatrixKind::Specialization)
}

/// Matrix with columns `m ⊗∪ m_B`; applying it realizes the disjunctive rule.
pub fn generalization_matrix<T: Real>(m: &MassFunction<T>) -> Result<EvidentialMatrix<T>> {
    build_matrix(m, MatrixKind::Generalization)
}

/// Informational partial orders.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfoOrder {
    /// `m1 ⊑_q m2` ⇔ `q1 ≤ q2` pointwise.
    Q,
    /// `m1 ⊑_b m2` ⇔ `b1 ≥ b2` pointwise.
    B,
}

/// True when `m1` carries at least as much information as `m2` under the
/// given order, with a tiny slack so exact-arithmetic truths survive floating
/// point noise.
pub fn leq_info<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    order: InfoOrder,
) -> Result<bool> {
    m1.same_frame(m2)?;
    let holds = match order {
        InfoOrder::Q => {
            let q1 = to_commonality(m1);
            let q2 = to_commonality(m2);
            q1.values()
                .iter()
                .zip(q2.values())
                .all(|(&a, &b)| a <= b + T::CMP_SLACK)
        }
        InfoOrder::B => {
            let b1 = to_implicability(m1);
            let b2 = to_implicability(m2);
            b1.values()
                .iter()
                .zip(b2.values())
                .all(|(&a, &b)| a + T::CMP_SLACK >= b)
        }
    };
    Ok(holds)
}
