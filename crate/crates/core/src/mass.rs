//! Mass functions: distributions of finite random sets over a subset lattice.
//!
//! A mass function is stored as a dense length-`2^n` vector indexed by subset
//! mask. Construction validates nonnegativity (with a tiny clamp for floating
//! noise) and that the total is one; nothing is ever silently renormalized.

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::real::Real;

/// The distribution of a finite random set: nonnegative masses over every
/// subset of the frame, summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction<T: Real> {
    frame: Frame,
    values: Vec<T>,
}

impl<T: Real> MassFunction<T> {
    /// Builds a validated mass function from `(subset, mass)` assignments.
    /// Duplicate subsets are summed; unlisted subsets get mass zero.
    pub fn from_assignments(frame: &Frame, assignments: &[(Subset, T)]) -> Result<Self> {
        let mut values = vec![T::zero(); frame.num_subsets()];
        for &(subset, mass) in assignments {
            frame.check_subset(subset)?;
            if mass < -T::NEG_INPUT_TOL {
                return Err(Error::NegativeMass {
                    subset: subset.index(),
                    mass: mass.to_f64_lossy(),
                });
            }
            values[subset.index()] += mass;
        }
        Self::validated(frame.clone(), values, T::NEG_INPUT_TOL)
    }

    /// The categorical mass function `m_A`: all mass on `A`.
    pub fn categorical(frame: &Frame, a: Subset) -> Self {
        let mut values = vec![T::zero(); frame.num_subsets()];
        values[a.index()] = T::one();
        MassFunction {
            frame: frame.clone(),
            values,
        }
    }

    /// The vacuous mass function `m_Ω`.
    pub fn vacuous(frame: &Frame) -> Self {
        Self::categorical(frame, frame.full())
    }

    /// The total-conflict mass function `m_∅`.
    pub fn total_conflict(frame: &Frame) -> Self {
        Self::categorical(frame, Subset::EMPTY)
    }

    /// The simple mass function `w·m_A + (1−w)·m_Ω`.
    pub fn simple(frame: &Frame, a: Subset, w: T) -> Result<Self> {
        if !(T::zero()..=T::one()).contains(&w) {
            return Err(Error::WeightOutOfRange(w.to_f64_lossy()));
        }
        frame.check_subset(a)?;
        let mut values = vec![T::zero(); frame.num_subsets()];
        values[a.index()] += w;
        values[frame.full().index()] += T::one() - w;
        Ok(MassFunction {
            frame: frame.clone(),
            values,
        })
    }

    /// The negation `m̄(A) = m(A^c)`; an exact entry permutation.
    pub fn negation(&self) -> Self {
        let full = self.frame.num_subsets() - 1;
        let values = (0..=full).map(|a| self.values[a ^ full]).collect();
        MassFunction {
            frame: self.frame.clone(),
            values,
        }
    }

    /// Pushes the mass function onto a finer frame through disjoint blocks:
    /// element `i` of this frame maps to `blocks[i]`, and a subset maps to the
    /// union of its elements' blocks (the empty set maps to the empty set).
    pub fn refine(&self, target: &Frame, blocks: &[Subset]) -> Result<MassFunction<T>> {
        if blocks.len() != self.frame.len() {
            return Err(Error::InvalidRefinement(format!(
                "expected {} blocks, got {}",
                self.frame.len(),
                blocks.len()
            )));
        }
        let mut seen = Subset::EMPTY;
        for (i, &block) in blocks.iter().enumerate() {
            target.check_subset(block).map_err(|_| {
                Error::InvalidRefinement(format!("block {i} is not a subset of the target frame"))
            })?;
            if block.is_empty() {
                return Err(Error::InvalidRefinement(format!("block {i} is empty")));
            }
            if seen.intersects(block) {
                return Err(Error::InvalidRefinement(format!(
                    "block {i} overlaps an earlier block"
                )));
            }
            seen = seen | block;
        }
        let mut values = vec![T::zero(); target.num_subsets()];
        for (a, &mass) in self.values.iter().enumerate() {
            let mut image = Subset::EMPTY;
            for (i, &block) in blocks.iter().enumerate() {
                if a >> i & 1 == 1 {
                    image = image | block;
                }
            }
            values[image.index()] += mass;
        }
        Ok(MassFunction {
            frame: target.clone(),
            values,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> T {
        self.values[s.index()]
    }

    /// Mass on the empty set.
    pub fn empty_mass(&self) -> T {
        self.values[0]
    }

    /// Subsets carrying mass above the focal threshold.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Subset, T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > T::FOCAL_EPS)
            .map(|(i, &v)| (Subset::from_index(i), v))
    }

    pub(crate) fn same_frame(&self, other: &Self) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Wraps values that are valid by construction (permutations, convex
    /// mixtures of valid mass functions).
    pub(crate) fn from_raw(frame: Frame, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), frame.num_subsets());
        MassFunction { frame, values }
    }

    /// Wraps the output of an inverse transform: clamps floating-point
    /// undershoot and validates, reporting [`Error::NotAMassImage`] on failure.
    pub(crate) fn from_computed(frame: Frame, values: Vec<T>) -> Result<Self> {
        Self::validated(frame, values, T::NEG_INVERSE_TOL)
            .map_err(|e| Error::NotAMassImage(e.to_string()))
    }

    fn validated(frame: Frame, mut values: Vec<T>, neg_tol: T) -> Result<Self> {
        let mut sum = T::zero();
        for (i, v) in values.iter_mut().enumerate() {
            if *v < T::zero() {
                if *v < -neg_tol {
                    return Err(Error::NegativeMass {
                        subset: i,
                        mass: v.to_f64_lossy(),
                    });
                }
                *v = T::zero();
            }
            sum += *v;
        }
        if (sum - T::one()).abs() > T::MASS_SUM_TOL {
            return Err(Error::MassSumViolation {
                sum: sum.to_f64_lossy(),
                tol: T::MASS_SUM_TOL.to_f64_lossy(),
            });
        }
        Ok(MassFunction { frame, values })
    }
}
