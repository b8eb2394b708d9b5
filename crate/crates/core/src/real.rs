//! Scalar abstraction for the numeric kernels.
//!
//! Everything in this crate is plain floating-point arithmetic, so the kernels
//! are generic over the scalar. The associated constants pin the validation
//! and comparison tolerances per precision; the `f64` values are the reference
//! contract used by the CLI and the test suites.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar usable by every kernel in this crate.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Accepted deviation of a mass-function total from one.
    const MASS_SUM_TOL: Self;
    /// Input masses may undershoot zero by at most this much; they are clamped.
    const NEG_INPUT_TOL: Self;
    /// Inverse transforms may undershoot zero by at most this much per entry.
    const NEG_INVERSE_TOL: Self;
    /// Additive slack for order comparisons between derived quantities.
    const CMP_SLACK: Self;
    /// Smallest mass that still counts as a focal element.
    const FOCAL_EPS: Self;

    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 converts to every Real")
    }

    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("usize converts to every Real")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("every Real converts to f64")
    }
}

impl Real for f64 {
    const MASS_SUM_TOL: Self = 1e-9;
    const NEG_INPUT_TOL: Self = 1e-12;
    const NEG_INVERSE_TOL: Self = 1e-9;
    const CMP_SLACK: Self = 1e-12;
    const FOCAL_EPS: Self = 1e-12;
}

impl Real for f32 {
    const MASS_SUM_TOL: Self = 1e-4;
    const NEG_INPUT_TOL: Self = 1e-6;
    const NEG_INVERSE_TOL: Self = 1e-4;
    const CMP_SLACK: Self = 1e-5;
    const FOCAL_EPS: Self = 1e-6;
}
