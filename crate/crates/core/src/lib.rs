//! Computation kernels for Dempster–Shafer belief functions viewed as
//! distributions of finite random sets.
//!
//! The crate provides:
//!
//! * frames, bitmask subset indexing and validated mass functions ([`frame`],
//!   [`mass`]);
//! * `O(n·2^n)` transforms between mass functions and the belief,
//!   plausibility, commonality and implicability families ([`transforms`]);
//! * conjunctive and disjunctive combination, conditioning, evidential
//!   matrices and informational orders ([`fusion`]);
//! * the one-parameter interpolating family of combination rules via
//!   Kronecker-structured transfers ([`alpha`]);
//! * normalized distances (`L_k` set-function distances, Jousselme,
//!   specialization) and plain set distances ([`metrics`]);
//! * consistency measures and conflict degrees ([`conflict`]);
//! * seeded reproducible generators ([`randgen`]) and the Monte Carlo /
//!   exhaustive experiment harness ([`experiments`]);
//! * JSON and binary wire formats ([`io`]).
//!
//! All numeric kernels are generic over the scalar through the [`real::Real`]
//! trait; the type aliases below fix `f64` (the precision the CLI and the
//! acceptance suites run at) and `f32`.

pub mod alpha;
pub mod conflict;
pub mod error;
pub mod experiments;
pub mod frame;
pub mod fusion;
pub mod io;
pub mod mass;
pub mod metrics;
pub mod randgen;
pub mod real;
pub mod transforms;

pub use error::{Error, Result};
pub use frame::{Frame, Subset};
pub use real::Real;

/// `f64` instantiations (reference precision).
pub type MassFunction64 = mass::MassFunction<f64>;
pub type SetFunction64 = transforms::SetFunction<f64>;
pub type AlphaSetFunction64 = alpha::AlphaSetFunction<f64>;
pub type EvidentialMatrix64 = fusion::EvidentialMatrix<f64>;
pub type Alpha64 = alpha::Alpha<f64>;

/// `f32` instantiations.
pub type MassFunction32 = mass::MassFunction<f32>;
pub type SetFunction32 = transforms::SetFunction<f32>;
pub type AlphaSetFunction32 = alpha::AlphaSetFunction<f32>;
pub type EvidentialMatrix32 = fusion::EvidentialMatrix<f32>;
pub type Alpha32 = alpha::Alpha<f32>;
