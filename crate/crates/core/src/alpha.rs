//! One-parameter family of combination rules interpolating between the
//! conjunctive and disjunctive behaviors.
//!
//! Each rule is characterized by a Kronecker-structured transfer matrix: the
//! n-fold Kronecker power of a 2x2 block. At `α = 1` the transfers reduce
//! exactly to the commonality and implicability transforms under this crate's
//! bit convention, which pins the otherwise arbitrary factor ordering. The
//! transfer (and its inverse, via per-stage 2x2 inverses; the block
//! determinant is `2 − α ≥ 1` on the whole parameter range) is applied as an
//! n-stage butterfly in `O(n·2^n)`; the dense matrix is only materialized on
//! request for small frames.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset, MATRIX_FRAME_CAP};
use crate::fusion::CombineMode;
use crate::mass::MassFunction;
use crate::metrics::{lk_norm, NormOrder};
use crate::real::Real;

/// Interpolation parameter, validated to `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Alpha<T: Real>(T);

impl<T: Real> Alpha<T> {
    pub fn new(value: T) -> Result<Self> {
        if (T::zero()..=T::one()).contains(&value) {
            Ok(Alpha(value))
        } else {
            Err(Error::AlphaOutOfRange(value.to_f64_lossy()))
        }
    }

    pub fn one() -> Self {
        Alpha(T::one())
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// The two transfer families. `Q` generalizes commonalities (conjunctive
/// side), `B` generalizes implicabilities (disjunctive side).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum AlphaFamily {
    #[serde(rename = "aq")]
    Q,
    #[serde(rename = "ab")]
    B,
}

impl AlphaFamily {
    pub fn name(self) -> &'static str {
        match self {
            AlphaFamily::Q => "aq",
            AlphaFamily::B => "ab",
        }
    }

    pub fn for_mode(mode: CombineMode) -> AlphaFamily {
        match mode {
            CombineMode::Intersection => AlphaFamily::Q,
            CombineMode::Union => AlphaFamily::B,
        }
    }
}

/// The image of a mass function under an α-transfer; values lie in `[α−1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaSetFunction<T: Real> {
    frame: Frame,
    family: AlphaFamily,
    alpha: Alpha<T>,
    values: Vec<T>,
}

impl<T: Real> AlphaSetFunction<T> {
    pub fn from_values(
        frame: &Frame,
        family: AlphaFamily,
        alpha: Alpha<T>,
        values: Vec<T>,
    ) -> Result<Self> {
        if values.len() != frame.num_subsets() {
            return Err(Error::Format(format!(
                "expected {} values, got {}",
                frame.num_subsets(),
                values.len()
            )));
        }
        Ok(AlphaSetFunction {
            frame: frame.clone(),
            family,
            alpha,
            values,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn family(&self) -> AlphaFamily {
        self.family
    }

    pub fn alpha(&self) -> Alpha<T> {
        self.alpha
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> T {
        self.values[s.index()]
    }
}

// Per-bit 2x2 blocks. With pair (lo = mask without the bit, hi = with it):
//   Q family: [lo', hi'] = [lo + hi, (α−1)·lo + hi]
//   B family: [lo', hi'] = [lo + (α−1)·hi, lo + hi]
// At α = 1 these are exactly the superset-sum and subset-sum butterflies.

fn forward_in_place<T: Real>(values: &mut [T], family: AlphaFamily, alpha: T) {
    let a1 = alpha - T::one();
    crate::transforms::butterfly(values, |lo, hi| {
        let (l, h) = (*lo, *hi);
        match family {
            AlphaFamily::Q => {
                *lo = l + h;
                *hi = a1 * l + h;
            }
            AlphaFamily::B => {
                *lo = l + a1 * h;
                *hi = l + h;
            }
        }
    });
}

fn inverse_in_place<T: Real>(values: &mut [T], family: AlphaFamily, alpha: T) {
    let a1 = alpha - T::one();
    let det = T::of(2.0) - alpha;
    crate::transforms::butterfly(values, |lo, hi| {
        let (l, h) = (*lo, *hi);
        match family {
            AlphaFamily::Q => {
                *lo = (l - h) / det;
                *hi = (h - a1 * l) / det;
            }
            AlphaFamily::B => {
                *lo = (l - a1 * h) / det;
                *hi = (h - l) / det;
            }
        }
    });
}

/// α-commonality or α-implicability of a mass function.
pub fn to_alpha<T: Real>(
    m: &MassFunction<T>,
    alpha: Alpha<T>,
    family: AlphaFamily,
) -> AlphaSetFunction<T> {
    let mut values = m.values().to_vec();
    forward_in_place(&mut values, family, alpha.get());
    AlphaSetFunction {
        frame: m.frame().clone(),
        family,
        alpha,
        values,
    }
}

/// Exact inverse of [`to_alpha`].
pub fn from_alpha<T: Real>(f: &AlphaSetFunction<T>) -> Result<MassFunction<T>> {
    let mut values = f.values.clone();
    inverse_in_place(&mut values, f.family, f.alpha.get());
    MassFunction::from_computed(f.frame.clone(), values)
}

/// Dense row-major `N x N` transfer matrix (n-fold Kronecker power of the
/// family's 2x2 block). Only for small frames; the combination paths use the
/// butterfly instead.
pub fn alpha_transfer_matrix<T: Real>(
    frame: &Frame,
    alpha: Alpha<T>,
    family: AlphaFamily,
) -> Result<Vec<T>> {
    let n = frame.len();
    if n > MATRIX_FRAME_CAP {
        return Err(Error::FrameTooLargeForMatrix {
            n,
            cap: MATRIX_FRAME_CAP,
        });
    }
    let a1 = alpha.get() - T::one();
    let block = match family {
        AlphaFamily::Q => [T::one(), T::one(), a1, T::one()],
        AlphaFamily::B => [T::one(), a1, T::one(), T::one()],
    };
    // Kronecker power built bit by bit; previously built bits are the
    // faster-varying indices, matching the mask convention.
    let mut dim = 1usize;
    let mut matrix = vec![T::one()];
    for _ in 0..n {
        let next_dim = dim * 2;
        let mut next = vec![T::zero(); next_dim * next_dim];
        for (bi, &bv) in block.iter().enumerate() {
            let (brow, bcol) = (bi / 2, bi % 2);
            for row in 0..dim {
                for col in 0..dim {
                    next[(brow * dim + row) * next_dim + (bcol * dim + col)] =
                        bv * matrix[row * dim + col];
                }
            }
        }
        matrix = next;
        dim = next_dim;
    }
    Ok(matrix)
}

/// Combination under the α-rule for the given mode: the transfer image of the
/// result is the entrywise product of the operands' transfer images.
pub fn alpha_combine<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    alpha: Alpha<T>,
    mode: CombineMode,
) -> Result<MassFunction<T>> {
    m1.same_frame(m2)?;
    let family = AlphaFamily::for_mode(mode);
    let mut values = m1.values().to_vec();
    forward_in_place(&mut values, family, alpha.get());
    let mut rhs = m2.values().to_vec();
    forward_in_place(&mut rhs, family, alpha.get());
    for (v, w) in values.iter_mut().zip(&rhs) {
        *v *= *w;
    }
    inverse_in_place(&mut values, family, alpha.get());
    MassFunction::from_computed(m1.frame().clone(), values)
}

/// Unnormalized `L_k` distance between the operands' α-set-functions. The
/// α-families carry no diameter normalization.
pub fn alpha_norm_distance<T: Real>(
    m1: &MassFunction<T>,
    m2: &MassFunction<T>,
    alpha: Alpha<T>,
    family: AlphaFamily,
    k: NormOrder,
) -> Result<T> {
    m1.same_frame(m2)?;
    let f1 = to_alpha(m1, alpha, family);
    let f2 = to_alpha(m2, alpha, family);
    Ok(lk_norm(
        f1.values.iter().zip(&f2.values).map(|(&a, &b)| a - b),
        k,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{conjunctive, disjunctive};
    use crate::transforms::{to_commonality, to_implicability};

    fn abc() -> Frame {
        Frame::new(["a", "b", "c"]).unwrap()
    }

    fn sample(f: &Frame) -> MassFunction<f64> {
        let ab = f.subset_of(&["a", "b"]).unwrap();
        let c = f.subset_of(&["c"]).unwrap();
        MassFunction::from_assignments(f, &[(ab, 0.25), (c, 0.25), (f.full(), 0.5)]).unwrap()
    }

    #[test]
    fn unit_alpha_reduces_to_the_exact_transforms() {
        let f = abc();
        let m = sample(&f);
        let aq = to_alpha(&m, Alpha::one(), AlphaFamily::Q);
        assert_eq!(aq.values(), to_commonality(&m).values());
        let ab = to_alpha(&m, Alpha::one(), AlphaFamily::B);
        assert_eq!(ab.values(), to_implicability(&m).values());
    }

    #[test]
    fn single_element_zero_alpha_matrix() {
        let f = Frame::new(["x"]).unwrap();
        let q0 =
            alpha_transfer_matrix::<f64>(&f, Alpha::new(0.0).unwrap(), AlphaFamily::Q).unwrap();
        assert_eq!(q0, vec![1.0, 1.0, -1.0, 1.0]);
        let b0 =
            alpha_transfer_matrix::<f64>(&f, Alpha::new(0.0).unwrap(), AlphaFamily::B).unwrap();
        assert_eq!(b0, vec![1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn dense_matrix_agrees_with_the_butterfly() {
        let f = abc();
        let m = sample(&f);
        for &alpha in &[0.0, 0.3, 0.7, 1.0] {
            let alpha = Alpha::new(alpha).unwrap();
            for family in [AlphaFamily::Q, AlphaFamily::B] {
                let dense = alpha_transfer_matrix::<f64>(&f, alpha, family).unwrap();
                let n_sub = f.num_subsets();
                let expected: Vec<f64> = (0..n_sub)
                    .map(|row| {
                        (0..n_sub)
                            .map(|col| dense[row * n_sub + col] * m.values()[col])
                            .sum()
                    })
                    .collect();
                let fast = to_alpha(&m, alpha, family);
                for (a, b) in fast.values().iter().zip(&expected) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn roundtrip_and_bounds() {
        let f = abc();
        let m = sample(&f);
        for &alpha in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let alpha = Alpha::new(alpha).unwrap();
            for family in [AlphaFamily::Q, AlphaFamily::B] {
                let img = to_alpha(&m, alpha, family);
                for &v in img.values() {
                    assert!(v >= alpha.get() - 1.0 - 1e-12);
                    assert!(v <= 1.0 + 1e-12);
                }
                let back = from_alpha(&img).unwrap();
                for (a, b) in back.values().iter().zip(m.values()) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn unit_alpha_combine_reduces_to_the_two_rules() {
        let f = abc();
        let m1 = sample(&f);
        let m2 = MassFunction::simple(&f, f.subset_of(&["b"]).unwrap(), 0.75).unwrap();

        let conj = alpha_combine(&m1, &m2, Alpha::one(), CombineMode::Intersection).unwrap();
        let expected = conjunctive(&m1, &m2).unwrap();
        for (a, b) in conj.values().iter().zip(expected.values()) {
            assert!((a - b).abs() < 1e-12);
        }

        let disj = alpha_combine(&m1, &m2, Alpha::one(), CombineMode::Union).unwrap();
        let expected = disjunctive(&m1, &m2).unwrap();
        for (a, b) in disj.values().iter().zip(expected.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_parameter_is_validated() {
        assert!(Alpha::new(1.2f64).is_err());
        assert!(Alpha::new(-0.1f64).is_err());
        assert!(Alpha::new(0.0f64).is_ok());
    }
}
