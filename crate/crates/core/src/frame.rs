//! Frames of discernment and bitmask subset encoding.
//!
//! A frame is an ordered finite universe of `n` labeled elements. Subsets are
//! encoded as bitmasks: element `i` (0-based, in label order) is bit `i`, so
//! the empty set is mask `0` and the full frame is mask `2^n - 1`. Storage
//! always uses this convention; only the human-readable binary rendering puts
//! the first element leftmost.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Default cap on frame size; every dense vector has `2^n` entries.
pub const DEFAULT_FRAME_CAP: usize = 20;
/// Cap on frame size for anything that materializes an `N x N` matrix.
pub const MATRIX_FRAME_CAP: usize = 12;
/// Cap on frame size for the quadratic combination oracle.
pub const ORACLE_FRAME_CAP: usize = 12;

/// A subset of a frame, encoded as a bitmask over the frame's elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Cardinality of the subset.
    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Position of this subset in a dense length-`2^n` vector.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Subset {
        Subset(index as u32)
    }

    /// True when `other` is a subset of `self`.
    pub fn contains(self, other: Subset) -> bool {
        other.0 & self.0 == other.0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#b})", self.0)
    }
}

struct FrameInner {
    labels: Vec<String>,
    // Lazy per-frame caches; both are pure functions of the label count.
    jaccard: OnceLock<Arc<Vec<f64>>>,
    bel_diameter: OnceLock<u64>,
}

/// An ordered finite universe; fixes the bitmask convention for subsets.
///
/// Cloning is cheap (shared pointer) and frames are immutable, so they can be
/// shared freely between threads.
#[derive(Clone)]
pub struct Frame {
    inner: Arc<FrameInner>,
}

impl Frame {
    /// Builds a frame from distinct, nonempty labels, capped at [`DEFAULT_FRAME_CAP`].
    pub fn new<I, S>(labels: I) -> Result<Frame>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(labels, DEFAULT_FRAME_CAP)
    }

    /// Same as [`Frame::new`] with an explicit element cap.
    pub fn with_cap<I, S>(labels: I, cap: usize) -> Result<Frame>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > cap {
            return Err(Error::FrameTooLarge {
                n: labels.len(),
                cap,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel(i));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame {
            inner: Arc::new(FrameInner {
                labels,
                jaccard: OnceLock::new(),
                bel_diameter: OnceLock::new(),
            }),
        })
    }

    /// Frame with single-letter labels `a`, `b`, `c`, ... (used by generators).
    pub fn letters(n: usize) -> Result<Frame> {
        if n > 26 {
            return Err(Error::FrameTooLarge { n, cap: 26 });
        }
        Self::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
    }

    /// Number of elements `n`.
    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // frames have at least one element by construction
    }

    /// Number of subsets `N = 2^n`.
    pub fn num_subsets(&self) -> usize {
        1usize << self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    /// The full set (all bits set).
    pub fn full(&self) -> Subset {
        Subset((self.num_subsets() - 1) as u32)
    }

    pub fn complement(&self, s: Subset) -> Subset {
        s ^ self.full()
    }

    /// All subsets in index order, from the empty set to the full set.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.num_subsets() as u32).map(Subset)
    }

    pub fn singleton(&self, element: usize) -> Subset {
        debug_assert!(element < self.len());
        Subset(1 << element)
    }

    pub fn label_position(&self, label: &str) -> Option<usize> {
        self.inner.labels.iter().position(|l| l == label)
    }

    /// Builds the subset containing exactly the given labels.
    pub fn subset_of<S: AsRef<str>>(&self, members: &[S]) -> Result<Subset> {
        let mut mask = 0u32;
        for member in members {
            let member = member.as_ref();
            match self.label_position(member) {
                Some(i) => mask |= 1 << i,
                None => return Err(Error::UnknownLabel(member.to_string())),
            }
        }
        Ok(Subset(mask))
    }

    /// Labels of the subset's elements, in frame order.
    pub fn subset_labels(&self, s: Subset) -> Vec<&str> {
        (0..self.len())
            .filter(|&i| s.0 >> i & 1 == 1)
            .map(|i| self.inner.labels[i].as_str())
            .collect()
    }

    /// Binary-string rendering with the first element leftmost.
    pub fn subset_bits(&self, s: Subset) -> String {
        (0..self.len())
            .map(|i| if s.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Checks that `s` is a valid subset of this frame.
    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if s.index() < self.num_subsets() {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                index: s.index(),
                len: self.len(),
            })
        }
    }

    /// Dense row-major Jaccard similarity matrix between subsets:
    /// `D(A,B) = |A∩B| / |A∪B|`, with `D(∅,∅) = 1`. Built once per frame.
    pub(crate) fn jaccard_matrix(&self) -> Arc<Vec<f64>> {
        Arc::clone(self.inner.jaccard.get_or_init(|| {
            let n_sub = self.num_subsets();
            let mut d = vec![0.0f64; n_sub * n_sub];
            for a in 0..n_sub {
                for b in 0..n_sub {
                    let inter = (a & b).count_ones();
                    let union = (a | b).count_ones();
                    d[a * n_sub + b] = if union == 0 {
                        1.0
                    } else {
                        f64::from(inter) / f64::from(union)
                    };
                }
            }
            Arc::new(d)
        }))
    }

    /// Max over categorical pairs of the number of subsets on which the two
    /// belief functions differ. Since categorical beliefs are 0/1-valued this
    /// single count yields the `L_k` diameter for every finite `k`.
    pub(crate) fn bel_diameter_count(&self) -> u64 {
        *self.inner.bel_diameter.get_or_init(|| {
            let n = self.len() as u32;
            // bel_A is the indicator of `C ⊇ A` for nonempty A, and zero for A = ∅.
            // The count only depends on (|A|, |B|, |A∪B|), so scan cardinality
            // classes instead of all pairs.
            let mut best: u64 = 0;
            for b in 1..=n {
                best = best.max(1u64 << (n - b)); // A = ∅ against |B| = b
            }
            for a in 1..=n {
                for b in a..=n {
                    let lo = b; // |A∪B| ranges over [max(a,b), min(n, a+b)]
                    let hi = n.min(a + b);
                    for u in lo..=hi {
                        // u ≥ max(a,b) keeps this nonnegative
                        let count = (1u64 << (n - a)) + (1u64 << (n - b)) - (1u64 << (n - u + 1));
                        best = best.max(count);
                    }
                }
            }
            best
        })
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({})", self.inner.labels.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_frames_and_rejects_bad_labels() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.num_subsets(), 8);

        let f = Frame::new(["x"]).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.num_subsets(), 2);

        assert!(matches!(
            Frame::new(["a", "a"]),
            Err(Error::DuplicateLabel(l)) if l == "a"
        ));
        assert!(matches!(
            Frame::new(Vec::<String>::new()),
            Err(Error::EmptyFrame)
        ));
        assert!(matches!(Frame::new(["a", ""]), Err(Error::EmptyLabel(1))));
        assert!(matches!(
            Frame::with_cap(["a", "b", "c"], 2),
            Err(Error::FrameTooLarge { n: 3, cap: 2 })
        ));
    }

    #[test]
    fn subset_of_follows_the_bit_convention() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        assert_eq!(f.subset_of(&["a", "b"]).unwrap(), Subset(0b011));
        assert_eq!(f.subset_of(&[] as &[&str]).unwrap(), Subset::EMPTY);
        assert_eq!(f.subset_of(&["a", "b", "c"]).unwrap(), Subset(7));
        assert!(matches!(
            f.subset_of(&["d"]),
            Err(Error::UnknownLabel(l)) if l == "d"
        ));
    }

    #[test]
    fn display_puts_first_element_leftmost() {
        // mask with elements 3 and 4 of a 4-element frame set
        let f = Frame::new(["e1", "e2", "e3", "e4"]).unwrap();
        let s = f.subset_of(&["e3", "e4"]).unwrap();
        assert_eq!(s, Subset(0b1100));
        assert_eq!(f.subset_bits(s), "0011");
        assert_eq!(f.subset_labels(s), vec!["e3", "e4"]);
    }

    #[test]
    fn complement_and_cardinality() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        let s = Subset(0b011);
        assert_eq!(f.complement(s), Subset(0b100));
        assert_eq!(s.card(), 2);
        assert_eq!(f.complement(f.full()), Subset::EMPTY);
    }

    #[test]
    fn subset_algebra_cardinalities() {
        // |A∩B| + |A∪B| = |A| + |B|, exhaustively for n ≤ 4
        for n in 1..=4u32 {
            let n_sub = 1u32 << n;
            for a in 0..n_sub {
                for b in 0..n_sub {
                    let (a, b) = (Subset(a), Subset(b));
                    assert_eq!((a & b).card() + (a | b).card(), a.card() + b.card());
                }
            }
        }
    }

    #[test]
    fn bel_diameter_matches_direct_pair_scan() {
        for n in 1..=4usize {
            let frame = Frame::letters(n).unwrap();
            let n_sub = frame.num_subsets();
            // direct: build each categorical belief vector and count differing entries
            let bel = |a: usize| -> Vec<u8> {
                (0..n_sub)
                    .map(|c| u8::from(a != 0 && (a & c) == a))
                    .collect()
            };
            let mut best = 0u64;
            for a in 0..n_sub {
                for b in 0..n_sub {
                    let (va, vb) = (bel(a), bel(b));
                    let count = va.iter().zip(&vb).filter(|(x, y)| x != y).count() as u64;
                    best = best.max(count);
                }
            }
            assert_eq!(frame.bel_diameter_count(), best, "n={n}");
        }
    }
}
