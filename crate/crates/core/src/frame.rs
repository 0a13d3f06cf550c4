//! Real frames and basis monomials.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported real dimension (all monomials fit in a `u32` mask).
pub const MAX_DIM: usize = 16;

/// An ordered list of covector labels `e⁰, …, e^{dim−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Vec<String>,
}

pub type FrameRef = Arc<Frame>;

impl Frame {
    pub fn new(labels: Vec<String>) -> Result<FrameRef> {
        let dim = labels.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionUnsupported { dim });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateName(l.clone()));
            }
        }
        Ok(Arc::new(Frame { labels }))
    }

    /// Frame labelled `e0, e1, …`.
    pub fn numbered(dim: usize) -> Result<FrameRef> {
        Self::new((0..dim).map(|i| format!("e{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// All blades of degree `k`, in lexicographic order of index tuples.
    pub fn blades(&self, k: usize) -> Vec<Blade> {
        Blade::all(self.dim(), k)
    }
}

/// Same frame (pointer-equal or label-equal).
pub fn same_frame(a: &FrameRef, b: &FrameRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_frames(a: &FrameRef, b: &FrameRef) -> Result<()> {
    if same_frame(a, b) {
        Ok(())
    } else {
        Err(Error::FrameMismatch)
    }
}

/// A basis monomial `e^{i₁}∧⋯∧e^{i_k}` (or `e_{i₁}∧⋯`) stored as a bit mask
/// of its index set.
///
/// Blades of equal degree sort lexicographically by their increasing index
/// tuples; lower degrees sort first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    /// From a strictly increasing index tuple.
    pub fn from_indices(idx: &[usize], dim: usize) -> Result<Blade> {
        let mut mask = 0u32;
        for (pos, &i) in idx.iter().enumerate() {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if pos > 0 && idx[pos - 1] >= i {
                return Err(Error::NotIncreasing);
            }
            mask |= 1 << i;
        }
        Ok(Blade(mask))
    }

    /// From arbitrary (possibly unsorted) indices: returns the blade and the
    /// sign of the sorting permutation, or `None` on a repeated index.
    pub fn from_unsorted(idx: &[usize]) -> Option<(Blade, i8)> {
        let mut acc = Blade::EMPTY;
        let mut sign = 1i8;
        for &i in idx {
            let s = acc.wedge_sign(Blade::single(i))?;
            sign *= s;
            acc = Blade(acc.0 | 1 << i);
        }
        Some((acc, sign))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Number of indices strictly below `i`.
    pub fn count_below(self, i: usize) -> u32 {
        (self.0 & ((1u32 << i) - 1)).count_ones()
    }

    /// Number of indices strictly between `i` and `j` (in either order).
    pub fn count_between(self, i: usize, j: usize) -> u32 {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let mask = ((1u64 << hi) - (1u64 << (lo + 1))) as u32;
        (self.0 & mask).count_ones()
    }

    /// Sign with `self ∧ other = sign · (self ∪ other)`, `None` if they share an
    /// index.
    pub fn wedge_sign(self, other: Blade) -> Option<i8> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (self.0 >> j).count_ones();
            rest &= rest - 1;
        }
        Some(if swaps & 1 == 0 { 1 } else { -1 })
    }

    /// All blades of degree `k` in `dim` indices, sorted.
    pub fn all(dim: usize, k: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        if k > dim {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Blade(idx.iter().fold(0, |m, &i| m | 1 << i)));
            // next combination in lexicographic order
            let mut p = k;
            while p > 0 && idx[p - 1] == dim - k + p - 1 {
                p -= 1;
            }
            if p == 0 {
                return out;
            }
            p -= 1;
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }

    /// Complementary blade in `dim` indices; `self ∧ complement = sign · top`.
    pub fn complement(self, dim: usize) -> (Blade, i8) {
        let full = if dim == 32 { u32::MAX } else { (1u32 << dim) - 1 };
        let c = Blade(full & !self.0);
        (c, self.wedge_sign(c).unwrap_or(1))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.reverse_bits().cmp(&self.0.reverse_bits()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.indices()).finish()
    }
}

/// Increasing indices of a blade.
#[derive(Clone)]
pub struct Indices(u32);

impl Iterator for Indices {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// `n choose k`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lexicographic_order() {
        let b = Blade::all(4, 2);
        let tuples: Vec<Vec<usize>> = b.iter().map(|x| x.to_vec()).collect();
        assert_eq!(
            tuples,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut sorted = b.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, b);
    }

    #[test]
    fn counts_match_binomials() {
        for dim in 1..=8 {
            for k in 0..=dim + 1 {
                assert_eq!(Blade::all(dim, k).len(), binomial(dim, k));
            }
        }
    }

    #[test]
    fn wedge_signs() {
        let e1 = Blade::single(1);
        let e2 = Blade::single(2);
        assert_eq!(e1.wedge_sign(e2), Some(1));
        assert_eq!(e2.wedge_sign(e1), Some(-1));
        assert_eq!(e1.wedge_sign(e1), None);
        assert_eq!(Blade::from_unsorted(&[3, 0, 1]), Some((Blade(0b1011), 1)));
        assert_eq!(Blade::from_unsorted(&[1, 0]), Some((Blade(0b11), -1)));
    }

    #[test]
    fn rejects_bad_tuples() {
        assert_eq!(Blade::from_indices(&[1, 1], 4), Err(Error::NotIncreasing));
        assert_eq!(Blade::from_indices(&[2, 1], 4), Err(Error::NotIncreasing));
        assert!(matches!(Blade::from_indices(&[4], 4), Err(Error::IndexOutOfRange { .. })));
        assert!(Frame::new(vec!["a".into(), "a".into()]).is_err());
        assert!(Frame::numbered(0).is_err());
        assert!(Frame::numbered(17).is_err());
    }

    #[test]
    fn between_counts() {
        let b = Blade::from_indices(&[0, 2, 3, 5], 8).unwrap();
        assert_eq!(b.count_between(0, 5), 2);
        assert_eq!(b.count_between(5, 1), 2);
        assert_eq!(b.count_below(3), 2);
    }
}
