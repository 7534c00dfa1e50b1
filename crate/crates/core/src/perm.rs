//! Permutations in one-line form and block-reversal adjacency.
//!
//! Permutations act on the right and compose left to right: `x(ab) = (xa)b`.
//! The one-line form `(x_1 ... x_n)` lists `x_k = k a`, and the order `<_a`
//! on `{1..n}` is the order in which elements appear in that list.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection on `{1..n}` stored in one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
    // positions[x - 1] is the 0-based index of x in `images`
    positions: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line form (1-based images).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut positions = vec![usize::MAX; n];
        for (k, &x) in images.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {x} out of range 1..={n}"
                )));
            }
            if positions[x - 1] != usize::MAX {
                return Err(Error::InvalidPermutation(format!("value {x} repeated")));
            }
            positions[x - 1] = k;
        }
        Ok(Permutation { images, positions })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
            positions: (0..n).collect(),
        }
    }

    /// The reversal `(n ... 2 1)`.
    pub fn reversal(n: usize) -> Self {
        Permutation::from_images_unchecked((1..=n).rev().collect())
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        let mut positions = vec![0; images.len()];
        for (k, &x) in images.iter().enumerate() {
            positions[x - 1] = k;
        }
        Permutation { images, positions }
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    /// 0-based position of `x` in the one-line form, i.e. `x a^{-1} - 1`.
    pub fn position(&self, x: usize) -> usize {
        self.positions[x - 1]
    }

    fn check_order(&self, other: &Permutation) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.order() {
            return Err(Error::ElementOutOfRange {
                element: x,
                n: self.order(),
            });
        }
        Ok(())
    }

    /// Left-to-right product: the result maps `x` to `(x self) other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_order(other)?;
        Ok(Permutation::from_images_unchecked(
            self.images.iter().map(|&x| other.apply(x)).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        Permutation::from_images_unchecked(self.positions.iter().map(|&p| p + 1).collect())
    }

    /// `x <_self y`: `x` appears before `y` in the one-line form.
    pub fn less_in(&self, x: usize, y: usize) -> Result<bool> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.position(x) < self.position(y))
    }

    /// Number of unordered pairs appearing in opposite order in `self` and `other`.
    pub fn inversion_distance(&self, other: &Permutation) -> Result<usize> {
        self.check_order(other)?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Permutation) -> usize {
        // Relabel `other` in the coordinates of `self` and count inversions.
        let seq: Vec<usize> = self.images.iter().map(|&x| other.position(x)).collect();
        let mut count = 0;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `self` lies between `a` and `b`: `d(a,self) + d(self,b) = d(a,b)`.
    pub fn is_between(&self, a: &Permutation, b: &Permutation) -> Result<bool> {
        self.check_order(a)?;
        self.check_order(b)?;
        Ok(a.distance_unchecked(self) + self.distance_unchecked(b) == a.distance_unchecked(b))
    }

    /// The ordered partition `p` with `self * other^{-1} = tau_p`, if any.
    pub fn adjacency_partition(&self, other: &Permutation) -> Result<Option<OrderedPartition>> {
        self.check_order(other)?;
        let quotient = self.compose(&other.inverse())?;
        Ok(OrderedPartition::from_block_reversal(&quotient).filter(|p| p.is_nontrivial()))
    }
}

/// `g` lies between `a` and `b`, computed through the distance.
pub fn is_between(a: &Permutation, g: &Permutation, b: &Permutation) -> Result<bool> {
    g.is_between(a, b)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order() <= 9 {
            for x in &self.images {
                write!(f, "{x}")?;
            }
        } else {
            for (k, x) in self.images.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `213` (digits, n <= 9), `2,1,3`, or `(2 1 3)`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::InvalidPermutation(s.to_string());
        let images: Vec<usize> = if trimmed.contains(',') || trimmed.contains(' ') {
            trimmed
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            trimmed
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }
}

/// A partition of `{1..n}` into consecutive intervals listed in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    n: usize,
    // inclusive 1-based intervals
    blocks: Vec<(usize, usize)>,
}

impl OrderedPartition {
    /// Builds a partition from its block sizes, in order.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidPartition(format!("bad block sizes {sizes:?}")));
        }
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut start = 1;
        for &s in sizes {
            blocks.push((start, start + s - 1));
            start += s;
        }
        Ok(OrderedPartition {
            n: start - 1,
            blocks,
        })
    }

    /// Builds a partition from explicit blocks; they must be consecutive
    /// intervals covering `{1..n}` in increasing order.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let mut next = 1;
        let mut out = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut sorted = block.clone();
            sorted.sort_unstable();
            let ok = !sorted.is_empty()
                && sorted[0] == next
                && sorted.windows(2).all(|w| w[1] == w[0] + 1);
            if !ok {
                return Err(Error::InvalidPartition(format!(
                    "block {block:?} is not the interval starting at {next}"
                )));
            }
            let last = *sorted.last().unwrap();
            out.push((next, last));
            next = last + 1;
        }
        if out.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        Ok(OrderedPartition {
            n: next - 1,
            blocks: out,
        })
    }

    /// Blocks are read off the one-line form as maximal descending runs of
    /// consecutive integers; `None` if `t` is not a block reversal.
    fn from_block_reversal(t: &Permutation) -> Option<Self> {
        let images = t.images();
        let n = images.len();
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < n {
            let top = images[i];
            // block occupies 1-based positions i+1 ..= top
            if top < i + 1 {
                return None;
            }
            for (offset, &v) in images[i..top].iter().enumerate() {
                if v != top - offset {
                    return None;
                }
            }
            blocks.push((i + 1, top));
            i = top;
        }
        Some(OrderedPartition { n, blocks })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Inclusive `(first, last)` bounds of each block.
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn is_nontrivial(&self) -> bool {
        self.blocks.iter().any(|&(lo, hi)| hi > lo)
    }

    /// Index of the block containing position `k` (1-based).
    pub fn block_of(&self, k: usize) -> usize {
        self.blocks
            .iter()
            .position(|&(lo, hi)| lo <= k && k <= hi)
            .expect("position inside partition")
    }

    /// `sum |X_i| (|X_i| - 1) / 2`, the inversion distance of an edge labelled by this partition.
    pub fn weight(&self) -> usize {
        self.blocks
            .iter()
            .map(|&(lo, hi)| {
                let s = hi - lo + 1;
                s * (s - 1) / 2
            })
            .sum()
    }

    /// The permutation reversing every block.
    pub fn tau(&self) -> Result<Permutation> {
        if !self.is_nontrivial() {
            return Err(Error::TrivialPartition);
        }
        let mut images = Vec::with_capacity(self.n);
        for &(lo, hi) in &self.blocks {
            images.extend((lo..=hi).rev());
        }
        Ok(Permutation::from_images_unchecked(images))
    }
}

/// `tau_p`, the permutation reversing each block of `p`.
pub fn tau_of(p: &OrderedPartition) -> Result<Permutation> {
    p.tau()
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &(lo, hi)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for x in lo..=hi {
                if x > lo {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedPartition{self}")
    }
}

/// All `2^{n-1} - 1` nontrivial ordered partitions of `{1..n}`.
pub fn enumerate_nontrivial_partitions(n: usize) -> Result<Vec<OrderedPartition>> {
    if !(2..=usize::BITS as usize).contains(&n) {
        return Err(Error::OrderOutOfRange { n, min: 2, max: 64 });
    }
    let gaps = n - 1;
    let all_cuts: u64 = if gaps == 64 { u64::MAX } else { (1u64 << gaps) - 1 };
    let mut out = Vec::with_capacity(all_cuts as usize);
    // bit g set = cut between g+1 and g+2
    for cuts in 0..all_cuts {
        let mut blocks = Vec::new();
        let mut start = 1;
        for g in 0..gaps {
            if cuts >> g & 1 == 1 {
                blocks.push((start, g + 1));
                start = g + 2;
            }
        }
        blocks.push((start, n));
        out.push(OrderedPartition { n, blocks });
    }
    Ok(out)
}

/// All permutations of `{1..n}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation::from_images_unchecked(current.clone())];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(Permutation::from_images_unchecked(current.clone()));
    }
    out
}
