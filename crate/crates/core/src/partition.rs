//! Equivalence relations on `{0..n-1}` in canonical block form.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::Element;
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// A partition stored as `block_of[e]`, with blocks numbered by first
/// occurrence: `block_of[0] = 0` and each new block gets the next index.
/// Block `i` is therefore also the block with the `i`-th smallest minimum.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
}

impl Partition {
    /// Normalizes arbitrary labels into canonical form.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        Ok(Self::normalize(labels))
    }

    pub(crate) fn normalize(labels: &[usize]) -> Self {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let block_of = labels
            .iter()
            .map(|&l| match map.iter().find(|(k, _)| *k == l) {
                Some(&(_, b)) => b,
                None => {
                    map.push((l, map.len()));
                    map.len() - 1
                }
            })
            .collect();
        Partition { block_of }
    }

    /// Builds a partition from disjoint blocks covering `0..n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<Element>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} is out of range for a universe of size {n}"
                    )));
                }
                if label[e] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {e} occurs twice")));
                }
                label[e] = b;
            }
        }
        if let Some(missing) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {missing} is missing")));
        }
        Ok(Self::normalize(&label))
    }

    pub fn omega(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        Ok(Partition {
            block_of: (0..n).collect(),
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        Ok(Partition {
            block_of: vec![0; n],
        })
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn class_index(&self, e: Element) -> usize {
        self.block_of[e]
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_omega(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() == 1
    }

    pub fn related(&self, a: Element, b: Element) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Blocks in index order (ascending least element).
    pub fn blocks(&self) -> Vec<ElementSet> {
        let mut out = vec![ElementSet::EMPTY; self.block_count()];
        for (e, &b) in self.block_of.iter().enumerate() {
            out[b].insert(e);
        }
        out
    }

    /// The class `[e]`.
    pub fn class_of(&self, e: Element) -> ElementSet {
        let b = self.block_of[e];
        self.block_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == b)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn non_singleton_blocks(&self) -> Vec<ElementSet> {
        self.blocks().into_iter().filter(|b| b.len() > 1).collect()
    }

    /// Every block has the same cardinality.
    pub fn is_uniform(&self) -> bool {
        let blocks = self.blocks();
        blocks.windows(2).all(|w| w[0].len() == w[1].len())
    }

    fn check_size(&self, other: &Partition) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(())
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        // every block of self maps into a single block of other
        let mut image = vec![usize::MAX; self.block_count()];
        self.block_of
            .iter()
            .zip(&other.block_of)
            .all(|(&b, &c)| match image[b] {
                usize::MAX => {
                    image[b] = c;
                    true
                }
                seen => seen == c,
            })
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_size(other)?;
        let m = other.block_count();
        let labels: Vec<usize> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| a * m + b)
            .collect();
        Ok(Self::normalize(&labels))
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_size(other)?;
        let mut uf = UnionFind::new(self.size());
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.block_count()];
            for (e, &b) in p.block_of.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = e;
                } else {
                    uf.union(first[b], e);
                }
            }
        }
        Ok(Self::normalize(&uf.labels()))
    }

    /// `B^2 ∪ self`: merges all of `set` into one block and keeps the other
    /// classes. With `self = ω` this is the Rees extension of `set`.
    pub fn merge_set(&self, set: ElementSet) -> Partition {
        let mut labels = self.block_of.clone();
        if let Some(first) = set.min() {
            let target = labels[first];
            let merged: Vec<usize> = set.iter().map(|e| self.block_of[e]).collect();
            for l in labels.iter_mut() {
                if merged.contains(l) {
                    *l = target;
                }
            }
        }
        Self::normalize(&labels)
    }

    /// The relation as bit rows: bit `b` of row `a` is set iff `a ~ b`.
    pub fn relation_rows(&self) -> Vec<u64> {
        let blocks = self.blocks();
        self.block_of.iter().map(|&b| blocks[b].bits()).collect()
    }
}

/// Canonical order: more blocks first, then lexicographic on `block_of`.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .block_count()
            .cmp(&self.block_count())
            .then_with(|| self.block_of.cmp(&other.block_of))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical string: blocks by least element separated by `|`, elements
/// ascending separated by spaces, e.g. `0|1 2 3`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Relational product `r ∘ s` on bit rows: `a (r∘s) c` iff `a r b` and
/// `b s c` for some `b`.
pub(crate) fn compose(r: &[u64], s: &[u64]) -> Vec<u64> {
    r.iter()
        .map(|&row| {
            ElementSet::from_bits(row)
                .iter()
                .fold(0u64, |acc, b| acc | s[b])
        })
        .collect()
}

pub fn omega(n: usize) -> Result<Partition> {
    Partition::omega(n)
}

pub fn full(n: usize) -> Result<Partition> {
    Partition::full(n)
}
