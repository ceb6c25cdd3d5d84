//! Finite universes, partitions in canonical form, the refinement order and the
//! partition lattice.
//!
//! Elements are the dense indices `0..n`; labels are only for display and file I/O.
//! A [`Partition`] is always canonical: blocks ordered by their least element and each
//! block sorted ascending. Two partitions are equal iff they have the same universe and
//! the same blocks.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::distributions::ProbDist;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::union_find::DisjointSets;

/// Largest universe [`enumerate_partitions`] accepts; Bell(12) = 4,213,597.
pub const MAX_ENUMERATION_SIZE: usize = 12;

#[derive(Debug, PartialEq, Eq, Hash)]
struct UniverseInner {
    size: usize,
    labels: Option<Vec<String>>,
}

/// A finite set of `size` elements, indexed `0..size`, optionally carrying display labels.
///
/// Cloning is cheap; clones compare equal and are treated as the same universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Universe(Arc<UniverseInner>);

impl Universe {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        Ok(Universe(Arc::new(UniverseInner { size, labels: None })))
    }

    /// A universe whose elements are the given labels, in order.
    pub fn labeled<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Universe(Arc::new(UniverseInner {
            size: labels.len(),
            labels: Some(labels),
        })))
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    /// Display label of element `i`; the decimal index when the universe is unlabeled.
    pub fn label(&self, i: usize) -> Cow<'_, str> {
        match &self.0.labels {
            Some(l) => Cow::Borrowed(&l[i]),
            None => Cow::Owned(i.to_string()),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.0.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse().ok().filter(|&i| i < self.0.size),
        }
    }

    fn same(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.labels {
            Some(l) => write!(f, "Universe({:?})", l),
            None => write!(f, "Universe({})", self.0.size),
        }
    }
}

pub(crate) fn check_same(a: &Universe, b: &Universe) -> Result<()> {
    if a.same(b) {
        Ok(())
    } else {
        Err(Error::UniverseMismatch)
    }
}

/// A set of disjoint nonempty blocks covering a [`Universe`], kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    universe: Universe,
    blocks: Vec<Vec<usize>>,
    // element -> index of its block
    block_of: Vec<usize>,
}

impl Partition {
    /// The one-block partition: bottom of the refinement order, no distinctions.
    pub fn blob(u: &Universe) -> Self {
        let n = u.size();
        Partition {
            universe: u.clone(),
            blocks: vec![(0..n).collect()],
            block_of: vec![0; n],
        }
    }

    /// The all-singletons partition: top of the refinement order.
    pub fn discrete(u: &Universe) -> Self {
        let n = u.size();
        Partition {
            universe: u.clone(),
            blocks: (0..n).map(|i| vec![i]).collect(),
            block_of: (0..n).collect(),
        }
    }

    /// Validates raw blocks and returns them in canonical form.
    pub fn from_blocks(u: &Universe, raw_blocks: Vec<Vec<usize>>) -> Result<Self> {
        if raw_blocks.is_empty() {
            return Err(Error::NoBlocks);
        }
        let n = u.size();
        let mut owner = vec![usize::MAX; n];
        for (bi, block) in raw_blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock { index: bi });
            }
            for &e in block {
                if e >= n {
                    return Err(Error::OutOfRange {
                        element: e,
                        size: n,
                    });
                }
                if owner[e] != usize::MAX {
                    return Err(Error::Overlap { element: e });
                }
                owner[e] = bi;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Cover { element: missing });
        }
        Ok(Self::from_labels_unchecked(u, &owner))
    }

    /// Builds the partition in which `i` and `j` share a block iff `labels[i] == labels[j]`.
    pub fn from_block_labels<T: Eq + std::hash::Hash>(u: &Universe, labels: &[T]) -> Result<Self> {
        if labels.len() != u.size() {
            return Err(Error::LabelCount {
                size: u.size(),
                labels: labels.len(),
            });
        }
        Ok(Self::from_labels_unchecked(u, labels))
    }

    fn from_labels_unchecked<T: Eq + std::hash::Hash>(u: &Universe, labels: &[T]) -> Self {
        // Numbering blocks by first appearance is exactly the canonical order.
        let mut ids: HashMap<&T, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let next = blocks.len();
            let id = *ids.entry(l).or_insert(next);
            if id == next {
                blocks.push(Vec::new());
            }
            blocks[id].push(i);
            block_of.push(id);
        }
        Partition {
            universe: u.clone(),
            blocks,
            block_of,
        }
    }

    /// Re-derives the canonical form; always equal to `self`.
    pub fn canonicalized(&self) -> Self {
        Self::from_blocks(&self.universe, self.blocks.clone()).expect("partition invariants hold")
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.size()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index (in canonical order) of the block holding element `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn block_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(Vec::len)
    }

    pub fn is_blob(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.size()
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    /// Number of ordered pairs distinguished by the partition: n² − Σ|B|².
    pub fn dit_count(&self) -> u128 {
        let n = self.size() as u128;
        n * n - self.block_sizes().map(|s| (s as u128) * (s as u128)).sum::<u128>()
    }

    /// True iff every block of `self` lies inside a block of `coarser`, i.e. `coarser ⪯ self`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        check_same(&self.universe, &coarser.universe)?;
        Ok(self.blocks.iter().all(|b| {
            let target = coarser.block_of[b[0]];
            b.iter().all(|&e| coarser.block_of[e] == target)
        }))
    }

    /// Least upper bound in the refinement order: the nonempty intersections `B ∩ C`.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        check_same(&self.universe, &other.universe)?;
        let keys: Vec<(usize, usize)> = (0..self.size())
            .map(|i| (self.block_of[i], other.block_of[i]))
            .collect();
        Ok(Self::from_labels_unchecked(&self.universe, &keys))
    }

    /// Greatest lower bound: connected components of the union of the two indit relations.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        check_same(&self.universe, &other.universe)?;
        let mut ds = DisjointSets::new(self.size());
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                ds.union(w[0], w[1]);
            }
        }
        Ok(Self::from_labels_unchecked(&self.universe, &ds.labels()))
    }

    /// `p_B = |B| / |U|` for each block in canonical order, as exact rationals.
    pub fn block_probabilities_exact(&self) -> Vec<Rational> {
        let n = self.size() as i128;
        self.block_sizes()
            .map(|s| Rational::new(s as i128, n))
            .collect()
    }

    /// `p_B = |B| / |U|` for each block in canonical order.
    pub fn block_probabilities(&self) -> ProbDist {
        let counts: Vec<u64> = self.block_sizes().map(|s| s as u64).collect();
        ProbDist::from_counts(&counts).expect("block sizes are positive")
    }

    /// Moves this partition onto another universe with the same label set.
    pub fn relabel_onto(&self, target: &Universe) -> Result<Partition> {
        if target.size() != self.size() {
            return Err(Error::UniverseMismatch);
        }
        let mut labels = vec![0usize; self.size()];
        for i in 0..self.size() {
            let j = target
                .index_of(&self.universe.label(i))
                .ok_or(Error::UniverseMismatch)?;
            labels[j] = self.block_of[i];
        }
        Self::from_block_labels(target, &labels)
    }
}

/// Free-function form of the refinement test: `σ ⪯ π` iff `pi` refines `sigma`.
pub fn is_refinement(sigma: &Partition, pi: &Partition) -> Result<bool> {
    pi.refines(sigma)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (bi, b) in self.blocks.iter().enumerate() {
            if bi > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (k, &e) in b.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.universe.label(e))?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{}", self)
    }
}

/// Bell number B(n), the number of partitions of an n-element set (Bell triangle).
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for k in 0..row.len() {
            let v = next[k] + row[k];
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Every partition of `u` exactly once, in lexicographic order of restricted-growth strings.
pub fn enumerate_partitions(u: &Universe) -> Result<Partitions> {
    if u.size() > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge {
            size: u.size(),
            max: MAX_ENUMERATION_SIZE,
        });
    }
    Ok(Partitions {
        universe: u.clone(),
        rgs: vec![0; u.size()],
        prefix_max: vec![0; u.size()],
        done: false,
    })
}

/// Iterator returned by [`enumerate_partitions`].
pub struct Partitions {
    universe: Universe,
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition::from_labels_unchecked(&self.universe, &self.rgs);
        // Advance: bump the rightmost position that may grow, zero everything after it.
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(out)
    }
}
