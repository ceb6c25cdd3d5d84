//! Subsets of `U × U` and the closure space they form.
//!
//! A [`PairSet`] is a dense `n × n` bit matrix (row = first coordinate). The closure
//! operator adds the diagonal and closes under symmetry and transitivity, so the closed
//! sets are the equivalence relations (indit sets) and the open sets, their complements,
//! are exactly the dit sets of partitions. Note the closure is not topological: the union
//! of two closed sets need not be closed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{check_same, Partition, Universe};
use crate::union_find::DisjointSets;

/// A set of ordered pairs `(i, j)` with `i, j < size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    size: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl PairSet {
    pub fn empty(size: usize) -> Self {
        let words_per_row = size.div_ceil(64);
        PairSet {
            size,
            words_per_row,
            bits: vec![0; words_per_row * size],
        }
    }

    pub fn full(size: usize) -> Self {
        Self::empty(size).complement()
    }

    /// The diagonal `{(i, i)}`.
    pub fn diagonal(size: usize) -> Self {
        let mut s = Self::empty(size);
        for i in 0..size {
            s.set(i, i);
        }
        s
    }

    /// Builds a set from explicit pairs; out-of-range coordinates are rejected.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(size: usize, pairs: I) -> Result<Self> {
        let mut s = Self::empty(size);
        for (i, j) in pairs {
            let bad = if i >= size { i } else { j };
            if i >= size || j >= size {
                return Err(Error::OutOfRange { element: bad, size });
            }
            s.set(i, j);
        }
        Ok(s)
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut s = Self::empty(size);
        for i in 0..size {
            for j in 0..size {
                if f(i, j) {
                    s.set(i, j);
                }
            }
        }
        s
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1u64 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.size && j < self.size && self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    /// Number of pairs in the set.
    pub fn len(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |i| {
            (0..self.size)
                .filter(move |&j| self.contains(i, j))
                .map(move |j| (i, j))
        })
    }

    fn tail_mask(&self) -> u64 {
        match self.size % 64 {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        let mask = self.tail_mask();
        let w = self.words_per_row;
        for (k, word) in out.bits.iter_mut().enumerate() {
            *word = !*word;
            if k % w == w - 1 {
                *word &= mask;
            }
        }
        out
    }

    fn zip(&self, other: &PairSet, f: impl Fn(u64, u64) -> u64) -> Result<PairSet> {
        self.check_size(other)?;
        Ok(PairSet {
            size: self.size,
            words_per_row: self.words_per_row,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn check_size(&self, other: &PairSet) -> Result<()> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn union(&self, other: &PairSet) -> Result<PairSet> {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PairSet) -> Result<PairSet> {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PairSet) -> Result<PairSet> {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &PairSet) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|i| self.contains(i, i))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.size).all(|i| !self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        // (i,j),(j,k) in s  =>  row(j) ⊆ row(i)
        self.pairs().all(|(i, j)| {
            self.row(j)
                .iter()
                .zip(self.row(i))
                .all(|(&rj, &ri)| rj & !ri == 0)
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }
}

impl std::fmt::Debug for PairSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PairSet({}; ", self.size)?;
        f.debug_set().entries(self.pairs()).finish()?;
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct PairSetRepr {
    size: usize,
    pairs: Vec<[usize; 2]>,
}

impl Serialize for PairSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairSetRepr {
            size: self.size,
            pairs: self.pairs().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PairSetRepr::deserialize(d)?;
        PairSet::from_pairs(r.size, r.pairs.into_iter().map(|[i, j]| (i, j)))
            .map_err(serde::de::Error::custom)
    }
}

/// Equivalence classes of the reflexive-symmetric-transitive closure of `s`.
fn closure_classes(s: &PairSet) -> Vec<usize> {
    let mut ds = DisjointSets::new(s.size);
    for (i, j) in s.pairs() {
        ds.union(i, j);
    }
    ds.labels()
}

/// Smallest equivalence relation containing `s`.
pub fn closure(s: &PairSet) -> PairSet {
    let classes = closure_classes(s);
    equivalence_from_classes(&classes)
}

fn equivalence_from_classes(classes: &[usize]) -> PairSet {
    let n = classes.len();
    let k = classes.iter().copied().max().map_or(0, |m| m + 1);
    let mut masks = vec![vec![0u64; n.div_ceil(64)]; k];
    for (i, &c) in classes.iter().enumerate() {
        masks[c][i / 64] |= 1u64 << (i % 64);
    }
    let mut out = PairSet::empty(n);
    for (i, &c) in classes.iter().enumerate() {
        out.row_mut(i).copy_from_slice(&masks[c]);
    }
    out
}

/// Closure by Warshall's algorithm on the reflexive-symmetric hull; an independent route to
/// [`closure`] kept for cross-checking.
pub fn closure_warshall(s: &PairSet) -> PairSet {
    let n = s.size;
    let mut r = s.clone();
    for i in 0..n {
        r.set(i, i);
    }
    for (i, j) in s.pairs() {
        r.set(j, i);
    }
    for k in 0..n {
        let row_k = r.row(k).to_vec();
        for i in 0..n {
            if r.contains(i, k) {
                for (a, b) in r.row_mut(i).iter_mut().zip(&row_k) {
                    *a |= b;
                }
            }
        }
    }
    r
}

/// Interior: the complement of the closure of the complement. The largest open subset of `s`.
pub fn interior(s: &PairSet) -> PairSet {
    closure(&s.complement()).complement()
}

pub fn is_closed(s: &PairSet) -> bool {
    *s == closure(s)
}

pub fn is_open(s: &PairSet) -> bool {
    is_closed(&s.complement())
}

/// Ordered pairs lying in different blocks.
pub fn dit_set(pi: &Partition) -> PairSet {
    indit_set(pi).complement()
}

/// Ordered pairs lying in the same block: the equivalence relation of `pi`.
pub fn indit_set(pi: &Partition) -> PairSet {
    let classes: Vec<usize> = (0..pi.size()).map(|i| pi.block_of(i)).collect();
    equivalence_from_classes(&classes)
}

/// The unique partition whose dit set is `s`.
pub fn partition_from_open_set(u: &Universe, s: &PairSet) -> Result<Partition> {
    if s.size != u.size() {
        return Err(Error::UniverseMismatch);
    }
    if !is_open(s) {
        return Err(Error::NotOpen);
    }
    let complement = s.complement();
    Partition::from_block_labels(u, &closure_classes(&complement))
}

/// `Mut(π, σ) = dit(π) ∩ dit(σ)`.
pub fn mutual_information_set(pi: &Partition, sigma: &Partition) -> Result<PairSet> {
    check_same(pi.universe(), sigma.universe())?;
    dit_set(pi).intersection(&dit_set(sigma))
}

/// `Mut(π, σ)` assembled block by block as the union over `B ∈ π`, `C ∈ σ` of
/// `(B − B∩C) × (C − B∩C)`. Must agree with [`mutual_information_set`].
pub fn mutual_information_set_structural(pi: &Partition, sigma: &Partition) -> Result<PairSet> {
    check_same(pi.universe(), sigma.universe())?;
    let n = pi.size();
    let mut out = PairSet::empty(n);
    for b in pi.blocks() {
        for c in sigma.blocks() {
            let in_c = |e: &usize| sigma.block_of(*e) == sigma.block_of(c[0]);
            let in_b = |e: &usize| pi.block_of(*e) == pi.block_of(b[0]);
            let b_only: Vec<usize> = b.iter().copied().filter(|e| !in_c(e)).collect();
            let c_only: Vec<usize> = c.iter().copied().filter(|e| !in_b(e)).collect();
            for &i in &b_only {
                for &j in &c_only {
                    out.set(i, j);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize) -> Universe {
        Universe::new(n).unwrap()
    }

    fn part(u: &Universe, blocks: &[&[usize]]) -> Partition {
        Partition::from_blocks(u, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn ps(n: usize, pairs: &[(usize, usize)]) -> PairSet {
        PairSet::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn dit_and_indit_examples() {
        let u4 = u(4);
        assert!(dit_set(&Partition::blob(&u4)).is_empty());
        let d = dit_set(&Partition::discrete(&u4));
        assert_eq!(d.len(), 12);
        assert!(d.is_irreflexive());
        let rows = part(&u4, &[&[0, 1], &[2, 3]]);
        let dr = dit_set(&rows);
        assert_eq!(dr.len(), 8);
        assert!(dr.pairs().all(|(i, j)| (i < 2) != (j < 2)));
        assert_eq!(indit_set(&Partition::blob(&u4)).len(), 16);
        assert_eq!(indit_set(&Partition::discrete(&u4)), PairSet::diagonal(4));
        assert_eq!(indit_set(&rows).len(), 8);
        assert_eq!(indit_set(&rows), dr.complement());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&PairSet::empty(3)), PairSet::diagonal(3));
        assert_eq!(
            closure(&ps(3, &[(0, 1)])),
            ps(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)])
        );
        assert_eq!(closure(&ps(3, &[(0, 1), (1, 2)])), PairSet::full(3));
    }

    #[test]
    fn interior_examples() {
        assert_eq!(
            interior(&PairSet::full(3)),
            dit_set(&Partition::discrete(&u(3)))
        );
        let u4 = u(4);
        let rows = part(&u4, &[&[0, 1], &[2, 3]]);
        let cols = part(&u4, &[&[0, 2], &[1, 3]]);
        assert_eq!(interior(&dit_set(&rows)), dit_set(&rows));
        let m = mutual_information_set(&rows, &cols).unwrap();
        assert!(interior(&m).is_empty());
    }

    #[test]
    fn closed_and_open() {
        let s = ps(3, &[(0, 1)]);
        assert!(!is_closed(&s));
        assert!(!is_open(&s));
        let q = part(&u(3), &[&[0, 2], &[1]]);
        assert!(is_closed(&indit_set(&q)));
        assert!(is_open(&dit_set(&q)));
    }

    #[test]
    fn closure_is_not_topological() {
        // two equivalence relations on 3 points with 2-element blocks; union is not transitive
        let u3 = u(3);
        let e1 = indit_set(&part(&u3, &[&[0, 1], &[2]]));
        let e2 = indit_set(&part(&u3, &[&[0], &[1, 2]]));
        assert!(is_closed(&e1) && is_closed(&e2));
        assert!(!is_closed(&e1.union(&e2).unwrap()));
    }

    #[test]
    fn open_set_round_trip_examples() {
        let u4 = u(4);
        assert_eq!(
            partition_from_open_set(&u4, &PairSet::empty(4)).unwrap(),
            Partition::blob(&u4)
        );
        assert_eq!(
            partition_from_open_set(&u4, &PairSet::diagonal(4).complement()).unwrap(),
            Partition::discrete(&u4)
        );
        let rows = part(&u4, &[&[0, 1], &[2, 3]]);
        assert_eq!(partition_from_open_set(&u4, &dit_set(&rows)).unwrap(), rows);
        assert_eq!(
            partition_from_open_set(&u4, &ps(4, &[(0, 1)])),
            Err(Error::NotOpen)
        );
    }

    #[test]
    fn mutual_information_set_examples() {
        let u4 = u(4);
        let rows = part(&u4, &[&[0, 1], &[2, 3]]);
        let cols = part(&u4, &[&[0, 2], &[1, 3]]);
        let expected = ps(4, &[(0, 3), (3, 0), (1, 2), (2, 1)]);
        assert_eq!(mutual_information_set(&rows, &cols).unwrap(), expected);
        assert_eq!(
            mutual_information_set_structural(&rows, &cols).unwrap(),
            expected
        );
        assert_eq!(
            mutual_information_set(&rows, &Partition::discrete(&u4)).unwrap(),
            dit_set(&rows)
        );
        assert!(mutual_information_set(&rows, &Partition::blob(&u4))
            .unwrap()
            .is_empty());
        assert_eq!(
            mutual_information_set_structural(&rows, &rows).unwrap(),
            dit_set(&rows)
        );
        assert_eq!(
            mutual_information_set(&rows, &Partition::blob(&u(3))),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert_eq!(
            PairSet::empty(3).union(&PairSet::empty(4)),
            Err(Error::UniverseMismatch)
        );
        assert!(PairSet::from_pairs(3, [(0, 3)]).is_err());
    }

    #[test]
    fn complement_masks_row_tails() {
        for n in [1, 63, 64, 65, 130] {
            let full = PairSet::full(n);
            assert_eq!(full.len(), (n * n) as u64);
            assert!(full.complement().is_empty());
        }
    }

    #[test]
    fn json_dump() {
        let s = ps(2, &[(1, 0), (0, 1)]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"size":2,"pairs":[[0,1],[1,0]]}"#);
        assert_eq!(serde_json::from_str::<PairSet>(&j).unwrap(), s);
    }
}
