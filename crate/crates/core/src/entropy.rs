//! Logical, Shannon and block-count entropies of partitions, their per-block versions,
//! mutual information and independence.
//!
//! Logical quantities are exact [`Rational`]s computed from dit counts. Shannon and
//! block-count entropies are floats. Per block, with `p = |B|/|U|`:
//!
//! | measure      | block value    | partition value          |
//! |--------------|----------------|--------------------------|
//! | logical      | `1 − p`        | `Σ p (1 − p)`            |
//! | Shannon      | `log(1/p)`     | `Σ p log(1/p)`           |
//! | block-count  | `1/p`          | `Π (1/p)^p`              |
//!
//! and the block values are tied together by `h(B) = 1 − 1/H_m(B) = 1 − b^(−H_b(B))`.

use serde::Serialize;

use crate::distributions::{self, Base};
use crate::error::{Error, Result};
use crate::pairs;
use crate::partition::{check_same, Partition};
use crate::rational::Rational;

fn pairs_over(pi: &Partition, count: u128) -> Rational {
    let n = pi.size() as i128;
    Rational::new(count as i128, n * n)
}

/// `h(π) = |dit(π)| / |U|²`.
pub fn logical_entropy(pi: &Partition) -> Rational {
    pairs_over(pi, pi.dit_count())
}

/// `1 − Σ p_B²` in exact arithmetic; always equal to [`logical_entropy`].
pub fn logical_entropy_from_blocks(pi: &Partition) -> Rational {
    Rational::ONE
        - pi.block_probabilities_exact()
            .into_iter()
            .map(|p| p * p)
            .sum()
}

/// `H(π) = Σ p_B log(1/p_B)`.
pub fn shannon_entropy(pi: &Partition, base: Base) -> f64 {
    distributions::shannon_entropy(&pi.block_probabilities(), base)
}

/// `H_m(π) = Π (1/p_B)^{p_B}`, the geometric-mean number of blocks.
pub fn block_count_entropy(pi: &Partition) -> f64 {
    distributions::block_count_entropy(&pi.block_probabilities())
}

/// A block logical entropy `h = 1 − p`, held through its complement `p` so that values
/// close to 1 keep full precision.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct BlockLogical {
    complement: f64,
}

impl BlockLogical {
    /// From the value `h`, `0 ≤ h < 1`.
    pub fn new(h: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&h) {
            return Err(Error::Domain {
                what: "block logical entropy",
                value: h,
            });
        }
        Ok(BlockLogical { complement: 1.0 - h })
    }

    /// From the complement `1 − h`, which must lie in `(0, 1]`.
    pub fn from_complement(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain {
                what: "complement of block logical entropy",
                value: p,
            });
        }
        Ok(BlockLogical { complement: p })
    }

    pub fn value(self) -> f64 {
        1.0 - self.complement
    }

    pub fn complement(self) -> f64 {
        self.complement
    }
}

/// Block logical entropy from block Shannon entropy: `h = 1 − base^(−x)`, `x ≥ 0`.
pub fn logical_from_shannon(x: f64, base: Base) -> Result<BlockLogical> {
    if x.is_nan() || x < 0.0 || x.is_infinite() {
        return Err(Error::Domain {
            what: "block Shannon entropy",
            value: x,
        });
    }
    BlockLogical::from_complement(base.pow(-x))
}

/// Block Shannon entropy from block logical entropy: `log_base(1/(1 − h))`.
pub fn shannon_from_logical(h: BlockLogical, base: Base) -> f64 {
    -base.log(h.complement)
}

/// `m(π, σ) = |dit(π) ∩ dit(σ)| / |U|²`, counted on the dense pair sets.
pub fn logical_mutual_info(pi: &Partition, sigma: &Partition) -> Result<Rational> {
    let mutual = pairs::mutual_information_set(pi, sigma)?;
    Ok(pairs_over(pi, mutual.len() as u128))
}

/// `|B ∩ C|` for every block `B` of `pi` (rows) and `C` of `sigma` (columns).
pub fn intersection_counts(pi: &Partition, sigma: &Partition) -> Result<Vec<Vec<usize>>> {
    check_same(pi.universe(), sigma.universe())?;
    let mut t = vec![vec![0usize; sigma.num_blocks()]; pi.num_blocks()];
    for i in 0..pi.size() {
        t[pi.block_of(i)][sigma.block_of(i)] += 1;
    }
    Ok(t)
}

/// `I(π; σ) = Σ p_{B∩C} log(p_{B∩C} / (p_B p_C))` over nonempty intersections.
pub fn shannon_mutual_info(pi: &Partition, sigma: &Partition, base: Base) -> Result<f64> {
    let t = intersection_counts(pi, sigma)?;
    let n = pi.size() as f64;
    let mut total = 0.0;
    for (b, row) in t.iter().enumerate() {
        for (c, &k) in row.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let p_bc = k as f64 / n;
            let p_b = pi.blocks()[b].len() as f64 / n;
            let p_c = sigma.blocks()[c].len() as f64 / n;
            total += p_bc * base.log(p_bc / (p_b * p_c));
        }
    }
    Ok(total)
}

/// Exact test of `p_{B∩C} = p_B p_C` for every pair of blocks, by `|B∩C|·n = |B|·|C|`.
pub fn are_independent(pi: &Partition, sigma: &Partition) -> Result<bool> {
    let t = intersection_counts(pi, sigma)?;
    let n = pi.size();
    Ok(pi.blocks().iter().zip(&t).all(|(b, row)| {
        sigma
            .blocks()
            .iter()
            .zip(row)
            .all(|(c, &k)| k * n == b.len() * c.len())
    }))
}

/// Entropies of a single block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockEntropy {
    pub block: usize,
    pub probability: Rational,
    /// `1 − p_B`
    pub logical: Rational,
    /// `log(1/p_B)`
    pub shannon: f64,
    /// `1/p_B`, the numbers-equivalent
    pub block_count: f64,
}

/// All three entropies of a partition together with the per-block table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub logical: Rational,
    pub shannon: f64,
    pub base: Base,
    pub block_count: f64,
    pub blocks: Vec<BlockEntropy>,
}

pub fn entropy_report(pi: &Partition, base: Base) -> EntropyReport {
    let blocks = pi
        .block_probabilities_exact()
        .into_iter()
        .enumerate()
        .map(|(block, probability)| {
            let p = probability.to_f64();
            BlockEntropy {
                block,
                probability,
                logical: Rational::ONE - probability,
                shannon: -base.log(p),
                block_count: probability.recip().to_f64(),
            }
        })
        .collect();
    EntropyReport {
        logical: logical_entropy(pi),
        shannon: shannon_entropy(pi, base),
        base,
        block_count: block_count_entropy(pi),
        blocks,
    }
}
