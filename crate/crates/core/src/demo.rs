//! Counting distinctions with digit partitions.
//!
//! A universe of `rⁿ` elements is labelled by its `n`-digit base-`r` strings. The `k`-th
//! digit partition groups elements by their `k`-th digit. Joining the digit partitions one
//! at a time, step `k` adds `(r − 1)·r^(2n−k)` ordered dits, and the full join is the
//! discrete partition with `rⁿ(rⁿ − 1)` dits. With `r = 2` this is the binary-code
//! example; with `r = 3` it is the coin-weighing example (each weighing has three outcomes).

use serde::Serialize;

use crate::distributions::Base;
use crate::entropy;
use crate::error::{Error, Result};
use crate::pairs::dit_set;
use crate::partition::{Partition, Universe};
use crate::rational::Rational;

/// Universes up to this size count dits on the dense pair matrix; larger ones from block sizes.
pub const DENSE_COUNT_LIMIT: usize = 4096;

pub const MAX_BINARY_DIGITS: u32 = 16;
pub const MAX_TERNARY_DIGITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoStep {
    pub step: u32,
    pub new_dits: u128,
    pub expected_new_dits: u128,
    pub total_dits: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoTrace {
    pub radix: u32,
    pub digits: u32,
    pub universe_size: usize,
    /// `"dense"` or `"blocks"`
    pub counting: &'static str,
    pub steps: Vec<DemoStep>,
    pub total_dits: u128,
    pub expected_total_dits: u128,
    pub logical_entropy: Rational,
    /// Shannon entropy of the join in base `radix`
    pub shannon_entropy: f64,
    pub block_count_entropy: f64,
}

impl DemoTrace {
    pub fn is_consistent(&self) -> bool {
        let n = self.universe_size as i128;
        self.steps.iter().all(|s| s.new_dits == s.expected_new_dits)
            && self.total_dits == self.expected_total_dits
            && self.logical_entropy == Rational::ONE - Rational::new(1, n)
    }
}

/// The universe of `radix^digits` digit strings and its `digits` digit partitions,
/// most significant digit first.
pub fn digit_partitions(radix: u32, digits: u32) -> Result<(Universe, Vec<Partition>)> {
    if radix < 2 {
        return Err(Error::TooSmall {
            size: radix as usize,
            min: 2,
        });
    }
    if digits < 1 {
        return Err(Error::TooSmall { size: 0, min: 1 });
    }
    let size = (radix as usize)
        .checked_pow(digits)
        .filter(|&s| s <= 1 << 24)
        .ok_or(Error::TooLarge {
            size: usize::MAX,
            max: 1 << 24,
        })?;
    let digit = |i: usize, k: u32| (i / (radix as usize).pow(digits - 1 - k)) % radix as usize;
    let labels: Vec<String> = (0..size)
        .map(|i| {
            (0..digits)
                .map(|k| char::from_digit(digit(i, k) as u32, radix).unwrap())
                .collect()
        })
        .collect();
    let u = Universe::labeled(labels)?;
    let parts = (0..digits)
        .map(|k| {
            let keys: Vec<usize> = (0..size).map(|i| digit(i, k)).collect();
            Partition::from_block_labels(&u, &keys)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((u, parts))
}

fn run(radix: u32, digits: u32, max_digits: u32) -> Result<DemoTrace> {
    if digits < 1 {
        return Err(Error::TooSmall { size: 0, min: 1 });
    }
    if digits > max_digits {
        return Err(Error::TooLarge {
            size: digits as usize,
            max: max_digits as usize,
        });
    }
    let (u, parts) = digit_partitions(radix, digits)?;
    let dense = u.size() <= DENSE_COUNT_LIMIT;
    let count = |p: &Partition| {
        if dense {
            dit_set(p).len() as u128
        } else {
            p.dit_count()
        }
    };
    let r = radix as u128;
    let mut join = Partition::blob(&u);
    let mut total = count(&join);
    let mut steps = Vec::with_capacity(parts.len());
    for (k, p) in (1..=digits).zip(&parts) {
        join = join.join(p)?;
        let now = count(&join);
        steps.push(DemoStep {
            step: k,
            new_dits: now - total,
            expected_new_dits: (r - 1) * r.pow(2 * digits - k),
            total_dits: now,
        });
        total = now;
    }
    let size = u.size() as u128;
    Ok(DemoTrace {
        radix,
        digits,
        universe_size: u.size(),
        counting: if dense { "dense" } else { "blocks" },
        steps,
        total_dits: total,
        expected_total_dits: size * (size - 1),
        logical_entropy: entropy::logical_entropy(&join),
        shannon_entropy: entropy::shannon_entropy(&join, Base::new(radix as f64)?),
        block_count_entropy: entropy::block_count_entropy(&join),
    })
}

/// Joins the `n` binary-digit partitions of a `2ⁿ` universe, `1 ≤ n ≤ 16`.
pub fn binary_demo(n: u32) -> Result<DemoTrace> {
    run(2, n, MAX_BINARY_DIGITS)
}

/// Joins the `n` ternary-digit partitions of a `3ⁿ` universe (`3ⁿ` coins), `1 ≤ n ≤ 10`.
pub fn coin_demo(n: u32) -> Result<DemoTrace> {
    run(3, n, MAX_TERNARY_DIGITS)
}
