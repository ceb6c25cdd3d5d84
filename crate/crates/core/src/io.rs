//! Partition file formats.
//!
//! Text: one block per line, whitespace-separated element labels. Blank lines are
//! ignored and lines starting with `#` are comments. The universe is the set of labels
//! in order of first appearance.
//!
//! JSON: `{"universe": ["a", "b", ...], "blocks": [["a", "b"], ["c"]]}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::partition::{Partition, Universe};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: label `{label}` already appeared on line {first_line}")]
    DuplicateLabel {
        label: String,
        line: usize,
        first_line: usize,
    },
    #[error("no blocks found")]
    NoBlocks,
    #[error("block {block}: label `{label}` is not in the universe")]
    UnknownLabel { label: String, block: usize },
    #[error("block {block}: label `{label}` appears in more than one block")]
    RepeatedLabel { label: String, block: usize },
    #[error("label `{0}` is in the universe but in no block")]
    Uncovered(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    universe: Vec<String>,
    blocks: Vec<Vec<String>>,
}

/// Parses either format; input whose first non-blank character is `{` is read as JSON.
pub fn parse_partition(input: &str) -> Result<Partition, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_partition_json(input)
    } else {
        parse_partition_text(input)
    }
}

pub fn parse_partition_text(input: &str) -> Result<Partition, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (k, raw) in input.lines().enumerate() {
        let line = k + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut block = Vec::new();
        for tok in text.split_whitespace() {
            if let Some(&first_line) = seen.get(tok) {
                return Err(ParseError::DuplicateLabel {
                    label: tok.to_string(),
                    line,
                    first_line,
                });
            }
            seen.insert(tok.to_string(), line);
            block.push(labels.len());
            labels.push(tok.to_string());
        }
        blocks.push(block);
    }
    if blocks.is_empty() {
        return Err(ParseError::NoBlocks);
    }
    let u = Universe::labeled(labels)?;
    Ok(Partition::from_blocks(&u, blocks)?)
}

pub fn parse_partition_json(input: &str) -> Result<Partition, ParseError> {
    let raw: PartitionJson =
        serde_json::from_str(input).map_err(|e| ParseError::Json(e.to_string()))?;
    let u = Universe::labeled(raw.universe)?;
    if raw.blocks.is_empty() {
        return Err(ParseError::NoBlocks);
    }
    let mut used = vec![false; u.size()];
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for (bi, names) in raw.blocks.iter().enumerate() {
        let mut block = Vec::with_capacity(names.len());
        for name in names {
            let i = u.index_of(name).ok_or_else(|| ParseError::UnknownLabel {
                label: name.clone(),
                block: bi,
            })?;
            if used[i] {
                return Err(ParseError::RepeatedLabel {
                    label: name.clone(),
                    block: bi,
                });
            }
            used[i] = true;
            block.push(i);
        }
        blocks.push(block);
    }
    if let Some(i) = used.iter().position(|&x| !x) {
        return Err(ParseError::Uncovered(u.label(i).into_owned()));
    }
    Ok(Partition::from_blocks(&u, blocks)?)
}

/// Renders the text format. Feeding the result back to [`parse_partition_text`] yields the
/// same labelled partition.
pub fn to_text(pi: &Partition) -> String {
    let u = pi.universe();
    let mut out = String::new();
    for b in pi.blocks() {
        let line: Vec<_> = b.iter().map(|&e| u.label(e)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(pi: &Partition) -> serde_json::Value {
    let u = pi.universe();
    serde_json::to_value(PartitionJson {
        universe: (0..u.size()).map(|i| u.label(i).into_owned()).collect(),
        blocks: pi
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&e| u.label(e).into_owned()).collect())
            .collect(),
    })
    .expect("string lists serialize")
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_json(self).serialize(s)
    }
}
