use std::fs;
use std::path::Path;

use ditcalc::io::parse_partition;
use ditcalc::{DistanceMatrix, Partition, ProbDist};

use crate::CliError;

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_partition(path: &Path) -> Result<Partition, CliError> {
    let text = read_to_string(path)?;
    parse_partition(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A labelled distribution read from a `label,count` or `label,prob` CSV file.
pub struct LabeledDist {
    pub labels: Vec<String>,
    pub dist: ProbDist,
}

enum Column {
    Count,
    Prob,
}

pub fn parse_dist_csv(text: &str) -> Result<LabeledDist, CliError> {
    let err = |msg: String| CliError::Input(msg);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| err(format!("row 1: {e}")))?
        .clone();
    if header.len() != 2 {
        return Err(err(format!(
            "row 1: expected a two-column header `label,count` or `label,prob`, got {} columns",
            header.len()
        )));
    }
    let column = match header[1].to_ascii_lowercase().as_str() {
        "count" => Column::Count,
        "prob" => Column::Prob,
        other => {
            return Err(err(format!(
                "row 1: second column must be `count` or `prob`, got `{other}`"
            )))
        }
    };
    let mut labels = Vec::new();
    let mut counts = Vec::new();
    let mut probs = Vec::new();
    for (k, rec) in reader.records().enumerate() {
        let row = k + 2;
        let rec = rec.map_err(|e| err(format!("row {row}: {e}")))?;
        if rec.len() != 2 {
            return Err(err(format!("row {row}: expected 2 fields, got {}", rec.len())));
        }
        labels.push(rec[0].to_string());
        match column {
            Column::Count => counts.push(rec[1].parse::<u64>().map_err(|_| {
                err(format!(
                    "row {row}: count `{}` is not a nonnegative integer",
                    &rec[1]
                ))
            })?),
            Column::Prob => probs.push(
                rec[1]
                    .parse::<f64>()
                    .map_err(|_| err(format!("row {row}: probability `{}` is not a number", &rec[1])))?,
            ),
        }
    }
    if labels.is_empty() {
        return Err(err("no data rows".into()));
    }
    let dist = match column {
        Column::Count => ProbDist::from_counts(&counts),
        Column::Prob => ProbDist::from_probs(probs),
    }
    .map_err(|e| err(e.to_string()))?;
    Ok(LabeledDist { labels, dist })
}

/// One matrix row per line; entries separated by commas and/or whitespace; `#` comments.
pub fn parse_distance_matrix(text: &str) -> Result<DistanceMatrix, CliError> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| CliError::Input(format!("line {}: `{t}` is not a number", k + 1)))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    DistanceMatrix::new(rows).map_err(|e| CliError::Input(e.to_string()))
}
