//! Entropies, cross entropies and divergences of arbitrary finite probability
//! distributions, plus the parametric index family and quadratic entropy.
//!
//! Logical quantities are polynomial in the probabilities (`1 − Σ pᵢ²`, `1 − Σ pᵢqᵢ`,
//! `Σ (pᵢ − qᵢ)²`); Shannon quantities use the convention `0 · log(1/0) = 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed deviation of `Σ pᵢ` from 1 when validating a distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Logarithm base, a finite real greater than 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Base(f64);

impl Base {
    pub const TWO: Base = Base(2.0);
    pub const THREE: Base = Base(3.0);
    pub const E: Base = Base(std::f64::consts::E);
    pub const TEN: Base = Base(10.0);

    pub fn new(b: f64) -> Result<Self> {
        if b.is_finite() && b > 1.0 {
            Ok(Base(b))
        } else {
            Err(Error::BadBase(b))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn log(self, x: f64) -> f64 {
        match self.0 {
            2.0 => x.log2(),
            10.0 => x.log10(),
            b if b == std::f64::consts::E => x.ln(),
            b => x.ln() / b.ln(),
        }
    }

    pub fn pow(self, x: f64) -> f64 {
        match self.0 {
            2.0 => x.exp2(),
            b if b == std::f64::consts::E => x.exp(),
            b => b.powf(x),
        }
    }
}

impl Default for Base {
    fn default() -> Self {
        Base::TWO
    }
}

impl TryFrom<f64> for Base {
    type Error = Error;
    fn try_from(b: f64) -> Result<Self> {
        Base::new(b)
    }
}

impl From<Base> for f64 {
    fn from(b: Base) -> f64 {
        b.0
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite probability vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    /// Normalizes nonnegative counts. Fails if every count is zero.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u128 = counts.iter().map(|&c| c as u128).sum();
        if total == 0 {
            return Err(Error::AllZero);
        }
        let t = total as f64;
        Ok(ProbDist {
            probs: counts.iter().map(|&c| c as f64 / t).collect(),
        })
    }

    /// Validates a probability vector; it is never renormalized.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::NotNormalized { sum: 0.0 });
        }
        if let Some((index, &value)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::Negative { index, value });
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        Ok(ProbDist { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotNormalized { sum: 0.0 });
        }
        Ok(ProbDist {
            probs: vec![1.0 / n as f64; n],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl<'de> Deserialize<'de> for ProbDist {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            probs: Vec<f64>,
        }
        ProbDist::from_probs(Repr::deserialize(d)?.probs).map_err(serde::de::Error::custom)
    }
}

fn same_len(p: &ProbDist, q: &ProbDist) -> Result<()> {
    if p.len() == q.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        })
    }
}

/// `h(p) = 1 − Σ pᵢ²`: the probability that two independent draws differ.
pub fn logical_entropy(p: &ProbDist) -> f64 {
    1.0 - repeat_rate(p)
}

/// `ρ = Σ pᵢ²`, the probability that two independent draws coincide.
pub fn repeat_rate(p: &ProbDist) -> f64 {
    p.probs.iter().map(|x| x * x).sum()
}

/// `1/ρ`: the size of an equiprobable set with the same repeat rate.
pub fn numbers_equivalent(p: &ProbDist) -> f64 {
    1.0 / repeat_rate(p)
}

/// `H(p) = Σ pᵢ log(1/pᵢ)`.
pub fn shannon_entropy(p: &ProbDist, base: Base) -> f64 {
    p.probs
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * base.log(x))
        .sum()
}

/// `H_m(p) = Π (1/pᵢ)^pᵢ`, evaluated as `exp(Σ pᵢ ln(1/pᵢ))`.
pub fn block_count_entropy(p: &ProbDist) -> f64 {
    shannon_entropy(p, Base::E).exp()
}

/// `h(p‖q) = 1 − Σ pᵢqᵢ`.
pub fn logical_cross_entropy(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    same_len(p, q)?;
    Ok(1.0 - p.probs.iter().zip(&q.probs).map(|(a, b)| a * b).sum::<f64>())
}

fn check_support(p: &ProbDist, q: &ProbDist) -> Result<()> {
    same_len(p, q)?;
    match p
        .probs
        .iter()
        .zip(&q.probs)
        .position(|(&a, &b)| a > 0.0 && b == 0.0)
    {
        Some(index) => Err(Error::Support { index }),
        None => Ok(()),
    }
}

/// `H(p‖q) = Σ pᵢ log(1/qᵢ)`.
pub fn shannon_cross_entropy(p: &ProbDist, q: &ProbDist, base: Base) -> Result<f64> {
    check_support(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| -a * base.log(b))
        .sum())
}

/// `D(p‖q) = Σ pᵢ log(pᵢ/qᵢ)`. Errors instead of returning infinity when `q` misses part
/// of the support of `p`.
pub fn kl_divergence(p: &ProbDist, q: &ProbDist, base: Base) -> Result<f64> {
    check_support(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| a * base.log(a / b))
        .sum())
}

/// `d(p‖q) = Σ (pᵢ − qᵢ)²`.
pub fn logical_divergence(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    same_len(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .map(|(a, b)| (a - b) * (a - b))
        .sum())
}

/// `h(p‖q) − ½[h(p) + h(q)]`, which is half the logical divergence.
pub fn jensen_difference(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    Ok(logical_cross_entropy(p, q)? - 0.5 * (logical_entropy(p) + logical_entropy(q)))
}

/// Entrywise `weight·p + (1 − weight)·q`.
pub fn mix(p: &ProbDist, q: &ProbDist, weight: f64) -> Result<ProbDist> {
    same_len(p, q)?;
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::BadWeight(weight));
    }
    Ok(ProbDist {
        probs: p
            .probs
            .iter()
            .zip(&q.probs)
            .map(|(a, b)| weight * a + (1.0 - weight) * b)
            .collect(),
    })
}

/// One-parameter entropy families that contain logical entropy as a special case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `(Σ pᵢ^α − 1) / (2^(1−α) − 1)`, α > 0, α ≠ 1.
    DegreeAlpha,
    /// `2^(α−1) / (2^(α−1) − 1) · (1 − Σ pᵢ^α)`, α > 0, α ≠ 1.
    HavrdaCharvat,
    /// `(1 − Σ pᵢ^(β+1)) / β`, β ≠ 0.
    PatilTaillie,
    /// `(1 − Σ pᵢ^q) / (q − 1)`, q ≠ 1.
    Tsallis,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::DegreeAlpha,
        Family::HavrdaCharvat,
        Family::PatilTaillie,
        Family::Tsallis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::DegreeAlpha => "degree-alpha",
            Family::HavrdaCharvat => "havrda-charvat",
            Family::PatilTaillie => "patil-taillie",
            Family::Tsallis => "tsallis",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!("unknown family `{s}` (expected degree-alpha, havrda-charvat, patil-taillie or tsallis)")
            })
    }
}

// Σ pᵢ^x over the support of p.
fn power_sum(p: &ProbDist, x: f64) -> f64 {
    p.probs.iter().filter(|&&v| v > 0.0).map(|v| v.powf(x)).sum()
}

/// Evaluates the closed form of `family` at `param`. Excluded parameter values are errors;
/// no limits are taken.
pub fn parametric_entropy(p: &ProbDist, family: Family, param: f64) -> Result<f64> {
    let bad = || Err(Error::BadParam {
        family: family.name(),
        param,
    });
    if !param.is_finite() {
        return bad();
    }
    match family {
        Family::DegreeAlpha => {
            if param <= 0.0 || param == 1.0 {
                return bad();
            }
            Ok((power_sum(p, param) - 1.0) / ((1.0 - param).exp2() - 1.0))
        }
        Family::HavrdaCharvat => {
            if param <= 0.0 || param == 1.0 {
                return bad();
            }
            let c = (param - 1.0).exp2();
            Ok(c / (c - 1.0) * (1.0 - power_sum(p, param)))
        }
        Family::PatilTaillie => {
            if param == 0.0 {
                return bad();
            }
            Ok((1.0 - power_sum(p, param + 1.0)) / param)
        }
        Family::Tsallis => {
            if param == 1.0 {
                return bad();
            }
            Ok((1.0 - power_sum(p, param)) / (param - 1.0))
        }
    }
}

/// Symmetric matrix of nonnegative pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let invalid = |msg: String| Err(Error::InvalidDistanceMatrix(msg));
        if n == 0 {
            return invalid("matrix is empty".into());
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return invalid(format!("row {i} has {} entries, expected {n}", r.len()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row[i] != 0.0 {
                return invalid(format!("diagonal entry ({i},{i}) is {}", row[i]));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return invalid(format!("entry ({i},{j}) = {v} is not a nonnegative number"));
                }
                if v != rows[j][i] {
                    return invalid(format!("entries ({i},{j}) and ({j},{i}) differ"));
                }
            }
        }
        Ok(DistanceMatrix {
            n,
            d: rows.into_iter().flatten().collect(),
        })
    }

    /// `dᵢⱼ = 1` for `i ≠ j`: the logical distance.
    pub fn unit(n: usize) -> Self {
        DistanceMatrix {
            n,
            d: (0..n * n)
                .map(|k| if k / n == k % n { 0.0 } else { 1.0 })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

/// `Q = Σ_{i≠j} dᵢⱼ pᵢ pⱼ`, the expected distance between two independent draws.
pub fn quadratic_entropy(p: &ProbDist, d: &DistanceMatrix) -> Result<f64> {
    if d.dim() != p.len() {
        return Err(Error::DimensionMismatch {
            rows: d.dim(),
            cols: d.dim(),
            expected: p.len(),
        });
    }
    let n = p.len();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                q += d.get(i, j) * p.probs[i] * p.probs[j];
            }
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(v: &[f64]) -> ProbDist {
        ProbDist::from_probs(v.to_vec()).unwrap()
    }

    const TOL: f64 = 1e-12;

    #[test]
    fn construction() {
        assert_eq!(ProbDist::from_counts(&[1, 1, 1, 1]).unwrap().probs(), &[0.25; 4]);
        assert_eq!(ProbDist::from_counts(&[3, 1]).unwrap().probs(), &[0.75, 0.25]);
        assert_eq!(ProbDist::from_counts(&[0, 0]), Err(Error::AllZero));
        assert!(matches!(
            ProbDist::from_probs(vec![0.5, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            ProbDist::from_probs(vec![1.5, -0.5]),
            Err(Error::Negative { index: 1, .. })
        ));
        assert!(ProbDist::from_probs(vec![0.5, 0.5 + 5e-10]).is_ok());
    }

    #[test]
    fn logical_entropy_examples() {
        assert_eq!(logical_entropy(&pd(&[0.5, 0.5])), 0.5);
        assert_eq!(logical_entropy(&pd(&[1.0, 0.0])), 0.0);
        for p in [0.1, 0.3, 0.77] {
            assert!((logical_entropy(&pd(&[p, 1.0 - p])) - 2.0 * p * (1.0 - p)).abs() < TOL);
        }
    }

    #[test]
    fn repeat_rate_examples() {
        let u = ProbDist::uniform(5).unwrap();
        assert!((repeat_rate(&u) - 0.2).abs() < TOL);
        assert!((numbers_equivalent(&u) - 5.0).abs() < TOL);
        assert_eq!(repeat_rate(&pd(&[1.0, 0.0, 0.0])), 1.0);
        assert_eq!(repeat_rate(&pd(&[0.75, 0.25])), 0.625);
    }

    #[test]
    fn shannon_and_block_count_examples() {
        let half = pd(&[0.5, 0.5]);
        assert_eq!(shannon_entropy(&half, Base::TWO), 1.0);
        assert_eq!(shannon_entropy(&pd(&[1.0, 0.0]), Base::TWO), 0.0);
        assert!((block_count_entropy(&half) - 2.0).abs() < TOL);
        assert_eq!(block_count_entropy(&pd(&[1.0, 0.0])), 1.0);
        let p = pd(&[0.1, 0.2, 0.3, 0.4]);
        for b in [Base::TWO, Base::THREE, Base::E, Base::TEN] {
            assert!((b.pow(shannon_entropy(&p, b)) - block_count_entropy(&p)).abs() < TOL);
        }
        assert_eq!(Base::new(1.0), Err(Error::BadBase(1.0)));
        assert!(Base::new(f64::NAN).is_err());
    }

    #[test]
    fn cross_entropy_examples() {
        let p = pd(&[0.2, 0.3, 0.5]);
        let q = pd(&[0.6, 0.1, 0.3]);
        assert!((logical_cross_entropy(&p, &p).unwrap() - logical_entropy(&p)).abs() < TOL);
        let u = ProbDist::uniform(3).unwrap();
        assert!((logical_cross_entropy(&u, &q).unwrap() - (1.0 - 1.0 / 3.0)).abs() < TOL);
        assert_eq!(
            logical_cross_entropy(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0])).unwrap(),
            1.0
        );
        assert_eq!(
            logical_cross_entropy(&p, &pd(&[0.5, 0.5])),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn kl_examples() {
        let p = pd(&[0.5, 0.5]);
        let q = pd(&[0.25, 0.75]);
        assert_eq!(kl_divergence(&p, &p, Base::TWO).unwrap(), 0.0);
        // ½·log₂2 + ½·log₂(2/3), hand-evaluated to 17 digits
        let expected = 0.5 + 0.5 * (2.0f64 / 3.0).log2();
        assert!((expected - 0.207_518_749_639_421_9).abs() < 1e-15);
        assert!((kl_divergence(&p, &q, Base::TWO).unwrap() - 0.207_518_749_639_421_9).abs() < TOL);
        let d = kl_divergence(&p, &q, Base::E).unwrap();
        let via_cross =
            shannon_cross_entropy(&p, &q, Base::E).unwrap() - shannon_entropy(&p, Base::E);
        assert!((d - via_cross).abs() < TOL);
        assert_eq!(
            kl_divergence(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0]), Base::TWO),
            Err(Error::Support { index: 0 })
        );
        // zeros of p outside q's support are fine
        assert!(kl_divergence(&pd(&[0.0, 1.0]), &pd(&[0.5, 0.5]), Base::TWO).is_ok());
    }

    #[test]
    fn logical_divergence_examples() {
        let p = pd(&[0.2, 0.3, 0.5]);
        assert_eq!(logical_divergence(&p, &p).unwrap(), 0.0);
        assert_eq!(
            logical_divergence(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0])).unwrap(),
            2.0
        );
        let u = ProbDist::uniform(3).unwrap();
        let expected = (1.0 - 1.0 / 3.0) - logical_entropy(&p);
        assert!((logical_divergence(&u, &p).unwrap() - expected).abs() < TOL);
    }

    #[test]
    fn jensen_and_mix() {
        let p = pd(&[0.2, 0.3, 0.5]);
        let q = pd(&[0.6, 0.1, 0.3]);
        assert!(jensen_difference(&p, &p).unwrap().abs() < TOL);
        assert!(
            (jensen_difference(&p, &q).unwrap() - logical_divergence(&p, &q).unwrap() / 2.0).abs()
                < TOL
        );
        let m = mix(&p, &q, 0.5).unwrap();
        let rhs = logical_cross_entropy(&p, &q).unwrap() / 2.0
            + (logical_entropy(&p) + logical_entropy(&q)) / 4.0;
        assert!((logical_entropy(&m) - rhs).abs() < TOL);
        assert_eq!(mix(&p, &q, 1.0).unwrap(), p);
        assert_eq!(mix(&p, &q, 1.5), Err(Error::BadWeight(1.5)));
    }

    #[test]
    fn parametric_examples() {
        let p = pd(&[0.1, 0.2, 0.3, 0.4]);
        let h = logical_entropy(&p);
        let at = |f, x| parametric_entropy(&p, f, x).unwrap();
        assert!((at(Family::Tsallis, 2.0) - h).abs() < TOL);
        assert!((at(Family::PatilTaillie, 1.0) - h).abs() < TOL);
        assert!((at(Family::DegreeAlpha, 2.0) - 2.0 * h).abs() < TOL);
        // printed Havrda-Charvát coefficient at α = 2 is 2/(2−1) = 2
        assert!((at(Family::HavrdaCharvat, 2.0) - 2.0 * h).abs() < TOL);
        for (f, x) in [
            (Family::DegreeAlpha, 1.0),
            (Family::DegreeAlpha, 0.0),
            (Family::HavrdaCharvat, 1.0),
            (Family::PatilTaillie, 0.0),
            (Family::Tsallis, 1.0),
        ] {
            assert!(matches!(
                parametric_entropy(&p, f, x),
                Err(Error::BadParam { .. })
            ));
        }
        assert_eq!("patil-taillie".parse::<Family>(), Ok(Family::PatilTaillie));
        assert!("renyi".parse::<Family>().is_err());
    }

    #[test]
    fn quadratic_examples() {
        let p = pd(&[0.1, 0.2, 0.3, 0.4]);
        assert!(
            (quadratic_entropy(&p, &DistanceMatrix::unit(4)).unwrap() - logical_entropy(&p)).abs()
                < TOL
        );
        let zero = DistanceMatrix::new(vec![vec![0.0; 4]; 4]).unwrap();
        assert_eq!(quadratic_entropy(&p, &zero).unwrap(), 0.0);
        let d = DistanceMatrix::new(vec![vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
        assert_eq!(quadratic_entropy(&pd(&[0.5, 0.5]), &d).unwrap(), 1.5);
        assert!(matches!(
            quadratic_entropy(&pd(&[0.5, 0.5]), &zero),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(DistanceMatrix::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![1.0, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.0, 1.0]]).is_err());
    }
}
