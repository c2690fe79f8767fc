use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::io::{parse_f64, render_f64};

/// Entries at or below this fraction of the largest entry count as zero.
pub const SUPPORT_CUTOFF: f64 = 1e-14;

/// Tolerance on `Σ p = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

fn apply_cutoff(values: &mut [f64]) {
    let max = values.iter().cloned().fold(0.0, f64::max);
    let floor = SUPPORT_CUTOFF * max;
    for v in values.iter_mut() {
        if *v <= floor {
            *v = 0.0;
        }
    }
}

fn check_entries(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return domain("alphabet must be non-empty");
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return domain(format!("entries must be finite and nonnegative, found {bad}"));
    }
    Ok(())
}

/// A probability vector over a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl serde::Serialize for Distribution {
    /// Same shape as [`Distribution::to_json`].
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Distribution {
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        check_entries(&probs)?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(total));
        }
        apply_cutoff(&mut probs);
        Ok(Distribution { probs })
    }

    /// Normalizes nonnegative weights into a distribution.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        check_entries(weights)?;
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return domain("weights sum to zero");
        }
        Distribution::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("alphabet must be non-empty");
        }
        Ok(Distribution { probs: vec![1.0 / n as f64; n] })
    }

    pub fn point_mass(n: usize, at: usize) -> Result<Self> {
        if at >= n {
            return domain(format!("index {at} outside alphabet of size {n}"));
        }
        let mut probs = vec![0.0; n];
        probs[at] = 1.0;
        Ok(Distribution { probs })
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

    /// Indices with nonzero probability.
    pub fn support(&self) -> Vec<usize> {
        support_of(&self.probs)
    }

    pub fn to_weights(&self) -> WeightSet {
        WeightSet { weights: self.probs.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DistributionJson { alphabet: self.len(), probs: self.probs.clone() })
            .expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: DistributionJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.alphabet != raw.probs.len() {
            return Err(Error::Parse(format!(
                "alphabet {} does not match {} probabilities",
                raw.alphabet,
                raw.probs.len()
            )));
        }
        Distribution::new(raw.probs)
    }

    /// One CSV row of shortest round-trip decimals.
    pub fn to_csv_row(&self) -> String {
        self.probs.iter().map(|p| render_f64(*p)).collect::<Vec<_>>().join(",")
    }

    pub fn from_csv_row(row: &str) -> Result<Self> {
        let probs = row
            .trim()
            .split(',')
            .map(|t| parse_f64(t).ok_or_else(|| Error::Parse(format!("bad number {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Distribution::new(probs)
    }
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    alphabet: usize,
    probs: Vec<f64>,
}

pub(crate) fn support_of(values: &[f64]) -> Vec<usize> {
    values.iter().enumerate().filter(|(_, v)| **v > 0.0).map(|(i, _)| i).collect()
}

/// An unnormalized nonnegative function on a finite alphabet.
///
/// Signed differences such as `P − Q` are carried as a pair of weight sets
/// (positive and negative parts).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    weights: Vec<f64>,
}

impl WeightSet {
    pub fn new(mut weights: Vec<f64>) -> Result<Self> {
        check_entries(&weights)?;
        apply_cutoff(&mut weights);
        Ok(WeightSet { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Ω_A, the indices with nonzero weight.
    pub fn support(&self) -> Vec<usize> {
        support_of(&self.weights)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        WeightSet::new(self.weights.iter().map(|w| lambda * w).collect())
    }

    /// Elementwise `θ·self + (1−θ)·other`.
    pub fn mix(&self, other: &WeightSet, theta: f64) -> Result<Self> {
        crate::error::same_len(self.len(), other.len())?;
        WeightSet::new(
            self.weights.iter().zip(&other.weights).map(|(a, b)| theta * a + (1.0 - theta) * b).collect(),
        )
    }

    pub fn plus(&self, other: &WeightSet) -> Result<Self> {
        crate::error::same_len(self.len(), other.len())?;
        WeightSet::new(self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect())
    }

    /// Splits a signed vector into its positive and negative parts.
    pub fn split_signed(values: &[f64]) -> Result<(WeightSet, WeightSet)> {
        let pos = values.iter().map(|v| v.max(0.0)).collect();
        let neg = values.iter().map(|v| (-v).max(0.0)).collect();
        Ok((WeightSet::new(pos)?, WeightSet::new(neg)?))
    }
}

impl From<&Distribution> for WeightSet {
    fn from(p: &Distribution) -> Self {
        p.to_weights()
    }
}

/// A joint distribution `p_XY(x, y)` of two variables on the same N-point alphabet.
/// Row index is x, column index is y.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    n: usize,
    cells: Vec<f64>,
}

impl JointDistribution {
    /// `cells` is row-major, `cells[x * n + y] = p_XY(x, y)`.
    pub fn new(n: usize, mut cells: Vec<f64>) -> Result<Self> {
        if n == 0 || cells.len() != n * n {
            return domain(format!("joint table needs {n}×{n} cells, got {}", cells.len()));
        }
        check_entries(&cells)?;
        let total: f64 = cells.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(total));
        }
        apply_cutoff(&mut cells);
        Ok(JointDistribution { n, cells })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return domain("joint table must be square");
        }
        JointDistribution::new(n, rows.iter().flatten().cloned().collect())
    }

    /// Independent coupling `P ⊗ Q`.
    pub fn product(p: &Distribution, q: &Distribution) -> Result<Self> {
        crate::error::same_len(p.len(), q.len())?;
        let n = p.len();
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(p.probs()[x] * q.probs()[y]);
            }
        }
        JointDistribution::new(n, cells)
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.cells[x * self.n + y]
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.get(x, y)).sum()).collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.n).map(|y| (0..self.n).map(|x| self.get(x, y)).sum()).collect()
    }

    /// `p_{X|Y}(x|y)`; `None` when `p_Y(y) = 0`.
    pub fn conditional_column(&self, y: usize) -> Option<Vec<f64>> {
        let py: f64 = (0..self.n).map(|x| self.get(x, y)).sum();
        (py > 0.0).then(|| (0..self.n).map(|x| self.get(x, y) / py).collect())
    }

    /// `q(e|y) = Σ_{x≠y} p_{X|Y}(x|y)`; `None` when `p_Y(y) = 0`.
    pub fn error_given(&self, y: usize) -> Option<f64> {
        let py: f64 = (0..self.n).map(|x| self.get(x, y)).sum();
        let off: f64 = (0..self.n).filter(|&x| x != y).map(|x| self.get(x, y)).sum();
        (py > 0.0).then(|| (off / py).min(1.0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<f64>> = self.cells.chunks(self.n).map(|r| r.to_vec()).collect();
        serde_json::json!({ "alphabet": self.n, "joint": rows })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            alphabet: usize,
            joint: Vec<Vec<f64>>,
        }
        let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.joint.len() != raw.alphabet {
            return Err(Error::Parse(format!("alphabet {} does not match {} rows", raw.alphabet, raw.joint.len())));
        }
        JointDistribution::from_rows(&raw.joint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_normalization_and_sign() {
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![1.5, -0.5]).is_err());
        assert!(Distribution::new(vec![]).is_err());
        assert!(Distribution::new(vec![0.7, 0.3]).is_ok());
    }

    #[test]
    fn cutoff_zeroes_dust() {
        let p = Distribution::new(vec![1.0 - 1e-16, 1e-16]).unwrap();
        assert_eq!(p.support(), vec![0]);
        let w = WeightSet::new(vec![2.0, 1e-15, 0.5]).unwrap();
        assert_eq!(w.support(), vec![0, 2]);
    }

    #[test]
    fn json_and_csv_round_trip() {
        let p = Distribution::new(vec![0.1, 0.2, 0.7]).unwrap();
        assert_eq!(Distribution::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(Distribution::from_csv_row(&p.to_csv_row()).unwrap(), p);
        let bad = serde_json::json!({"alphabet": 2, "probs": [1.0]});
        assert!(matches!(Distribution::from_json(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn joint_marginals() {
        let j = JointDistribution::from_rows(&[vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let mx = j.marginal_x();
        let my = j.marginal_y();
        assert!((mx[0] - 0.3).abs() < 1e-15 && (my[1] - 0.6).abs() < 1e-15);
        let c = j.conditional_column(0).unwrap();
        assert!((c[0] - 0.25).abs() < 1e-15);
        assert!((j.error_given(0).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(JointDistribution::from_json(&j.to_json()).unwrap(), j);
    }
}
