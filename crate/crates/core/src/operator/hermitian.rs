use std::ops::Deref;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spectral::SpectralDecomposition;
use super::{MAX_DIM, OPERATOR_SUPPORT_CUTOFF};
use crate::classical::Distribution;
use crate::error::{domain, Error, Result};

/// Allowed asymmetry `max |X − X*|`, relative to `max(1, max |X|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Allowed negative eigenvalues, relative to the largest eigenvalue magnitude.
pub const POSITIVITY_TOL: f64 = 1e-12;
/// Allowed deviation of a density operator's trace from one.
pub const TRACE_TOL: f64 = 1e-12;

/// A d×d Hermitian matrix. Its spectral decomposition is computed once, on
/// first use, and cached.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    m: DMatrix<Complex64>,
    spectral: OnceLock<SpectralDecomposition>,
}

impl PartialEq for HermitianOperator {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl HermitianOperator {
    /// Validates conjugate symmetry and then symmetrizes away the residual.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        let d = m.nrows();
        if d == 0 || m.ncols() != d {
            return domain(format!("operator must be square and non-empty, got {}×{}", m.nrows(), m.ncols()));
        }
        if d > MAX_DIM {
            return Err(Error::DimensionCap(d));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return domain("operator entries must be finite");
        }
        let adj = m.adjoint();
        let asym = max_abs(&(&m - &adj));
        if asym > HERMITIAN_TOL * max_abs(&m).max(1.0) {
            return Err(Error::NotHermitian(asym));
        }
        let sym = (&m + &adj).scale(0.5);
        Ok(Self::from_trusted(sym))
    }

    pub(crate) fn from_trusted(m: DMatrix<Complex64>) -> Self {
        HermitianOperator { m, spectral: OnceLock::new() }
    }

    pub(crate) fn from_spectral(spectral: SpectralDecomposition) -> Self {
        let m = spectral.reconstruct();
        let out = HermitianOperator { m, spectral: OnceLock::new() };
        let _ = out.spectral.set(spectral);
        out
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return domain("operator rows must form a square matrix");
        }
        Self::new(DMatrix::from_fn(d, d, |i, j| Complex64::new(rows[i][j], 0.0)))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let d = values.len();
        Self::new(DMatrix::from_fn(d, d, |i, j| if i == j { Complex64::new(values[i], 0.0) } else { Complex64::new(0.0, 0.0) }))
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; d])
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.diagonal().iter().map(|z| z.re).sum()
    }

    /// Cached eigendecomposition, eigenvalues descending.
    pub fn spectral(&self) -> &SpectralDecomposition {
        self.spectral.get_or_init(|| SpectralDecomposition::of_matrix(&self.m))
    }

    pub fn minus(&self, other: &HermitianOperator) -> Result<HermitianOperator> {
        crate::error::same_len(self.dim(), other.dim())?;
        Ok(Self::from_trusted(&self.m - &other.m))
    }

    pub fn plus(&self, other: &HermitianOperator) -> Result<HermitianOperator> {
        crate::error::same_len(self.dim(), other.dim())?;
        Ok(Self::from_trusted(&self.m + &other.m))
    }

    pub fn scaled(&self, lambda: f64) -> HermitianOperator {
        Self::from_trusted(self.m.scale(lambda))
    }

    /// `U X U*` for a unitary `U`.
    pub fn conjugated(&self, u: &DMatrix<Complex64>) -> Result<HermitianOperator> {
        crate::error::same_len(self.dim(), u.nrows())?;
        let out = u * &self.m * u.adjoint();
        Ok(Self::from_trusted((&out + out.adjoint()).scale(0.5)))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.norm()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim();
        let re: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| self.m[(i, j)].re).collect()).collect();
        let im: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| self.m[(i, j)].im).collect()).collect();
        serde_json::to_value(OperatorJson { dim: d, re, im: Some(im) }).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: OperatorJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let d = raw.dim;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if !shape_ok(&raw.re) || !raw.im.as_ref().is_none_or(shape_ok) {
            return Err(Error::Parse(format!("operator arrays must be {d}×{d}")));
        }
        let m = DMatrix::from_fn(d, d, |i, j| {
            Complex64::new(raw.re[i][j], raw.im.as_ref().map_or(0.0, |im| im[i][j]))
        });
        Self::new(m)
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    dim: usize,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

/// A positive semi-definite operator. Slightly negative eigenvalues (within
/// [`POSITIVITY_TOL`]) are clamped to zero on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveOperator(HermitianOperator);

impl PositiveOperator {
    pub fn new(x: HermitianOperator) -> Result<Self> {
        let spec = x.spectral();
        let scale = spec.max_abs();
        let min = spec.eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -POSITIVITY_TOL * scale {
            return Err(Error::NotPositive(min));
        }
        if min < 0.0 {
            let clamped = spec.map_eigenvalues(|l| l.max(0.0));
            return Ok(PositiveOperator(HermitianOperator::from_spectral(clamped)));
        }
        Ok(PositiveOperator(x))
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?)
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::diagonal(values)?)
    }

    pub fn as_hermitian(&self) -> &HermitianOperator {
        &self.0
    }

    /// Eigenvalues above the support cutoff, paired with their eigenvector index.
    pub fn support_eigen(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let spec = self.spectral();
        let floor = OPERATOR_SUPPORT_CUTOFF * spec.max_abs();
        spec.eigenvalues().iter().cloned().enumerate().filter(move |(_, l)| *l > floor)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return domain("positive operators scale by nonnegative factors only");
        }
        Ok(PositiveOperator(self.0.scaled(lambda)))
    }

    pub fn conjugated(&self, u: &DMatrix<Complex64>) -> Result<Self> {
        PositiveOperator::new(self.0.conjugated(u)?)
    }
}

impl Deref for PositiveOperator {
    type Target = HermitianOperator;

    fn deref(&self) -> &HermitianOperator {
        &self.0
    }
}

/// A positive operator of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(PositiveOperator);

impl DensityOperator {
    pub fn new(x: PositiveOperator) -> Result<Self> {
        let t = x.trace();
        if (t - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(t));
        }
        Ok(DensityOperator(x))
    }

    pub fn from_hermitian(x: HermitianOperator) -> Result<Self> {
        Self::new(PositiveOperator::new(x)?)
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        Self::from_hermitian(HermitianOperator::new(m)?)
    }

    /// Diagonal density operator carrying the distribution on its diagonal.
    pub fn from_distribution(p: &Distribution) -> Result<Self> {
        Self::new(PositiveOperator::diagonal(p.probs())?)
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let v = DVector::from_column_slice(psi);
        let n = v.norm();
        if !(n > 0.0) {
            return domain("pure state needs a nonzero vector");
        }
        let v = v.unscale(n);
        Self::from_matrix(&v * v.adjoint())
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        Self::new(PositiveOperator::diagonal(&vec![1.0 / d as f64; d])?)
    }

    pub fn as_positive(&self) -> &PositiveOperator {
        &self.0
    }

    pub fn conjugated(&self, u: &DMatrix<Complex64>) -> Result<Self> {
        DensityOperator::new(self.0.conjugated(u)?)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        Self::from_hermitian(HermitianOperator::from_json(value)?)
    }
}

impl Deref for DensityOperator {
    type Target = PositiveOperator;

    fn deref(&self) -> &PositiveOperator {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0),
        ]);
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn rejects_oversized() {
        let m = DMatrix::<Complex64>::identity(MAX_DIM + 1, MAX_DIM + 1);
        assert!(matches!(HermitianOperator::new(m), Err(Error::DimensionCap(_))));
    }

    #[test]
    fn positivity_and_trace() {
        assert!(matches!(PositiveOperator::diagonal(&[1.0, -0.1]), Err(Error::NotPositive(_))));
        let p = PositiveOperator::diagonal(&[1.0, -1e-15]).unwrap();
        assert!(p.spectral().eigenvalues().iter().all(|l| *l >= 0.0));
        assert!(matches!(DensityOperator::new(PositiveOperator::diagonal(&[0.5, 0.4]).unwrap()), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn json_round_trip() {
        let rho = DensityOperator::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap();
        let back = HermitianOperator::from_json(&rho.to_json()).unwrap();
        assert!((back.matrix() - rho.matrix()).norm() < 1e-15);
        let real_only = serde_json::json!({"dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]]});
        assert!(DensityOperator::from_json(&real_only).is_ok());
        let bad = serde_json::json!({"dim": 2, "re": [[1.0]], "im": [[0.0]]});
        assert!(matches!(HermitianOperator::from_json(&bad), Err(Error::Parse(_))));
    }
}
