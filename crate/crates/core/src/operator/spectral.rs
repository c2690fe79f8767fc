use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{HermitianOperator, OrthoProjector, PositiveOperator, CLUSTER_TOL, OPERATOR_SUPPORT_CUTOFF};
use crate::error::Result;

/// Eigenvalues (descending) with an orthonormal eigenbasis in matching column order.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub(crate) fn of_matrix(m: &DMatrix<Complex64>) -> Self {
        let eig = m.clone().symmetric_eigen();
        let d = m.nrows();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);
        SpectralDecomposition { eigenvalues, vectors }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column k is the eigenvector of `eigenvalues()[k]`.
    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest eigenvalue magnitude.
    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }

    /// Number of eigenvalues above the support cutoff.
    pub fn support_rank(&self) -> usize {
        let floor = OPERATOR_SUPPORT_CUTOFF * self.max_abs();
        self.eigenvalues.iter().filter(|l| **l > floor).count()
    }

    /// Distinct eigenvalues after merging those within `CLUSTER_TOL · λ_max`,
    /// each with the eigenvector indices it collects.
    pub fn clusters(&self) -> Vec<(f64, Vec<usize>)> {
        let tol = CLUSTER_TOL * self.max_abs();
        let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            match out.last_mut() {
                Some((_, members)) if (self.eigenvalues[members[0]] - l).abs() <= tol => members.push(k),
                _ => out.push((l, vec![k])),
            }
        }
        for (value, members) in out.iter_mut() {
            *value = members.iter().map(|&k| self.eigenvalues[k]).sum::<f64>() / members.len() as f64;
        }
        out
    }

    /// `Σ_a a P_a` over the clustered spectrum.
    pub fn projectors(&self) -> Vec<(f64, OrthoProjector)> {
        self.clusters()
            .into_iter()
            .map(|(value, members)| (value, OrthoProjector::from_columns(&self.vectors, &members)))
            .collect()
    }

    /// Applies `f` to every eigenvalue, keeping the eigenbasis.
    pub(crate) fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> SpectralDecomposition {
        SpectralDecomposition {
            eigenvalues: self.eigenvalues.iter().map(|&l| f(l)).collect(),
            vectors: self.vectors.clone(),
        }
    }

    /// `Σ_k λ_k |v_k⟩⟨v_k|`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let scaled = DMatrix::from_fn(self.dim(), self.dim(), |r, c| self.vectors[(r, c)] * self.eigenvalues[c]);
        let m = scaled * self.vectors.adjoint();
        (&m + m.adjoint()).scale(0.5)
    }
}

/// Spectral decomposition of a Hermitian operator.
pub fn eigendecompose(x: &HermitianOperator) -> SpectralDecomposition {
    x.spectral().clone()
}

/// `Σ_{a>0} a^s P_a`: powers are taken on the support only, so `s = 0` gives
/// the support projector and `s = −1` the generalized inverse.
pub fn power_on_support(a: &PositiveOperator, exponent: f64) -> Result<PositiveOperator> {
    let spec = a.spectral();
    let floor = OPERATOR_SUPPORT_CUTOFF * spec.max_abs();
    let mapped = spec.map_eigenvalues(|l| if l > floor { l.powf(exponent) } else { 0.0 });
    PositiveOperator::new(HermitianOperator::from_spectral(mapped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_one_cluster() {
        let spec = eigendecompose(&HermitianOperator::identity(3).unwrap());
        let p = spec.projectors();
        assert_eq!(p.len(), 1);
        assert!((p[0].0 - 1.0).abs() < 1e-14);
        assert_eq!(p[0].1.rank(), 3);
    }

    #[test]
    fn diag_311() {
        let spec = eigendecompose(&HermitianOperator::diagonal(&[1.0, 3.0, 1.0]).unwrap());
        let p = spec.projectors();
        assert_eq!(p.len(), 2);
        assert!((p[0].0 - 3.0).abs() < 1e-14 && p[0].1.rank() == 1);
        assert!((p[1].0 - 1.0).abs() < 1e-14 && p[1].1.rank() == 2);
    }

    #[test]
    fn pauli_x() {
        let x = HermitianOperator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let ev = eigendecompose(&x).eigenvalues().to_vec();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn powers() {
        let a = PositiveOperator::diagonal(&[4.0, 0.0]).unwrap();
        let half = power_on_support(&a, 0.5).unwrap();
        assert!((half.matrix()[(0, 0)].re - 2.0).abs() < 1e-14);
        assert!(half.matrix()[(1, 1)].norm() < 1e-14);

        let b = PositiveOperator::diagonal(&[0.5, 0.2, 0.0]).unwrap();
        let zero = power_on_support(&b, 0.0).unwrap();
        assert!((zero.trace() - 2.0).abs() < 1e-14);
        assert_eq!(zero.spectral().support_rank(), 2);
    }
}
