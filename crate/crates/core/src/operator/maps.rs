use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{HermitianOperator, PositiveOperator};
use crate::error::{domain, same_len, Result};

/// Tolerance for projector and basis identities.
pub const PROJECTOR_TOL: f64 = 1e-10;

/// An orthogonal projector `Π = Π² = Π*`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoProjector {
    m: DMatrix<Complex64>,
    rank: usize,
}

impl OrthoProjector {
    /// Projector onto the span of the given (orthonormal) columns of `basis`.
    pub(crate) fn from_columns(basis: &DMatrix<Complex64>, columns: &[usize]) -> Self {
        let d = basis.nrows();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for &c in columns {
            let v = basis.column(c);
            m += v * v.adjoint();
        }
        OrthoProjector { m, rank: columns.len() }
    }

    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        let d = m.nrows();
        if m.ncols() != d {
            return domain("projector must be square");
        }
        let idem = (&m * &m - &m).norm();
        let herm = (&m - m.adjoint()).norm();
        if idem > PROJECTOR_TOL || herm > PROJECTOR_TOL {
            return domain(format!("not an orthogonal projector (|Π²−Π|={idem:e}, |Π−Π*|={herm:e})"));
        }
        let rank = m.diagonal().iter().map(|z| z.re).sum::<f64>().round() as usize;
        Ok(OrthoProjector { m, rank })
    }

    pub fn zero(d: usize) -> Self {
        OrthoProjector { m: DMatrix::zeros(d, d), rank: 0 }
    }

    pub fn identity(d: usize) -> Self {
        OrthoProjector { m: DMatrix::identity(d, d), rank: d }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// `tr(Π X)`.
    pub fn expectation(&self, x: &HermitianOperator) -> f64 {
        trace_of_product(&self.m, x.matrix()).re
    }
}

fn trace_of_product(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    // tr(AB) = Σ_ij A_ij B_ji
    let d = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// `½ ‖X − Y‖₁`.
pub fn trace_distance_quantum(x: &HermitianOperator, y: &HermitianOperator) -> Result<f64> {
    let diff = x.minus(y)?;
    Ok(0.5 * diff.spectral().eigenvalues().iter().map(|l| l.abs()).sum::<f64>())
}

/// Hilbert–Schmidt inner product `tr(X* Y)`.
pub fn hs_inner(x: &HermitianOperator, y: &HermitianOperator) -> Result<Complex64> {
    same_len(x.dim(), y.dim())?;
    Ok(trace_of_product(&x.matrix().adjoint(), y.matrix()))
}

/// Zero eigenvalues of `X − Y` (relative to its largest magnitude) go to Π₊.
const JORDAN_ZERO_TOL: f64 = 1e-12;

fn jordan_split(x: &HermitianOperator, y: &HermitianOperator) -> Result<(HermitianOperator, Vec<usize>, Vec<usize>)> {
    let diff = x.minus(y)?;
    let spec = diff.spectral();
    let tol = JORDAN_ZERO_TOL * spec.max_abs();
    let (plus, minus): (Vec<usize>, Vec<usize>) = (0..spec.dim()).partition(|&k| spec.eigenvalues()[k] >= -tol);
    Ok((diff, plus, minus))
}

/// Projectors onto the nonnegative and negative eigenspaces of `X − Y`.
/// The kernel of `X − Y` is assigned to Π₊, so `Π₊ + Π₋ = I`.
pub fn jordan_projectors(x: &HermitianOperator, y: &HermitianOperator) -> Result<(OrthoProjector, OrthoProjector)> {
    let (diff, plus, minus) = jordan_split(x, y)?;
    let v = diff.spectral().vectors();
    Ok((OrthoProjector::from_columns(v, &plus), OrthoProjector::from_columns(v, &minus)))
}

/// A complete orthonormal basis `{|k⟩}` defining a pinching map.
#[derive(Debug, Clone)]
pub struct PinchingBasis {
    columns: DMatrix<Complex64>,
}

impl PinchingBasis {
    /// Validates that the columns are orthonormal and complete.
    pub fn new(columns: DMatrix<Complex64>) -> Result<Self> {
        let d = columns.nrows();
        if columns.ncols() != d {
            return domain(format!("basis has {} vectors in dimension {d}; a complete basis is required", columns.ncols()));
        }
        let gram = columns.adjoint() * &columns;
        let err = (&gram - DMatrix::<Complex64>::identity(d, d)).norm();
        if err > PROJECTOR_TOL {
            return domain(format!("basis is not orthonormal (|V*V − I| = {err:e})"));
        }
        Ok(PinchingBasis { columns })
    }

    /// Rank-one refinement of the Jordan projectors: the eigenvectors of `X − Y`.
    pub fn from_difference(x: &HermitianOperator, y: &HermitianOperator) -> Result<Self> {
        let diff = x.minus(y)?;
        Ok(PinchingBasis { columns: diff.spectral().vectors().clone() })
    }

    pub fn computational(d: usize) -> Self {
        PinchingBasis { columns: DMatrix::identity(d, d) }
    }

    pub fn columns(&self) -> &DMatrix<Complex64> {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.nrows()
    }
}

/// Diagonal weights `⟨k|X|k⟩` of `X` in the given basis.
pub fn pinched_diagonal(x: &HermitianOperator, basis: &PinchingBasis) -> Result<Vec<f64>> {
    same_len(x.dim(), basis.dim())?;
    let v = basis.columns();
    let xv = x.matrix() * v;
    Ok((0..x.dim()).map(|k| v.column(k).dotc(&xv.column(k)).re).collect())
}

/// `Ψ(X) = Σ_k |k⟩⟨k| X |k⟩⟨k|`.
pub fn pinching_map(x: &HermitianOperator, basis: &PinchingBasis) -> Result<HermitianOperator> {
    let diag = pinched_diagonal(x, basis)?;
    let v = basis.columns();
    let d = x.dim();
    let scaled = DMatrix::from_fn(d, d, |r, c| v[(r, c)] * diag[c]);
    let m = scaled * v.adjoint();
    Ok(HermitianOperator::from_trusted((&m + m.adjoint()).scale(0.5)))
}

/// `(tr(Π₊ X), tr(Π₋ X))`, the two-point coarse graining of `X`.
pub fn coarse_grain_two_point(x: &PositiveOperator, plus: &OrthoProjector, minus: &OrthoProjector) -> Result<(f64, f64)> {
    same_len(x.dim(), plus.dim())?;
    same_len(x.dim(), minus.dim())?;
    let sum = plus.matrix() + minus.matrix();
    let err = (&sum - DMatrix::<Complex64>::identity(x.dim(), x.dim())).norm();
    if err > PROJECTOR_TOL {
        return domain(format!("projector pair does not resolve the identity (|Π₊+Π₋−I| = {err:e})"));
    }
    Ok((plus.expectation(x), minus.expectation(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::DensityOperator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trace_distance_examples() {
        let rho = DensityOperator::pure(&[c(1.0, 0.0), c(1.0, 1.0)]).unwrap();
        assert!(trace_distance_quantum(&rho, &rho).unwrap().abs() < 1e-15);
        let a = DensityOperator::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let b = DensityOperator::pure(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((trace_distance_quantum(&a, &b).unwrap() - 1.0).abs() < 1e-14);
        let p = HermitianOperator::diagonal(&[0.2, 0.3, 0.5]).unwrap();
        let q = HermitianOperator::diagonal(&[0.5, 0.4, 0.1]).unwrap();
        assert!((trace_distance_quantum(&p, &q).unwrap() - 0.4).abs() < 1e-14);
        assert!(trace_distance_quantum(&p, &HermitianOperator::identity(2).unwrap()).is_err());
    }

    #[test]
    fn hs_examples() {
        let i3 = HermitianOperator::identity(3).unwrap();
        assert!((hs_inner(&i3, &i3).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
        let p0 = HermitianOperator::diagonal(&[1.0, 0.0]).unwrap();
        let p1 = HermitianOperator::diagonal(&[0.0, 1.0]).unwrap();
        assert_eq!(hs_inner(&p0, &p1).unwrap(), c(0.0, 0.0));
        let rho = DensityOperator::pure(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let v = hs_inner(&p0, &rho).unwrap();
        assert!(v.im.abs() < 1e-15 && (v.re - 0.36).abs() < 1e-14);
    }

    #[test]
    fn jordan_examples() {
        let x = HermitianOperator::diagonal(&[0.8, 0.2]).unwrap();
        let y = HermitianOperator::diagonal(&[0.5, 0.5]).unwrap();
        let (plus, minus) = jordan_projectors(&x, &y).unwrap();
        assert!((plus.matrix()[(0, 0)].re - 1.0).abs() < 1e-14 && plus.matrix()[(1, 1)].norm() < 1e-14);
        assert!((minus.matrix()[(1, 1)].re - 1.0).abs() < 1e-14);

        let (plus, minus) = jordan_projectors(&x, &x).unwrap();
        assert_eq!(plus.rank(), 2);
        assert_eq!(minus.rank(), 0);
    }

    #[test]
    fn pinching_examples() {
        let basis = PinchingBasis::computational(3);
        let d = HermitianOperator::diagonal(&[0.1, 0.6, 0.3]).unwrap();
        let out = pinching_map(&d, &basis).unwrap();
        assert!((out.matrix() - d.matrix()).norm() < 1e-15);

        let rho = DensityOperator::pure(&[c(1.0, 0.0), c(0.5, -0.5), c(0.0, 1.0)]).unwrap();
        let out = pinching_map(&rho, &basis).unwrap();
        assert!((out.trace() - 1.0).abs() < 1e-14);
        for k in 0..3 {
            assert!((out.matrix()[(k, k)] - rho.matrix()[(k, k)]).norm() < 1e-15);
        }

        let incomplete = DMatrix::<Complex64>::identity(3, 2);
        assert!(PinchingBasis::new(incomplete).is_err());
    }

    #[test]
    fn coarse_grain_examples() {
        let x = PositiveOperator::diagonal(&[0.2, 0.3, 0.5]).unwrap();
        let plus = OrthoProjector::new(HermitianOperator::diagonal(&[1.0, 1.0, 0.0]).unwrap().matrix().clone()).unwrap();
        let minus = OrthoProjector::new(HermitianOperator::diagonal(&[0.0, 0.0, 1.0]).unwrap().matrix().clone()).unwrap();
        let (u, v) = coarse_grain_two_point(&x, &plus, &minus).unwrap();
        assert!((u - 0.5).abs() < 1e-15 && (v - 0.5).abs() < 1e-15);

        let (u, v) = coarse_grain_two_point(&x, &OrthoProjector::identity(3), &OrthoProjector::zero(3)).unwrap();
        assert!((u - 1.0).abs() < 1e-15 && v == 0.0);

        assert!(coarse_grain_two_point(&x, &plus, &OrthoProjector::zero(3)).is_err());
    }
}
