use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::classical::{Distribution, JointDistribution};
use crate::error::{domain, Result};
use crate::operator::{DensityOperator, PositiveOperator};

fn exp_spacings<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Uniform sample from the probability simplex on `n` points.
pub fn sample_distribution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Distribution> {
    if n == 0 {
        return domain("a distribution needs at least one point");
    }
    Distribution::from_weights(&exp_spacings(n, rng))
}

/// `floor + (1 − n·floor)·U` with `U` uniform on the simplex, so every
/// probability is at least `floor`.
pub fn sample_distribution_floored<R: Rng + ?Sized>(n: usize, floor: f64, rng: &mut R) -> Result<Distribution> {
    if n == 0 || !(0.0..=1.0 / n as f64).contains(&floor) {
        return domain(format!("floor {floor} is infeasible for {n} points"));
    }
    let free = 1.0 - n as f64 * floor;
    let w: Vec<f64> = exp_spacings(n, rng).into_iter().map(|u| floor + free * u).collect();
    Distribution::from_weights(&w)
}

/// Uniform distribution over the cells of an `n × n` table.
pub fn sample_joint<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<JointDistribution> {
    let cells = sample_distribution(n * n, rng)?;
    JointDistribution::new(n, cells.probs().to_vec())
}

/// Joint table whose diagonal carries a random share of the mass, so error
/// probabilities cover the whole of `[0, 1]`.
pub fn sample_joint_mixed<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<JointDistribution> {
    let base = sample_joint(n, rng)?;
    let diag = sample_distribution(n, rng)?;
    let s: f64 = rng.random::<f64>().powi(2);
    let mut cells: Vec<f64> = base.cells().iter().map(|c| s * c).collect();
    for x in 0..n {
        cells[x * n + x] += (1.0 - s) * diag.probs()[x];
    }
    JointDistribution::new(n, cells)
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// `GG*/tr(GG*)` with `G` a `d × rank` complex Gaussian matrix.
pub fn sample_density<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityOperator> {
    if !(1..=d).contains(&rank) {
        return domain(format!("rank must lie in [1, {d}], got {rank}"));
    }
    let g = ginibre(d, rank, rng);
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    DensityOperator::from_matrix(m.unscale(tr))
}

/// Density operator of random rank: full rank with probability ½, otherwise
/// uniform over `1..d`.
pub fn sample_density_any_rank<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityOperator> {
    let rank = if d == 1 || rng.random_bool(0.5) { d } else { rng.random_range(1..d) };
    sample_density(d, rank, rng)
}

/// Positive operator with trace `theta`.
pub fn sample_positive<R: Rng + ?Sized>(d: usize, rank: usize, theta: f64, rng: &mut R) -> Result<PositiveOperator> {
    sample_density(d, rank, rng)?.as_positive().scaled(theta)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn sample_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = ginibre(d, d, rng);
    (&g + g.adjoint()).scale(0.5)
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let qr = ginibre(d, d, rng).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..d {
        let rk = r[(k, k)];
        let phase = if rk.norm() > 0.0 { rk / rk.norm() } else { Complex64::new(1.0, 0.0) };
        for row in 0..d {
            q[(row, k)] *= phase;
        }
    }
    q
}

/// `(1 − s)ρ + sσ'` with σ' fresh and `s` log-uniform in `[1e−4, 1]`: pairs
/// at every scale of trace distance.
pub fn sample_nearby_density<R: Rng + ?Sized>(rho: &DensityOperator, rng: &mut R) -> Result<DensityOperator> {
    let other = sample_density_any_rank(rho.dim(), rng)?;
    let s = 10f64.powf(-4.0 * rng.random::<f64>());
    let m = rho.matrix().scale(1.0 - s) + other.matrix().scale(s);
    DensityOperator::from_matrix(m)
}

/// A pair of density operators diagonal in a common random basis, returned
/// together with their eigenvalue distributions.
pub fn sample_commuting_pair<R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
) -> Result<(DensityOperator, DensityOperator, Distribution, Distribution)> {
    let p = sample_distribution(d, rng)?;
    let q = sample_distribution(d, rng)?;
    let u = random_unitary(d, rng);
    let rho = DensityOperator::from_distribution(&p)?.conjugated(&u)?;
    let sigma = DensityOperator::from_distribution(&q)?.conjugated(&u)?;
    Ok((rho, sigma, p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::rng::substream;
    use crate::operator::{pinched_diagonal, PinchingBasis};
    use crate::quantum::quantum_tsallis_entropy;
    use crate::Order;

    #[test]
    fn point_simplex() {
        let mut rng = substream(1, "t", 0, 0);
        assert_eq!(sample_distribution(1, &mut rng).unwrap().probs(), &[1.0]);
    }

    #[test]
    fn simplex_mean_is_centered() {
        let mut rng = substream(2, "mean", 0, 0);
        let mut acc = [0.0; 3];
        let n = 100_000;
        for _ in 0..n {
            let p = sample_distribution(3, &mut rng).unwrap();
            for (a, x) in acc.iter_mut().zip(p.probs()) {
                *a += x;
            }
        }
        for a in acc {
            assert!((a / n as f64 - 1.0 / 3.0).abs() < 0.01);
        }
    }

    #[test]
    fn floor_is_respected() {
        let mut rng = substream(3, "floor", 0, 0);
        for _ in 0..100 {
            let p = sample_distribution_floored(5, 0.1, &mut rng).unwrap();
            assert!(p.probs().iter().all(|&x| x >= 0.1 - 1e-15));
        }
        assert!(sample_distribution_floored(5, 0.3, &mut rng).is_err());
    }

    #[test]
    fn density_rank_and_trace() {
        let mut rng = substream(4, "rank", 0, 0);
        let pure = sample_density(4, 1, &mut rng).unwrap();
        assert!(quantum_tsallis_entropy(&pure, Order::new(2.0).unwrap()).abs() < 1e-12);
        assert_eq!(pure.spectral().support_rank(), 1);
        let full = sample_density(4, 4, &mut rng).unwrap();
        assert!((full.trace() - 1.0).abs() < 1e-12);
        assert_eq!(full.spectral().support_rank(), 4);
        assert!(sample_density(3, 0, &mut rng).is_err());
    }

    #[test]
    fn pinched_sample_spectrum_is_its_diagonal() {
        let mut rng = substream(5, "pinch", 0, 0);
        let rho = sample_density(3, 3, &mut rng).unwrap();
        let basis = PinchingBasis::computational(3);
        let diag = pinched_diagonal(&rho, &basis).unwrap();
        let pinched = crate::operator::pinching_map(&rho, &basis).unwrap();
        let mut ev = pinched.spectral().eigenvalues().to_vec();
        let mut dv = diag.clone();
        ev.sort_by(f64::total_cmp);
        dv.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(&dv) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = substream(6, "u", 0, 0);
        let u = random_unitary(5, &mut rng);
        let err = (u.adjoint() * &u - DMatrix::<Complex64>::identity(5, 5)).norm();
        assert!(err < 1e-12);
    }
}
