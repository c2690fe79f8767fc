use crate::classical::{Distribution, JointDistribution, WeightSet};
use crate::error::{domain, same_len, Result};

/// Coupling of `P` (as X) and `Q` (as Y) with `P(X ≠ Y) = D(P, Q)`.
///
/// The diagonal carries `min(p, q)`; the residual mass `(p − m) ⊗ (q − m) / D`
/// is spread over off-diagonal cells (the two residuals have disjoint supports).
pub fn maximal_coupling(p: &Distribution, q: &Distribution) -> Result<JointDistribution> {
    same_len(p.len(), q.len())?;
    let n = p.len();
    let m: Vec<f64> = p.probs().iter().zip(q.probs()).map(|(a, b)| a.min(*b)).collect();
    let rp: Vec<f64> = p.probs().iter().zip(&m).map(|(a, m)| a - m).collect();
    let rq: Vec<f64> = q.probs().iter().zip(&m).map(|(b, m)| b - m).collect();
    let mass: f64 = rq.iter().sum();
    let mut cells = vec![0.0; n * n];
    for x in 0..n {
        cells[x * n + x] = m[x];
    }
    if mass > 0.0 {
        for x in 0..n {
            if rp[x] == 0.0 {
                continue;
            }
            for y in 0..n {
                cells[x * n + y] += rp[x] * rq[y] / mass;
            }
        }
    }
    JointDistribution::new(n, cells)
}

/// `q0 = min{ q_j : j ∈ supp }`.
pub fn minimal_probability(q: &Distribution, support_of: &WeightSet) -> Result<f64> {
    same_len(q.len(), support_of.len())?;
    let support = support_of.support();
    if support.is_empty() {
        return domain("minimal probability over an empty support");
    }
    Ok(support.iter().map(|&j| q.probs()[j]).fold(f64::INFINITY, f64::min))
}

/// `Q̄` with `q̄_j = max{q0, −δ_j}` on supp P, where `δ = P − Q`.
///
/// Off the support of P the weight is zero. On supp P both `Δ + Q̄` and
/// `Q − Q̄` are nonnegative.
pub fn qbar_construction(p: &Distribution, q: &Distribution) -> Result<WeightSet> {
    let q0 = minimal_probability(q, &p.to_weights())?;
    if !(q0 > 0.0) {
        return domain("minimal probability is zero; the construction needs q0 > 0");
    }
    let mut out = vec![0.0; p.len()];
    for j in p.support() {
        let delta = p.probs()[j] - q.probs()[j];
        out[j] = q0.max(-delta);
    }
    WeightSet::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{error_probability, trace_distance_classical};

    fn dist(p: &[f64]) -> Distribution {
        Distribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn coupling_of_equal_marginals_is_diagonal() {
        let p = dist(&[0.2, 0.5, 0.3]);
        let j = maximal_coupling(&p, &p).unwrap();
        assert_eq!(error_probability(&j), 0.0);
        assert_eq!(j.get(1, 1), 0.5);
    }

    #[test]
    fn coupling_example() {
        let p = dist(&[0.7, 0.3]);
        let q = dist(&[0.4, 0.6]);
        let j = maximal_coupling(&p, &q).unwrap();
        assert!((j.get(0, 0) - 0.4).abs() < 1e-15);
        assert!((j.get(1, 1) - 0.3).abs() < 1e-15);
        assert!((j.get(0, 1) - 0.3).abs() < 1e-15);
        assert_eq!(j.get(1, 0), 0.0);
        let pe = error_probability(&j);
        assert!((pe - trace_distance_classical(&p, &q).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn minimal_probability_examples() {
        let u = Distribution::uniform(4).unwrap();
        assert_eq!(minimal_probability(&u, &u.to_weights()).unwrap(), 0.25);
        let q = dist(&[0.5, 0.3, 0.2]);
        let s = WeightSet::new(vec![1.0, 1.0, 0.0]).unwrap();
        assert_eq!(minimal_probability(&q, &s).unwrap(), 0.3);
        let q = dist(&[0.5, 0.5, 0.0]);
        let s = WeightSet::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(minimal_probability(&q, &s).unwrap(), 0.0);
        assert!(minimal_probability(&q, &WeightSet::new(vec![0.0; 3]).unwrap()).is_err());
    }

    #[test]
    fn qbar_examples() {
        let p = dist(&[0.2, 0.3, 0.5]);
        let qb = qbar_construction(&p, &p).unwrap();
        assert_eq!(qb.weights(), &[0.2, 0.2, 0.2]);

        let qb = qbar_construction(&dist(&[0.5, 0.5]), &dist(&[0.8, 0.2])).unwrap();
        assert!((qb.weights()[0] - 0.3).abs() < 1e-15);
        assert!((qb.weights()[1] - 0.2).abs() < 1e-15);

        assert!(qbar_construction(&dist(&[0.5, 0.5]), &dist(&[1.0, 0.0])).is_err());
    }
}
