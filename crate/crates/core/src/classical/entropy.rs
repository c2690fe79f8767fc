use crate::classical::{Distribution, JointDistribution};
use crate::error::{same_len, Result};
use crate::scalar::{tsallis_term, Order};

/// `D(P, Q) = ½ Σ |p(x) − q(x)|`.
pub fn trace_distance_classical(p: &Distribution, q: &Distribution) -> Result<f64> {
    same_len(p.len(), q.len())?;
    Ok(half_l1(p.probs(), q.probs()))
}

pub(crate) fn half_l1(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Tsallis entropy of a probability (or eigenvalue) vector.
pub(crate) fn tsallis_of(probs: &[f64], order: Order) -> f64 {
    probs.iter().map(|&p| tsallis_term(p, order)).sum()
}

/// Rényi entropy of a probability (or eigenvalue) vector.
pub(crate) fn renyi_of(probs: &[f64], order: Order) -> f64 {
    if order.near_one() {
        return tsallis_of(probs, order);
    }
    // Near α = 1 the power sum is close to 1; Σp^α − 1 = (1−α)H_α is then
    // summed without cancellation. Far from it the direct sum is sharper.
    let s = 1.0 - order.alpha();
    let excess = s * tsallis_of(probs, order);
    if excess.abs() < 0.5 {
        excess.ln_1p() / s
    } else {
        let power_sum: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| p.powf(order.alpha())).sum();
        power_sum.ln() / s
    }
}

/// `H_α(P) = (1−α)^{-1}(Σ p^α − 1)`, Shannon entropy in the α → 1 limit.
pub fn tsallis_entropy(p: &Distribution, order: Order) -> f64 {
    tsallis_of(p.probs(), order)
}

/// `R_α(P) = (1−α)^{-1} ln Σ p^α`.
pub fn renyi_entropy(p: &Distribution, order: Order) -> f64 {
    renyi_of(p.probs(), order)
}

/// `H_α(X, Y)` over all cells of the joint table.
pub fn joint_tsallis_entropy(j: &JointDistribution, order: Order) -> f64 {
    tsallis_of(j.cells(), order)
}

/// `H_α(X|Y) = Σ_y p_Y(y)^α H_α(X|y)`.
///
/// Conditionals are weighted by `p_Y(y)^α`, not `p_Y(y)`.
pub fn conditional_tsallis_entropy(j: &JointDistribution, order: Order) -> f64 {
    let py = j.marginal_y();
    (0..j.alphabet())
        .filter_map(|y| {
            let cond = j.conditional_column(y)?;
            Some(weight_pow(py[y], order) * tsallis_of(&cond, order))
        })
        .sum()
}

#[inline]
pub(crate) fn weight_pow(p: f64, order: Order) -> f64 {
    if order.near_one() {
        p
    } else {
        p.powf(order.alpha())
    }
}

/// `P_e = Σ_y p_Y(y) q(e|y)`, the off-diagonal mass of the joint table.
pub fn error_probability(j: &JointDistribution) -> f64 {
    let n = j.alphabet();
    let mut off = 0.0;
    for x in 0..n {
        for y in 0..n {
            if x != y {
                off += j.get(x, y);
            }
        }
    }
    off
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn ord(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    fn dist(p: &[f64]) -> Distribution {
        Distribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn trace_distance_examples() {
        let p = dist(&[0.7, 0.3]);
        assert_eq!(trace_distance_classical(&p, &p).unwrap(), 0.0);
        assert_eq!(trace_distance_classical(&dist(&[1.0, 0.0]), &dist(&[0.0, 1.0])).unwrap(), 1.0);
        assert!((trace_distance_classical(&p, &dist(&[0.4, 0.6])).unwrap() - 0.3).abs() < 1e-15);
        assert!(trace_distance_classical(&p, &dist(&[0.2, 0.3, 0.5])).is_err());
    }

    #[test]
    fn tsallis_examples() {
        for a in [0.5, 1.0, 2.0] {
            assert_eq!(tsallis_entropy(&Distribution::point_mass(3, 1).unwrap(), ord(a)), 0.0);
        }
        let u4 = Distribution::uniform(4).unwrap();
        assert!((tsallis_entropy(&u4, ord(2.0)) - 0.75).abs() < 1e-15);
        assert!((tsallis_entropy(&dist(&[0.5, 0.5]), ord(1.0)) - LN_2).abs() < 1e-15);
    }

    #[test]
    fn renyi_examples() {
        for a in [0.3, 1.0, 2.0, 4.5] {
            let u = Distribution::uniform(5).unwrap();
            assert!((renyi_entropy(&u, ord(a)) - 5f64.ln()).abs() < 1e-14);
        }
        assert!((renyi_entropy(&dist(&[0.5, 0.5]), ord(2.0)) - LN_2).abs() < 1e-15);
        assert!((renyi_entropy(&dist(&[0.7, 0.3]), ord(2.0)) + 0.58f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn joint_and_conditional() {
        let pm = Distribution::point_mass(3, 0).unwrap();
        let j = JointDistribution::product(&pm, &pm).unwrap();
        assert_eq!(joint_tsallis_entropy(&j, ord(2.0)), 0.0);

        let n = 3usize;
        let uni = JointDistribution::new(n, vec![1.0 / 9.0; 9]).unwrap();
        let expect = crate::scalar::alpha_log(9.0, ord(0.4)).unwrap();
        assert!((joint_tsallis_entropy(&uni, ord(0.4)) - expect).abs() < 1e-14);

        // X = Y: conditionals are point masses.
        let diag = JointDistribution::new(2, vec![0.3, 0.0, 0.0, 0.7]).unwrap();
        assert_eq!(conditional_tsallis_entropy(&diag, ord(2.0)), 0.0);
        assert_eq!(error_probability(&diag), 0.0);

        let half = JointDistribution::new(2, vec![0.25; 4]).unwrap();
        assert!((error_probability(&half) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn conditional_with_independent_uniform_x() {
        let a = ord(0.6);
        let px = Distribution::uniform(4).unwrap();
        let py = dist(&[0.1, 0.2, 0.3, 0.4]);
        let j = JointDistribution::product(&px, &py).unwrap();
        let weight: f64 = py.probs().iter().map(|p| p.powf(0.6)).sum();
        let expect = weight * crate::scalar::alpha_log(4.0, a).unwrap();
        assert!((conditional_tsallis_entropy(&j, a) - expect).abs() < 1e-14);
    }

    #[test]
    fn pseudo_additivity_for_independent_pairs() {
        let a = ord(1.7);
        let p = dist(&[0.2, 0.5, 0.3]);
        let q = dist(&[0.6, 0.1, 0.3]);
        let j = JointDistribution::product(&p, &q).unwrap();
        // Brute-force both sides from raw power sums.
        let hp = (p.probs().iter().map(|x| x.powf(1.7)).sum::<f64>() - 1.0) / (1.0 - 1.7);
        let hq = (q.probs().iter().map(|x| x.powf(1.7)).sum::<f64>() - 1.0) / (1.0 - 1.7);
        let expect = hp + hq + (1.0 - 1.7) * hp * hq;
        assert!((joint_tsallis_entropy(&j, a) - expect).abs() < 1e-14);
    }
}
