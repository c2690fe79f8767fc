//! Brute-force check of the minimal-probability bound.
//!
//! After the reductions in the bound's proof, `H_α(P‖Q)` is dominated by a
//! separable function of a perturbation `δ` of the constant vector `q0`:
//!
//! `F(δ) = Σ_j ψ(δ_j)`, `ψ(δ) = [(q0+δ)^α q0^{1−α} − (q0+δ)]/(α−1)`,
//!
//! where the positive parts `x_i` of `δ` live on `ω_x`, the negative parts
//! `−y_j` on a disjoint `ω_y`, and `Σx_i = Σy_j = τ`. For `τ > q0` only the
//! positive parts survive the relaxation. `ψ` is convex, so the maximum sits
//! on an extreme point: all of `τ` on one coordinate of each part.
//!
//! The oracle maximizes `F` over the rational grid `x_i = k_i τ/M`,
//! `Σk_i = M`. The coordinates are exchangeable, so a role assignment is
//! determined by the sizes `(|ω_x|, |ω_y|)`, and the best split of `M` over a
//! part is a small dynamic program.

use serde::Serialize;

use crate::bounds::upper_bound_thm3;
use crate::classical::{minimal_probability, trace_distance_classical, tsallis_rel_entropy, Distribution};
use crate::error::{domain, Result};
use crate::scalar::Order;

/// Largest alphabet the oracle accepts.
pub const ORACLE_MAX_N: usize = 6;
/// Smallest grid the oracle accepts.
pub const ORACLE_MIN_STEPS: usize = 20;

struct Psi {
    q0: f64,
    a: f64,
    scale: f64,
}

impl Psi {
    fn new(q0: f64, order: Order) -> Self {
        let a = order.alpha();
        Psi { q0, a, scale: q0.powf(1.0 - a) }
    }

    fn at(&self, delta: f64) -> f64 {
        let p = (self.q0 + delta).max(0.0);
        (p.powf(self.a) * self.scale - p) / (self.a - 1.0)
    }
}

/// `best[n][m]`: maximum of `Σ ψ(sign·k_i τ/M)` over `n` coordinates with
/// `Σk_i = m` and every `k_i ≤ cap`.
fn split_table(psi: &Psi, sign: f64, tau: f64, steps: usize, n: usize, cap: usize) -> Vec<Vec<f64>> {
    let h = tau / steps as f64;
    let vals: Vec<f64> = (0..=steps).map(|k| psi.at(sign * k as f64 * h)).collect();
    let mut best = vec![vec![f64::NEG_INFINITY; steps + 1]; n + 1];
    best[0][0] = 0.0;
    for i in 1..=n {
        for m in 0..=steps {
            let mut b = f64::NEG_INFINITY;
            for k in 0..=m.min(cap) {
                let prev = best[i - 1][m - k];
                if prev > f64::NEG_INFINITY {
                    b = b.max(prev + vals[k]);
                }
            }
            best[i][m] = b;
        }
    }
    best
}

fn check_oracle_args(q0: f64, tau: f64, order: Order, n: usize, steps: usize) -> Result<()> {
    if !order.above_one() {
        return domain(format!("the oracle requires alpha > 1, got {order}"));
    }
    if steps < ORACLE_MIN_STEPS {
        return domain(format!("grid_steps must be at least {ORACLE_MIN_STEPS}, got {steps}"));
    }
    if !(2..=ORACLE_MAX_N).contains(&n) {
        return domain(format!("alphabet size must lie in [2, {ORACLE_MAX_N}], got {n}"));
    }
    if !(q0 > 0.0) || q0 * n as f64 > 1.0 + 1e-12 {
        return domain(format!("q0 = {q0} is infeasible for {n} points"));
    }
    if !(0.0..=1.0 - q0 + 1e-12).contains(&tau) {
        return domain(format!("tau = {tau} outside [0, 1 − q0]"));
    }
    Ok(())
}

/// Grid maxima split by whether the point is one of the analytic extremes.
struct GridMax {
    all: f64,
    without_extremes: f64,
}

fn grid_max(q0: f64, tau: f64, order: Order, n: usize, steps: usize) -> Result<GridMax> {
    check_oracle_args(q0, tau, order, n, steps)?;
    if tau == 0.0 {
        return Ok(GridMax { all: 0.0, without_extremes: 0.0 });
    }
    let psi = Psi::new(q0, order);
    let up = split_table(&psi, 1.0, tau, steps, n, steps);
    let up_split = split_table(&psi, 1.0, tau, steps, n, steps - 1);
    if tau > q0 {
        let conc = up[1][steps];
        let split = (2..=n).map(|k| up_split[k][steps]).fold(f64::NEG_INFINITY, f64::max);
        return Ok(GridMax { all: conc.max(split), without_extremes: split });
    }
    let down = split_table(&psi, -1.0, tau, steps, n, steps);
    let down_split = split_table(&psi, -1.0, tau, steps, n, steps - 1);
    let mut all = f64::NEG_INFINITY;
    let mut without = f64::NEG_INFINITY;
    for nx in 1..n {
        for ny in 1..=(n - nx) {
            let (cx, sx) = (up[1][steps], up_split[nx][steps]);
            let (cy, sy) = (down[1][steps], down_split[ny][steps]);
            all = all.max(up[nx][steps] + down[ny][steps]);
            without = without.max(cx + sy).max(sx + cy).max(sx + sy);
        }
    }
    Ok(GridMax { all, without_extremes: without })
}

/// Maximum of the reduced objective over the rational grid with denominator
/// `grid_steps`; never exceeds the closed-form bound and reaches it at the
/// analytic extreme point, which is always a grid member.
pub fn brute_force_thm3_oracle(q0: f64, tau: f64, order: Order, n: usize, grid_steps: usize) -> Result<f64> {
    Ok(grid_max(q0, tau, order, n, grid_steps)?.all)
}

/// The same maximum with the analytic extreme points removed from the grid.
/// Approaches the bound from below as the grid is refined.
pub fn thm3_oracle_without_extremes(q0: f64, tau: f64, order: Order, n: usize, grid_steps: usize) -> Result<f64> {
    Ok(grid_max(q0, tau, order, n, grid_steps)?.without_extremes)
}

/// An explicit pair `(P, Q)` at the extreme point of the bound.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalConstruction {
    pub q0: f64,
    pub tau: f64,
    pub alpha: f64,
    pub p_extremal: Distribution,
    pub q_base: Distribution,
    /// `H_α(P‖Q)` of the constructed pair.
    pub measured: f64,
    /// The closed-form bound at the pair's own `q0` and `τ`.
    pub bound: f64,
    /// Whether `measured` equals `bound` within `1e−10`.
    pub attains: bool,
}

impl ExtremalConstruction {
    pub fn ratio(&self) -> f64 {
        if self.bound == 0.0 {
            1.0
        } else {
            self.measured / self.bound
        }
    }
}

/// Builds `P`, `Q` with minimal probability `q0` and `D(P, Q) = τ` at the
/// maximizer of the bound.
///
/// For `τ ≤ q0` (and `N ≥ 3`, or `N = 2` with `q0 = ½`) the pair attains the
/// bound: `Q = (q0, q0, r, …, r)` and `P = Q + τ(e₁ − e₂)`. For `τ > q0` the
/// pair moves `τ` onto the `q0` coordinate from a coordinate of mass `τ`;
/// whether that attains depends on how the leftover mass `1 − q0 − τ` can be
/// placed, and `attains` reports the outcome.
pub fn extremal_thm3_instance(q0: f64, tau: f64, order: Order, n: usize) -> Result<ExtremalConstruction> {
    if !order.above_one() {
        return domain(format!("the construction requires alpha > 1, got {order}"));
    }
    if n < 2 {
        return domain("alphabet of at least 2 required");
    }
    if !(q0 > 0.0) || q0 * n as f64 > 1.0 + 1e-12 {
        return domain(format!("q0 = {q0} is infeasible for {n} points"));
    }
    if !(0.0..=1.0 - q0 + 1e-12).contains(&tau) {
        return domain(format!("tau = {tau} outside [0, 1 − q0]"));
    }
    let tau = tau.min(1.0 - q0);
    let mut q = vec![0.0; n];
    let mut p = vec![0.0; n];
    if tau <= q0 {
        q[0] = q0;
        if n == 2 {
            q[1] = 1.0 - q0;
        } else {
            q[1] = q0;
            let r = (1.0 - 2.0 * q0) / (n - 2) as f64;
            q[2..].iter_mut().for_each(|x| *x = r);
        }
        p.copy_from_slice(&q);
        p[0] += tau;
        p[1] -= tau;
    } else {
        let rest = (1.0 - q0 - tau).max(0.0);
        q[0] = q0;
        p[0] = q0 + tau;
        q[1] = tau;
        let k = if n > 2 { ((rest / q0 + 1e-12).floor() as usize).min(n - 2) } else { 0 };
        if rest <= 1e-15 {
            // Nothing left to place.
        } else if k >= 1 {
            let share = rest / k as f64;
            for j in 2..2 + k {
                q[j] = share;
                p[j] = share;
            }
        } else {
            q[1] += rest;
            p[1] = rest;
        }
    }
    let p = Distribution::from_weights(&p)?;
    let q = Distribution::from_weights(&q)?;
    let measured = tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), order)?.to_f64();
    let q0_actual = minimal_probability(&q, &p.to_weights())?;
    let tau_actual = trace_distance_classical(&p, &q)?;
    let bound = upper_bound_thm3(q0_actual, tau_actual, order)?;
    Ok(ExtremalConstruction {
        q0,
        tau,
        alpha: order.alpha(),
        attains: (measured - bound).abs() <= 1e-10,
        p_extremal: p,
        q_base: q,
        measured,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    #[test]
    fn zero_distance() {
        assert_eq!(brute_force_thm3_oracle(0.2, 0.0, ord(2.0), 4, 20).unwrap(), 0.0);
        let e = extremal_thm3_instance(0.25, 0.0, ord(2.0), 4).unwrap();
        assert_eq!(e.p_extremal.probs(), e.q_base.probs());
        assert_eq!(e.measured, 0.0);
        assert_eq!(e.bound, 0.0);
    }

    #[test]
    fn uniform_example() {
        // Direct evaluation: P = (0.45, 0.05, 0.25, 0.25) against the uniform Q.
        let e = extremal_thm3_instance(0.25, 0.2, ord(2.0), 4).unwrap();
        assert_eq!(e.q_base.probs(), &[0.25; 4]);
        let direct = (0.45f64 * 0.45 / 0.25 + 0.05 * 0.05 / 0.25 + 0.25 + 0.25) - 1.0;
        assert!((e.measured - direct).abs() < 1e-14);
        assert!((e.measured - 0.32).abs() < 1e-14);
        assert!(e.attains);
    }

    #[test]
    fn oracle_matches_bound_and_interior_approaches_it() {
        let o = ord(2.0);
        let b = upper_bound_thm3(0.25, 0.2, o).unwrap();
        assert!((brute_force_thm3_oracle(0.25, 0.2, o, 4, 20).unwrap() - b).abs() < 1e-14);
        let gaps: Vec<f64> = [20, 40, 80].iter().map(|&m| b - thm3_oracle_without_extremes(0.25, 0.2, o, 4, m).unwrap()).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] > 0.0);
        assert!(gaps[1] <= 0.55 * gaps[0] && gaps[2] <= 0.55 * gaps[1]);
    }

    #[test]
    fn upper_branch_attains_when_mass_fits() {
        let e = extremal_thm3_instance(0.1, 0.5, ord(3.0), 6).unwrap();
        assert!(e.attains, "{e:?}");
        // N = 2 with leftover mass cannot attain.
        let e = extremal_thm3_instance(0.2, 0.5, ord(2.0), 2).unwrap();
        assert!(!e.attains && e.ratio() < 1.0);
    }

    #[test]
    fn argument_checks() {
        assert!(brute_force_thm3_oracle(0.2, 0.1, ord(0.5), 4, 20).is_err());
        assert!(brute_force_thm3_oracle(0.2, 0.1, ord(2.0), 7, 20).is_err());
        assert!(brute_force_thm3_oracle(0.2, 0.1, ord(2.0), 4, 10).is_err());
        assert!(brute_force_thm3_oracle(0.2, 0.9, ord(2.0), 4, 20).is_err());
        assert!(extremal_thm3_instance(0.3, 0.1, ord(2.0), 4).is_err());
    }
}
