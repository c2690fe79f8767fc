//! Closed-form continuity bounds and the [`BoundReport`] that pairs one with
//! a measured divergence.
//!
//! | bound | direction | order range |
//! |---|---|---|
//! | [`pinsker_lower_bound`] `κ_α θ g(τ/θ)` | lower on `H_α(A‖B)` | 0 < α < 1 |
//! | [`pinsker_series_bound`] partial sums of the same | lower | 0 < α < 1 |
//! | [`renyi_pinsker_bound`] | lower on `R_α(ρ‖σ)` | 0 < α < 1 |
//! | [`upper_bound_thm3`] minimal-probability bound | upper on `H_α(P‖Q)` | α > 1 |
//! | [`fano_bound`] | upper on `H_α(X|Y)` | α > 0 |
//! | [`fannes_bound`] | upper on `|H_α(ρ) − H_α(σ)|` | α > 0 |
//! | [`yanagi_comparison_bound`] | upper on `|H_α(ρ) − H_α(σ)|` | 0 < α < 1, `2τ ≤ α^{1/(1−α)}` |
//!
//! All evaluators go through an [`Evaluator`], which can carry a
//! [`FaultInjection`] so that the property suites can prove they detect a
//! wrong constant.

use std::fmt;

use serde::Serialize;

use crate::classical::{
    conditional_tsallis_entropy, minimal_probability, trace_distance_classical, tsallis_rel_entropy, weight_pow,
    Distribution, JointDistribution,
};
use crate::error::{domain, Result};
use crate::io::render_f64;
use crate::operator::{trace_distance_quantum, DensityOperator, PositiveOperator};
use crate::quantum::{quantum_renyi_rel_entropy, quantum_tsallis_entropy, quantum_tsallis_rel_entropy};
use crate::scalar::{alpha_log_unchecked, binary_tsallis, g_unchecked, pinsker_series_coeff, ExtendedValue, Order};

/// Default slack tolerance for [`BoundReport`].
pub const BOUND_TOL: f64 = 1e-9;

/// Round-off allowance when checking τ, P_e and trace equality against their ranges.
const RANGE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// The bound sits below the measured value.
    Lower,
    /// The bound sits above the measured value.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Satisfied,
    Violated,
    NotApplicable,
}

/// A measured quantity next to a bound on it.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub kind: String,
    pub alpha: f64,
    pub params: Vec<(String, f64)>,
    pub measured: ExtendedValue,
    pub bound: ExtendedValue,
    /// `measured − bound` for lower bounds, `bound − measured` for upper
    /// bounds; may be ±∞.
    pub slack: f64,
    pub direction: Direction,
    pub in_domain: bool,
    pub verdict: Verdict,
}

impl BoundReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        kind: &str,
        order: Order,
        params: Vec<(String, f64)>,
        measured: ExtendedValue,
        bound: ExtendedValue,
        direction: Direction,
        in_domain: bool,
        tolerance: f64,
    ) -> Self {
        let (hi, lo) = match direction {
            Direction::Lower => (measured, bound),
            Direction::Upper => (bound, measured),
        };
        let slack = match (hi, lo) {
            (ExtendedValue::Infinite, ExtendedValue::Infinite) => 0.0,
            (hi, lo) => hi.to_f64() - lo.to_f64(),
        };
        let verdict = if !in_domain {
            Verdict::NotApplicable
        } else if slack >= -tolerance {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        };
        BoundReport {
            kind: kind.to_string(),
            alpha: order.alpha(),
            params,
            measured,
            bound,
            slack,
            direction,
            in_domain,
            verdict,
        }
    }

    /// A report for inputs outside the theorem's hypotheses.
    pub fn not_applicable(kind: &str, order: Order, params: Vec<(String, f64)>, measured: ExtendedValue, direction: Direction) -> Self {
        BoundReport {
            kind: kind.to_string(),
            alpha: order.alpha(),
            params,
            measured,
            bound: ExtendedValue::Finite(f64::NAN),
            slack: f64::NAN,
            direction,
            in_domain: false,
            verdict: Verdict::NotApplicable,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.verdict != Verdict::Violated
    }

    pub const CSV_HEADER: &'static str = "kind,alpha,params,measured,bound,slack,in_domain";

    /// `kind,alpha,params,measured,bound,slack,in_domain` with params as `k=v;k=v`.
    pub fn to_csv_row(&self) -> String {
        let params = self.params.iter().map(|(k, v)| format!("{k}={}", render_f64(*v))).collect::<Vec<_>>().join(";");
        format!(
            "{},{},{},{},{},{},{}",
            self.kind,
            render_f64(self.alpha),
            params,
            self.measured,
            render_extended(self.bound),
            render_signed(self.slack),
            self.in_domain
        )
    }
}

fn render_extended(v: ExtendedValue) -> String {
    match v {
        ExtendedValue::Finite(x) if x.is_nan() => "n/a".to_string(),
        v => v.to_string(),
    }
}

fn render_signed(x: f64) -> String {
    if x.is_nan() {
        "n/a".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        render_f64(x)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "alpha: {}", render_f64(self.alpha))?;
        for (k, v) in &self.params {
            writeln!(f, "{k}: {}", render_f64(*v))?;
        }
        writeln!(f, "measured: {}", self.measured)?;
        writeln!(f, "bound: {}", render_extended(self.bound))?;
        writeln!(f, "slack: {}", render_signed(self.slack))?;
        writeln!(f, "satisfied: {}", match self.verdict {
            Verdict::Satisfied => "true",
            Verdict::Violated => "false",
            Verdict::NotApplicable => "not-applicable",
        })?;
        write!(f, "in_domain: {}", self.in_domain)
    }
}

/// Deliberate corruption of one ingredient, used for mutation testing of the
/// property suites. Never set outside tests and smoke runs.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub enum FaultInjection {
    #[default]
    None,
    /// Replace κ_α by a constant.
    Kappa(f64),
    /// Replace the n-th series coefficient.
    SeriesCoefficient { n: usize, value: f64 },
    /// Swap the two branches of the minimal-probability bound.
    Thm3BranchFlipped,
}

/// Bound evaluator. `Evaluator::default()` computes the true bounds.
#[derive(Debug, Clone, Copy, Default)]
pub struct Evaluator {
    pub fault: FaultInjection,
}

fn require_sub_unit(order: Order, what: &str) -> Result<()> {
    if order.alpha() > 0.0 && order.alpha() < 1.0 && !order.near_one() {
        Ok(())
    } else {
        domain(format!("{what} requires 0 < alpha < 1, got {order}"))
    }
}

fn require_super_unit(order: Order, what: &str) -> Result<()> {
    if order.above_one() {
        Ok(())
    } else {
        domain(format!("{what} requires alpha > 1, got {order}"))
    }
}

fn unit_range(name: &str, x: f64, hi: f64) -> Result<f64> {
    if x.is_nan() || x < -RANGE_EPS || x > hi + RANGE_EPS {
        domain(format!("{name} = {x} outside [0, {hi}]"))
    } else {
        Ok(x.clamp(0.0, hi))
    }
}

impl Evaluator {
    pub fn with_fault(fault: FaultInjection) -> Self {
        Evaluator { fault }
    }

    pub fn kappa(&self, order: Order) -> Result<f64> {
        let k = crate::scalar::kappa(order)?;
        Ok(match self.fault {
            FaultInjection::Kappa(v) => v,
            _ => k,
        })
    }

    pub fn series_coeff(&self, n: usize) -> Result<f64> {
        let c = pinsker_series_coeff(n)?;
        Ok(match self.fault {
            FaultInjection::SeriesCoefficient { n: m, value } if m == n => value,
            _ => c,
        })
    }

    fn pinsker_args(&self, theta: f64, tau: f64, order: Order) -> Result<f64> {
        require_sub_unit(order, "Pinsker bound")?;
        if !(theta > 0.0) {
            return domain(format!("theta must be positive, got {theta}"));
        }
        unit_range("tau", tau, theta)
    }

    /// `κ_α θ g(τ/θ)`.
    pub fn pinsker_lower_bound(&self, theta: f64, tau: f64, order: Order) -> Result<f64> {
        let tau = self.pinsker_args(theta, tau, order)?;
        Ok(self.kappa(order)? * theta * g_unchecked(tau / theta))
    }

    /// `κ_α Σ_{n ≤ terms} c_n τ^{2n}/θ^{2n−1}`.
    pub fn pinsker_series_bound(&self, theta: f64, tau: f64, order: Order, n_terms: usize) -> Result<f64> {
        let tau = self.pinsker_args(theta, tau, order)?;
        if n_terms < 1 {
            return domain("series bound needs at least one term");
        }
        let x = (tau / theta).powi(2);
        let mut sum = 0.0;
        let mut xn = 1.0;
        for n in 1..=n_terms {
            xn *= x;
            sum += self.series_coeff(n)? * xn;
        }
        Ok(self.kappa(order)? * theta * sum)
    }

    /// `(α−1)^{-1} ln[1 − (1−α) κ_α g(τ)]` (normalized states).
    pub fn renyi_pinsker_bound(&self, tau: f64, order: Order) -> Result<ExtendedValue> {
        let tau = self.pinsker_args(1.0, tau, order)?;
        let a = order.alpha();
        let arg = (1.0 - a) * self.kappa(order)? * g_unchecked(tau);
        if arg >= 1.0 {
            return Ok(ExtendedValue::Infinite);
        }
        Ok(ExtendedValue::Finite((-arg).ln_1p() / (a - 1.0)))
    }

    fn thm3_args(&self, q0: f64, tau: f64, order: Order) -> Result<f64> {
        require_super_unit(order, "minimal-probability bound")?;
        if !(q0 > 0.0 && q0 <= 1.0) {
            return domain(format!("q0 must lie in (0, 1], got {q0}"));
        }
        unit_range("tau", tau, 1.0 - q0)
    }

    /// Upper bound on `H_α(P‖Q)` from the minimal probability `q0` and `τ = D(P, Q)`.
    pub fn upper_bound_thm3(&self, q0: f64, tau: f64, order: Order) -> Result<f64> {
        let tau = self.thm3_args(q0, tau, order)?;
        let a = order.alpha();
        let near_branch = match self.fault {
            FaultInjection::Thm3BranchFlipped => tau > q0,
            _ => tau <= q0,
        };
        // With x = τ/q0, (q0 ± τ)^α q0^{1−α} = q0(1 ± x)^α; the powers minus
        // one are taken through expm1 so the bound vanishes exactly at τ = 0.
        let x = tau / q0;
        let v = if near_branch {
            q0 * ((a * x.ln_1p()).exp_m1() + (a * (-x).ln_1p()).exp_m1()) / (a - 1.0)
        } else {
            (q0 + tau) * ((a - 1.0) * x.ln_1p()).exp_m1() / (a - 1.0)
        };
        Ok(v)
    }

    /// The same bound written with α-logarithms.
    pub fn upper_bound_thm3_log_form(&self, q0: f64, tau: f64, order: Order) -> Result<f64> {
        let tau = self.thm3_args(q0, tau, order)?;
        let up = -(q0 + tau) * alpha_log_unchecked(q0 / (q0 + tau), order);
        if tau < q0 {
            Ok(up - (q0 - tau) * alpha_log_unchecked(q0 / (q0 - tau), order))
        } else {
            // At τ = q0 the second term is 0·ln_α(∞) = 0 for α > 1.
            Ok(up)
        }
    }

    /// Fano-type bound on `H_α(X|Y)` from the error probability.
    pub fn fano_bound(&self, pe: f64, n: usize, order: Order) -> Result<f64> {
        if n < 2 {
            return domain(format!("Fano bound needs an alphabet of at least 2, got {n}"));
        }
        let pe = unit_range("P_e", pe, 1.0)?;
        let nf = n as f64;
        if order.near_one() {
            return Ok(binary_tsallis(pe, order)? + pe * (nf - 1.0).ln());
        }
        let a = order.alpha();
        let pa = pe.powf(a);
        if a < 1.0 {
            Ok((pa - a * pe) / (1.0 - a) + pa * alpha_log_unchecked(nf * (nf - 1.0), order))
        } else {
            Ok(binary_tsallis(pe, order)? + pa * alpha_log_unchecked(nf - 1.0, order))
        }
    }

    /// Fannes-type bound on `|H_α(ρ) − H_α(σ)|` from `τ = D(ρ, σ)`.
    pub fn fannes_bound(&self, tau: f64, d: usize, order: Order) -> Result<f64> {
        if d < 2 {
            return domain(format!("Fannes bound needs dimension at least 2, got {d}"));
        }
        let df = d as f64;
        let a = order.alpha();
        if a < 1.0 && !order.near_one() {
            let tau = unit_range("tau", tau, 1.0)?;
            let ta = tau.powf(a);
            return Ok((ta - a * tau) / (1.0 - a) + ta * alpha_log_unchecked(df * (df - 1.0), order));
        }
        let hi = df / (df + 1.0);
        if tau.is_nan() || tau < -RANGE_EPS || tau > hi + RANGE_EPS {
            return domain(format!("for alpha >= 1 the Fannes bound holds for tau in [0, d/(d+1)] = [0, {hi}], got tau = {tau}"));
        }
        let tau = tau.clamp(0.0, hi);
        let tail = if order.near_one() { tau * (df - 1.0).ln() } else { tau.powf(a) * alpha_log_unchecked(df - 1.0, order) };
        Ok(binary_tsallis(tau, order)? + tail)
    }
}

/// `κ_α θ g(τ/θ)`, the Pinsker-type lower bound for `tr A = tr B = θ`.
pub fn pinsker_lower_bound(theta: f64, tau: f64, order: Order) -> Result<f64> {
    Evaluator::default().pinsker_lower_bound(theta, tau, order)
}

/// First `n_terms` terms of the power series of [`pinsker_lower_bound`].
pub fn pinsker_series_bound(theta: f64, tau: f64, order: Order, n_terms: usize) -> Result<f64> {
    Evaluator::default().pinsker_series_bound(theta, tau, order, n_terms)
}

/// Rényi-form Pinsker bound for normalized states.
pub fn renyi_pinsker_bound(tau: f64, order: Order) -> Result<ExtendedValue> {
    Evaluator::default().renyi_pinsker_bound(tau, order)
}

/// Minimal-probability upper bound on `H_α(P‖Q)`, α > 1.
pub fn upper_bound_thm3(q0: f64, tau: f64, order: Order) -> Result<f64> {
    Evaluator::default().upper_bound_thm3(q0, tau, order)
}

/// [`upper_bound_thm3`] evaluated through α-logarithms.
pub fn upper_bound_thm3_log_form(q0: f64, tau: f64, order: Order) -> Result<f64> {
    Evaluator::default().upper_bound_thm3_log_form(q0, tau, order)
}

/// Fano-type bound on the conditional Tsallis entropy.
pub fn fano_bound(pe: f64, n: usize, order: Order) -> Result<f64> {
    Evaluator::default().fano_bound(pe, n, order)
}

/// The α < 1 Fano bound assembled term by term, as
/// `(N^{1−α}P_e^α − αP_e)/(1−α) + N^{1−α}P_e^α ln_α(N−1)`.
pub fn fano_bound_assembled(pe: f64, n: usize, order: Order) -> Result<f64> {
    require_sub_unit(order, "assembled Fano bound")?;
    if n < 2 {
        return domain("alphabet of at least 2 required");
    }
    let pe = unit_range("P_e", pe, 1.0)?;
    let a = order.alpha();
    let nf = n as f64;
    let lead = nf.powf(1.0 - a) * pe.powf(a);
    Ok((lead - a * pe) / (1.0 - a) + lead * alpha_log_unchecked(nf - 1.0, order))
}

/// Fannes-type continuity bound on Tsallis entropies.
pub fn fannes_bound(tau: f64, d: usize, order: Order) -> Result<f64> {
    Evaluator::default().fannes_bound(tau, d, order)
}

/// The earlier bound `((2τ)^α − 2τ)/(1−α) + (2τ)^α ln_α d`, valid for
/// `2τ ≤ α^{1/(1−α)}`. Returns `None` outside that range.
pub fn yanagi_comparison_bound(tau: f64, d: usize, order: Order) -> Result<Option<f64>> {
    require_sub_unit(order, "comparison bound")?;
    if d < 1 {
        return domain("dimension must be positive");
    }
    let tau = unit_range("tau", tau, 1.0)?;
    let a = order.alpha();
    let t2 = 2.0 * tau;
    if t2 > yanagi_range(order) {
        return Ok(None);
    }
    let ta = t2.powf(a);
    Ok(Some((ta - t2) / (1.0 - a) + ta * alpha_log_unchecked(d as f64, order)))
}

/// `α^{1/(1−α)}`, the largest admissible `‖ρ − σ‖₁` for [`yanagi_comparison_bound`].
pub fn yanagi_range(order: Order) -> f64 {
    let a = order.alpha();
    a.powf(1.0 / (1.0 - a))
}

/// `Σ_y p_Y^α h_α(q(e|y)) + ln_α(N−1) Σ_y p_Y^α q(e|y)^α`.
pub fn fano_intermediate(j: &JointDistribution, order: Order) -> Result<f64> {
    let n = j.alphabet();
    if n < 2 {
        return domain("Fano bound needs an alphabet of at least 2");
    }
    let py = j.marginal_y();
    let mut binary = 0.0;
    let mut tail = 0.0;
    for (y, &p) in py.iter().enumerate() {
        let Some(qe) = j.error_given(y) else { continue };
        let w = weight_pow(p, order);
        binary += w * binary_tsallis(qe, order)?;
        tail += w * weight_pow(qe, order);
    }
    Ok(binary + alpha_log_unchecked((n - 1) as f64, order) * tail)
}

fn equal_traces(a: &PositiveOperator, b: &PositiveOperator) -> Option<f64> {
    let (ta, tb) = (a.trace(), b.trace());
    ((ta - tb).abs() <= RANGE_EPS * ta.max(tb).max(1.0) && ta > 0.0).then_some(0.5 * (ta + tb))
}

impl Evaluator {
    /// Lower bound `κ_α θ g(τ/θ)` against `H_α(A‖B)` for equal-trace A, B.
    pub fn check_pinsker(&self, a: &PositiveOperator, b: &PositiveOperator, order: Order, tol: f64) -> Result<BoundReport> {
        let measured = quantum_tsallis_rel_entropy(a, b, order)?;
        let tau = trace_distance_quantum(a, b)?;
        let theta = equal_traces(a, b);
        let params = vec![("theta".into(), theta.unwrap_or(a.trace())), ("tau".into(), tau)];
        match theta {
            Some(theta) if require_sub_unit(order, "").is_ok() => {
                let bound = self.pinsker_lower_bound(theta, tau.min(theta), order)?;
                Ok(BoundReport::new("pinsker", order, params, measured, ExtendedValue::Finite(bound), Direction::Lower, true, tol))
            }
            _ => Ok(BoundReport::not_applicable("pinsker", order, params, measured, Direction::Lower)),
        }
    }

    pub fn check_pinsker_series(&self, a: &PositiveOperator, b: &PositiveOperator, order: Order, n_terms: usize, tol: f64) -> Result<BoundReport> {
        let measured = quantum_tsallis_rel_entropy(a, b, order)?;
        let tau = trace_distance_quantum(a, b)?;
        let theta = equal_traces(a, b);
        let params = vec![("theta".into(), theta.unwrap_or(a.trace())), ("tau".into(), tau), ("terms".into(), n_terms as f64)];
        match theta {
            Some(theta) if require_sub_unit(order, "").is_ok() && n_terms >= 1 => {
                let bound = self.pinsker_series_bound(theta, tau.min(theta), order, n_terms)?;
                Ok(BoundReport::new("pinsker-series", order, params, measured, ExtendedValue::Finite(bound), Direction::Lower, true, tol))
            }
            _ => Ok(BoundReport::not_applicable("pinsker-series", order, params, measured, Direction::Lower)),
        }
    }

    pub fn check_renyi_pinsker(&self, rho: &DensityOperator, sigma: &DensityOperator, order: Order, tol: f64) -> Result<BoundReport> {
        let measured = quantum_renyi_rel_entropy(rho, sigma, order)?;
        let tau = trace_distance_quantum(rho, sigma)?.min(1.0);
        let params = vec![("tau".into(), tau)];
        if require_sub_unit(order, "").is_err() {
            return Ok(BoundReport::not_applicable("renyi-pinsker", order, params, measured, Direction::Lower));
        }
        let bound = self.renyi_pinsker_bound(tau, order)?;
        Ok(BoundReport::new("renyi-pinsker", order, params, measured, bound, Direction::Lower, true, tol))
    }

    /// Upper bound on `H_α(P‖Q)`; in domain when α > 1, `supp P ⊆ supp Q`
    /// and `q0 > 0`.
    pub fn check_thm3(&self, p: &Distribution, q: &Distribution, order: Order, tol: f64) -> Result<BoundReport> {
        let measured = tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), order)?;
        let tau = trace_distance_classical(p, q)?;
        let q0 = minimal_probability(q, &p.to_weights())?;
        let params = vec![("q0".into(), q0), ("tau".into(), tau)];
        // The bound needs Q to put no mass outside the support of P.
        let q_inside = p.probs().iter().zip(q.probs()).all(|(pj, qj)| *pj > 0.0 || *qj == 0.0);
        if !order.above_one() || !(q0 > 0.0) || !q_inside || tau > 1.0 - q0 + RANGE_EPS {
            return Ok(BoundReport::not_applicable("thm3-upper", order, params, measured, Direction::Upper));
        }
        let bound = self.upper_bound_thm3(q0, tau, order)?;
        Ok(BoundReport::new("thm3-upper", order, params, measured, ExtendedValue::Finite(bound), Direction::Upper, true, tol))
    }

    pub fn check_fano(&self, j: &JointDistribution, order: Order, tol: f64) -> Result<BoundReport> {
        let measured = ExtendedValue::Finite(conditional_tsallis_entropy(j, order));
        let pe = crate::classical::error_probability(j);
        let n = j.alphabet();
        let params = vec![("pe".into(), pe), ("n".into(), n as f64)];
        if n < 2 {
            return Ok(BoundReport::not_applicable("fano", order, params, measured, Direction::Upper));
        }
        let bound = self.fano_bound(pe, n, order)?;
        Ok(BoundReport::new("fano", order, params, measured, ExtendedValue::Finite(bound), Direction::Upper, true, tol))
    }

    pub fn check_fannes(&self, rho: &DensityOperator, sigma: &DensityOperator, order: Order, tol: f64) -> Result<BoundReport> {
        let measured = ExtendedValue::Finite((quantum_tsallis_entropy(rho, order) - quantum_tsallis_entropy(sigma, order)).abs());
        let tau = trace_distance_quantum(rho, sigma)?.min(1.0);
        let d = rho.dim();
        let params = vec![("tau".into(), tau), ("dim".into(), d as f64)];
        match self.fannes_bound(tau, d, order) {
            Ok(bound) => Ok(BoundReport::new("fannes", order, params, measured, ExtendedValue::Finite(bound), Direction::Upper, true, tol)),
            Err(_) => Ok(BoundReport::not_applicable("fannes", order, params, measured, Direction::Upper)),
        }
    }

    pub fn check_yanagi(&self, rho: &DensityOperator, sigma: &DensityOperator, order: Order, tol: f64) -> Result<BoundReport> {
        let measured = ExtendedValue::Finite((quantum_tsallis_entropy(rho, order) - quantum_tsallis_entropy(sigma, order)).abs());
        let tau = trace_distance_quantum(rho, sigma)?.min(1.0);
        let d = rho.dim();
        let params = vec![("tau".into(), tau), ("dim".into(), d as f64)];
        let bound = if require_sub_unit(order, "").is_ok() { yanagi_comparison_bound(tau, d, order)? } else { None };
        match bound {
            Some(b) => Ok(BoundReport::new("yanagi", order, params, measured, ExtendedValue::Finite(b), Direction::Upper, true, tol)),
            None => Ok(BoundReport::not_applicable("yanagi", order, params, measured, Direction::Upper)),
        }
    }
}
