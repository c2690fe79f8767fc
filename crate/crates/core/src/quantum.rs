//! Quantum Tsallis/Rényi entropies and relative entropies, and the quantum
//! f-divergence `⟨B^{1/2}, f(L_A R_B^{-1}) B^{1/2}⟩`.
//!
//! Every two-operator quantity is evaluated in the product of the two
//! eigenbases: with `A = Σ a_i |a_i⟩⟨a_i|`, `B = Σ b_j |b_j⟩⟨b_j|` and
//! overlaps `w_ij = |⟨a_i|b_j⟩|²`, one has `tr(P_a B^{1/2} Q_b B^{1/2}) = b w`,
//! so the superoperator never has to be formed.

use nalgebra::DMatrix;

use crate::classical::{f_term, renyi_from_tsallis, renyi_of, tsallis_of, Generator};
use crate::error::{domain, same_len, Error, Result};
use crate::operator::{
    coarse_grain_two_point, jordan_projectors, DensityOperator, PositiveOperator, OPERATOR_SUPPORT_CUTOFF,
};
use crate::scalar::{alpha_log_unchecked, ExtendedValue, Order};

/// `supp A ⊆ supp B` is decided by `tr((I − B⁰) A) ≤ KERNEL_TOL · tr(A)`.
pub const KERNEL_TOL: f64 = 1e-12;

/// Generator of a quantum f-divergence, with the caller's assertion of
/// operator convexity (needed for monotonicity, never checked).
#[derive(Debug, Clone)]
pub struct FDivergenceSpec {
    pub generator: Generator,
    pub operator_convex: bool,
}

impl FDivergenceSpec {
    pub fn new(generator: Generator, operator_convex: bool) -> Self {
        FDivergenceSpec { generator, operator_convex }
    }

    /// `f_α(z) = z^α/(α−1)`, operator convex for α ∈ (0, 1) ∪ (1, 2].
    pub fn power(order: Order) -> Result<Self> {
        let a = order.alpha();
        Ok(FDivergenceSpec { generator: Generator::power(order)?, operator_convex: a <= 2.0 })
    }

    /// |f(1)| ≤ 1e−12. The power generators do not satisfy this.
    pub fn is_normalized(&self) -> bool {
        self.generator.eval(1.0).abs() <= 1e-12
    }
}

/// Eigenvalues clamped at the support cutoff, with overlap weights.
struct PairSpectra {
    a: Vec<f64>,
    b: Vec<f64>,
    /// `w[i][j] = |⟨a_i|b_j⟩|²`, row-major `d × d`.
    w: Vec<f64>,
    d: usize,
}

impl PairSpectra {
    fn new(a: &PositiveOperator, b: &PositiveOperator) -> Result<Self> {
        same_len(a.dim(), b.dim())?;
        let d = a.dim();
        let sa = a.spectral();
        let sb = b.spectral();
        let overlap: DMatrix<_> = sa.vectors().adjoint() * sb.vectors();
        let w = (0..d * d).map(|k| overlap[(k / d, k % d)].norm_sqr()).collect();
        Ok(PairSpectra { a: clamp_support(sa.eigenvalues()), b: clamp_support(sb.eigenvalues()), w, d })
    }

    #[inline]
    fn w(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.d + j]
    }

    /// `tr((I − B⁰) A)`.
    fn leak(&self) -> f64 {
        let mut leak = 0.0;
        for i in 0..self.d {
            if self.a[i] <= 0.0 {
                continue;
            }
            let inside: f64 = (0..self.d).filter(|&j| self.b[j] > 0.0).map(|j| self.w(i, j)).sum();
            leak += self.a[i] * (1.0 - inside).max(0.0);
        }
        leak
    }

    fn support_included(&self) -> bool {
        let trace: f64 = self.a.iter().sum();
        self.leak() <= KERNEL_TOL * trace
    }

    fn tsallis(&self, order: Order) -> ExtendedValue {
        let included = self.support_included();
        if !order.below_one() && !included {
            return ExtendedValue::Infinite;
        }
        let mut total = 0.0;
        for i in 0..self.d {
            let ai = self.a[i];
            if ai <= 0.0 {
                continue;
            }
            for j in 0..self.d {
                let bj = self.b[j];
                if bj <= 0.0 {
                    continue;
                }
                let w = self.w(i, j);
                if w == 0.0 {
                    continue;
                }
                total -= w * ai * alpha_log_unchecked(bj / ai, order);
            }
        }
        if !order.near_one() {
            // Mass of A outside supp B contributes tr((I − B⁰)A)/(1 − α).
            total += self.leak() / (1.0 - order.alpha());
        }
        ExtendedValue::Finite(total)
    }

    /// `tr(A^α B^{1−α})` on supports.
    fn power_trace(&self, order: Order) -> f64 {
        let alpha = order.alpha();
        let mut total = 0.0;
        for i in 0..self.d {
            if self.a[i] <= 0.0 {
                continue;
            }
            let ai = self.a[i].powf(alpha);
            for j in 0..self.d {
                if self.b[j] > 0.0 {
                    total += self.w(i, j) * ai * self.b[j].powf(1.0 - alpha);
                }
            }
        }
        total
    }

    /// `Σ_i Σ_{j: b_j > 0} b_j f(a_i/b_j) w_ij`, with `b` shifted by `shift`.
    fn f_divergence(&self, f: &Generator, shift: f64) -> Result<ExtendedValue> {
        let mut total = ExtendedValue::ZERO;
        for i in 0..self.d {
            for j in 0..self.d {
                let bj = self.b[j] + shift;
                let w = self.w(i, j);
                if bj <= 0.0 || w == 0.0 {
                    continue;
                }
                total = total + f_term(self.a[i], bj, f)?.scale(w);
            }
        }
        Ok(total)
    }
}

fn clamp_support(eigenvalues: &[f64]) -> Vec<f64> {
    let max = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let floor = OPERATOR_SUPPORT_CUTOFF * max;
    eigenvalues.iter().map(|&l| if l > floor { l } else { 0.0 }).collect()
}

/// `H_α(ρ) = (1−α)^{-1}(tr ρ^α − 1)`; von Neumann entropy in the limit band.
pub fn quantum_tsallis_entropy(rho: &DensityOperator, order: Order) -> f64 {
    tsallis_of(&clamp_support(rho.spectral().eigenvalues()), order)
}

/// `R_α(ρ) = (1−α)^{-1} ln tr ρ^α`.
pub fn quantum_renyi_entropy(rho: &DensityOperator, order: Order) -> f64 {
    renyi_of(&clamp_support(rho.spectral().eigenvalues()), order)
}

/// Umegaki relative entropy `tr(ρ ln ρ − ρ ln σ)`, +∞ unless `supp ρ ⊆ supp σ`.
pub fn quantum_relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<ExtendedValue> {
    quantum_tsallis_rel_entropy(rho, sigma, Order::one())
}

/// Tsallis relative α-entropy of positive operators.
///
/// For α > 1 (and in the α → 1 band) the value is +∞ unless
/// `ker B ⊆ ker A`; for 0 < α < 1 it is always finite.
pub fn quantum_tsallis_rel_entropy(a: &PositiveOperator, b: &PositiveOperator, order: Order) -> Result<ExtendedValue> {
    Ok(PairSpectra::new(a, b)?.tsallis(order))
}

/// `R_α(ρ||σ) = −(1−α)^{-1} ln tr(ρ^α σ^{1−α})`.
pub fn quantum_renyi_rel_entropy(rho: &DensityOperator, sigma: &DensityOperator, order: Order) -> Result<ExtendedValue> {
    let pair = PairSpectra::new(rho, sigma)?;
    let h = pair.tsallis(order);
    Ok(renyi_from_tsallis(h, pair.power_trace(order), order))
}

/// `tr(A^α B^{1−α})` with powers on supports.
pub fn power_trace(a: &PositiveOperator, b: &PositiveOperator, order: Order) -> Result<f64> {
    Ok(PairSpectra::new(a, b)?.power_trace(order))
}

/// Direct evaluation of the quantum f-divergence; requires `ker B ⊆ ker A`.
///
/// When the kernel condition fails this returns a domain error and the
/// ε-regularized [`quantum_f_divergence_limit`] applies instead.
pub fn quantum_f_divergence(a: &PositiveOperator, b: &PositiveOperator, spec: &FDivergenceSpec) -> Result<ExtendedValue> {
    let pair = PairSpectra::new(a, b)?;
    if !pair.support_included() {
        return domain("ker B is not contained in ker A; use quantum_f_divergence_limit");
    }
    pair.f_divergence(&spec.generator, 0.0)
}

/// First and last exponent of the regularization schedule `ε_k = 2^{−k}`.
pub const LIMIT_SCHEDULE: (i32, i32) = (4, 40);
/// Relative step below which the sequence counts as settled.
pub const LIMIT_TOL: f64 = 1e-8;
/// Values beyond this are reported as +∞.
pub const LIMIT_BLOWUP: f64 = 1e12;

/// `lim_{ε↘0} S_f(A || B + εI)` along `ε_k = 2^{−k}`, k = 4..40.
///
/// Returns the limit once two successive steps fall below `1e−8·(1+|v|)`
/// (refined by Aitken's Δ²), +∞ for a monotonically diverging sequence, and
/// [`Error::NumericalFailure`] for anything else.
pub fn quantum_f_divergence_limit(a: &PositiveOperator, b: &PositiveOperator, spec: &FDivergenceSpec) -> Result<ExtendedValue> {
    let pair = PairSpectra::new(a, b)?;
    let (first, last) = LIMIT_SCHEDULE;
    let mut values: Vec<f64> = Vec::with_capacity((last - first + 1) as usize);
    let mut settled = 0;
    for k in first..=last {
        let eps = (2.0f64).powi(-k);
        let v = match pair.f_divergence(&spec.generator, eps)? {
            ExtendedValue::Infinite => return Ok(ExtendedValue::Infinite),
            ExtendedValue::Finite(v) => v,
        };
        if v > LIMIT_BLOWUP && increasing_tail(&values, v) {
            return Ok(ExtendedValue::Infinite);
        }
        if let Some(&prev) = values.last() {
            if (v - prev).abs() < LIMIT_TOL * (1.0 + v.abs()) {
                settled += 1;
            } else {
                settled = 0;
            }
        }
        values.push(v);
        if settled >= 2 {
            return Ok(ExtendedValue::Finite(aitken(&values)));
        }
    }
    classify_tail(&values)
}

fn increasing_tail(values: &[f64], next: f64) -> bool {
    let tail = &values[values.len().saturating_sub(3)..];
    tail.windows(2).all(|w| w[1] > w[0]) && tail.last().is_none_or(|&l| next > l)
}

/// Aitken extrapolation of the last three terms, falling back to the last term.
fn aitken(values: &[f64]) -> f64 {
    let n = values.len();
    let last = values[n - 1];
    if n < 3 {
        return last;
    }
    let d1 = values[n - 2] - values[n - 3];
    let d2 = last - values[n - 2];
    if d1 == 0.0 || d2 == 0.0 {
        return last;
    }
    let r = d2 / d1;
    if !(r > 0.0 && r < 1.0) {
        return last;
    }
    last + d2 * r / (1.0 - r)
}

/// Decides an unsettled sequence: steady growth means +∞, a stable geometric
/// tail is extrapolated, everything else is a failure.
fn classify_tail(values: &[f64]) -> Result<ExtendedValue> {
    let n = values.len();
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &diffs[diffs.len() - 4..];
    let ratios: Vec<f64> = tail.windows(2).map(|w| w[1] / w[0]).collect();
    if tail.iter().all(|d| *d > 0.0) && ratios.iter().all(|r| *r >= 1.0 - 1e-3) {
        return Ok(ExtendedValue::Infinite);
    }
    let spread = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let r = ratios[ratios.len() - 1];
    if r > 0.0 && r < 1.0 - 1e-3 && spread < 1e-3 {
        return Ok(ExtendedValue::Finite(aitken(values)));
    }
    Err(Error::NumericalFailure(format!(
        "ε-regularized f-divergence did not settle (last value {}, last step {})",
        values[n - 1],
        diffs[diffs.len() - 1]
    )))
}

/// Two-point classical f-divergence of the Jordan coarse graining
/// `u'± = tr(Π± A)`, `v'± = tr(Π± B)`; a lower bound on the quantum value for
/// operator convex `f`.
pub fn theorem1_classical_floor(a: &PositiveOperator, b: &PositiveOperator, spec: &FDivergenceSpec) -> Result<ExtendedValue> {
    let (plus, minus) = jordan_projectors(a, b)?;
    let (u_plus, u_minus) = coarse_grain_two_point(a, &plus, &minus)?;
    let (v_plus, v_minus) = coarse_grain_two_point(b, &plus, &minus)?;
    Ok(f_term(u_plus.max(0.0), v_plus.max(0.0), &spec.generator)?
        + f_term(u_minus.max(0.0), v_minus.max(0.0), &spec.generator)?)
}
