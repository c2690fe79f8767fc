use std::fmt;
use std::sync::Arc;

use crate::classical::{Distribution, WeightSet};
use crate::error::{domain, same_len, Error, Result};
use crate::scalar::{alpha_log_unchecked, ExtendedValue, Order};

/// Tsallis relative α-entropy of two weight vectors, `−Σ_{a>0} a ln_α(b/a)`.
pub(crate) fn tsallis_rel_of(a: &[f64], b: &[f64], order: Order) -> ExtendedValue {
    let mut total = 0.0;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai <= 0.0 {
            continue;
        }
        if bi <= 0.0 {
            if order.below_one() {
                // a^α·0^{1−α} vanishes, leaving −a/(α−1).
                total += ai / (1.0 - order.alpha());
                continue;
            }
            return ExtendedValue::Infinite;
        }
        total -= ai * alpha_log_unchecked(bi / ai, order);
    }
    ExtendedValue::Finite(total)
}

/// `Σ_{a>0,b>0} a^α b^{1−α}`.
pub(crate) fn overlap_power_sum(a: &[f64], b: &[f64], order: Order) -> f64 {
    let alpha = order.alpha();
    a.iter()
        .zip(b)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| x.powf(alpha) * y.powf(1.0 - alpha))
        .sum()
}

/// Rényi relative entropy from the Tsallis value and the overlap power sum:
/// `(α−1) R_α = ln[1 + (α−1) H_α]`.
pub(crate) fn renyi_from_tsallis(h: ExtendedValue, overlap: f64, order: Order) -> ExtendedValue {
    let Some(h) = h.finite() else {
        return ExtendedValue::Infinite;
    };
    if order.near_one() {
        return ExtendedValue::Finite(h);
    }
    if overlap <= 0.0 {
        return ExtendedValue::Infinite;
    }
    let s = order.alpha() - 1.0;
    let arg = s * h;
    if arg <= -1.0 {
        return ExtendedValue::Infinite;
    }
    ExtendedValue::Finite(arg.ln_1p() / s)
}

/// `H_α(A||B)` for positive-valued functions.
///
/// For α > 1 the value is +∞ unless `supp A ⊆ supp B`; for α < 1 indices
/// with `b = 0` contribute through the `a^α b^{1−α} = 0` convention. In the
/// α → 1 band this is the (generalized) Kullback–Leibler divergence.
pub fn tsallis_rel_entropy(a: &WeightSet, b: &WeightSet, order: Order) -> Result<ExtendedValue> {
    same_len(a.len(), b.len())?;
    Ok(tsallis_rel_of(a.weights(), b.weights(), order))
}

/// `R_α(P||Q) = −(1−α)^{-1} ln Σ p^α q^{1−α}`.
pub fn renyi_rel_entropy(p: &Distribution, q: &Distribution, order: Order) -> Result<ExtendedValue> {
    same_len(p.len(), q.len())?;
    let h = tsallis_rel_of(p.probs(), q.probs(), order);
    let overlap = overlap_power_sum(p.probs(), q.probs(), order);
    Ok(renyi_from_tsallis(h, overlap, order))
}

/// Kullback–Leibler divergence `Σ p ln(p/q)`.
pub fn relative_entropy(p: &Distribution, q: &Distribution) -> Result<ExtendedValue> {
    tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), Order::one())
}

/// Convex generator `f` of an f-divergence.
///
/// Besides `f` itself a generator knows `lim_{z→∞} f(z)/z`, which fixes the
/// contribution of indices where the reference weight vanishes.
#[derive(Clone)]
pub enum Generator {
    /// `z − 1`
    Linear,
    /// `|z − 1|`
    AbsDeviation,
    /// `z ln z`
    KullbackLeibler,
    /// `−ln z`
    ReverseKl,
    /// `f_α(z) = z^α/(α−1)`, α ≠ 1. Note `f_α(1) ≠ 0`.
    Power(Order),
    Custom {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        slope_at_infinity: f64,
    },
}

impl Generator {
    pub fn power(order: Order) -> Result<Self> {
        if order.near_one() {
            return domain("power generator needs alpha != 1");
        }
        Ok(Generator::Power(order))
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        slope_at_infinity: f64,
    ) -> Self {
        Generator::Custom { name: name.into(), f: Arc::new(f), slope_at_infinity }
    }

    /// `f(z)` for z ≥ 0; may be `+inf` at z = 0.
    pub fn eval(&self, z: f64) -> f64 {
        match self {
            Generator::Linear => z - 1.0,
            Generator::AbsDeviation => (z - 1.0).abs(),
            Generator::KullbackLeibler => {
                if z == 0.0 {
                    0.0
                } else {
                    z * z.ln()
                }
            }
            Generator::ReverseKl => -z.ln(),
            Generator::Power(o) => z.powf(o.alpha()) / (o.alpha() - 1.0),
            Generator::Custom { f, .. } => f(z),
        }
    }

    /// `lim_{z→∞} f(z)/z`, possibly `+inf`.
    pub fn slope_at_infinity(&self) -> f64 {
        match self {
            Generator::Linear | Generator::AbsDeviation => 1.0,
            Generator::KullbackLeibler => f64::INFINITY,
            Generator::ReverseKl => 0.0,
            Generator::Power(o) => {
                if o.alpha() > 1.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            Generator::Custom { slope_at_infinity, .. } => *slope_at_infinity,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Generator::Linear => "linear".into(),
            Generator::AbsDeviation => "abs-deviation".into(),
            Generator::KullbackLeibler => "kl".into(),
            Generator::ReverseKl => "reverse-kl".into(),
            Generator::Power(o) => format!("power({o})"),
            Generator::Custom { name, .. } => name.clone(),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.name())
    }
}

/// Accumulates `q·f(p/q)` terms, with the `q = 0` convention
/// `p · lim f(z)/z` for p > 0 and 0 for p = 0.
pub(crate) fn f_term(p: f64, q: f64, f: &Generator) -> Result<ExtendedValue> {
    let v = if q > 0.0 {
        q * f.eval(p / q)
    } else if p > 0.0 {
        let slope = f.slope_at_infinity();
        if slope == f64::INFINITY {
            return Ok(ExtendedValue::Infinite);
        }
        p * slope
    } else {
        0.0
    };
    if v.is_nan() || v == f64::NEG_INFINITY {
        return Err(Error::Domain(format!("generator {} undefined at p={p}, q={q}", f.name())));
    }
    ExtendedValue::from_f64(v)
}

/// Csiszár f-divergence `Σ q(x) f(p(x)/q(x))`.
pub fn f_divergence(p: &Distribution, q: &Distribution, f: &Generator) -> Result<ExtendedValue> {
    same_len(p.len(), q.len())?;
    p.probs()
        .iter()
        .zip(q.probs())
        .try_fold(ExtendedValue::ZERO, |acc, (&pi, &qi)| Ok(acc + f_term(pi, qi, f)?))
}
