//! Scalar kernel: the α-logarithm and the handful of one-dimensional
//! functions every bound is assembled from.
//!
//! All functions are pure. Near α = 1 the α-deformed quantities are evaluated
//! through `exp_m1`/`ln_1p` so that no digits are lost to cancellation, and
//! inside the band |α − 1| < [`NEAR_ONE_BAND`] they switch to the natural-log
//! limit outright.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Orders closer than this to 1 are treated as the Shannon / von Neumann limit.
pub const NEAR_ONE_BAND: f64 = 1e-6;

/// Entropic order α > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Order(f64);

impl Order {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Order(alpha))
        } else {
            domain(format!("order must be a positive finite real, got {alpha}"))
        }
    }

    /// The Shannon order α = 1.
    pub const fn one() -> Self {
        Order(1.0)
    }

    #[inline]
    pub fn alpha(self) -> f64 {
        self.0
    }

    /// True when |α − 1| < 1e−6.
    #[inline]
    pub fn near_one(self) -> bool {
        (self.0 - 1.0).abs() < NEAR_ONE_BAND
    }

    /// 0 < α < 1 and not in the limit band.
    #[inline]
    pub fn below_one(self) -> bool {
        self.0 < 1.0 && !self.near_one()
    }

    /// α > 1 and not in the limit band.
    #[inline]
    pub fn above_one(self) -> bool {
        self.0 > 1.0 && !self.near_one()
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Order::new(alpha)
    }
}

impl From<Order> for f64 {
    fn from(order: Order) -> f64 {
        order.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite real or +∞. There is no −∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedValue {
    Finite(f64),
    Infinite,
}

impl ExtendedValue {
    pub const ZERO: ExtendedValue = ExtendedValue::Finite(0.0);

    /// Maps `+inf` to [`ExtendedValue::Infinite`]. NaN and −∞ are rejected.
    pub fn from_f64(x: f64) -> Result<Self> {
        if x.is_nan() || x == f64::NEG_INFINITY {
            Err(Error::NumericalFailure(format!("{x} is not an extended value")))
        } else if x == f64::INFINITY {
            Ok(ExtendedValue::Infinite)
        } else {
            Ok(ExtendedValue::Finite(x))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    /// The value as an `f64`, with +∞ mapped to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedValue::Finite(x) => x,
            ExtendedValue::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedValue::Finite(x) => Some(x),
            ExtendedValue::Infinite => None,
        }
    }

    /// Multiplication by a scalar λ ≥ 0. `0 · ∞` is taken as 0.
    pub fn scale(self, lambda: f64) -> Self {
        debug_assert!(lambda >= 0.0);
        match self {
            ExtendedValue::Finite(x) => ExtendedValue::Finite(lambda * x),
            ExtendedValue::Infinite if lambda == 0.0 => ExtendedValue::ZERO,
            ExtendedValue::Infinite => ExtendedValue::Infinite,
        }
    }

    /// Applies `f` to a finite value; +∞ is passed through.
    pub fn map_finite(self, f: impl FnOnce(f64) -> f64) -> Self {
        match self {
            ExtendedValue::Finite(x) => ExtendedValue::Finite(f(x)),
            ExtendedValue::Infinite => ExtendedValue::Infinite,
        }
    }
}

impl From<f64> for ExtendedValue {
    /// Panics on NaN or −∞; use [`ExtendedValue::from_f64`] for untrusted input.
    fn from(x: f64) -> Self {
        ExtendedValue::from_f64(x).expect("finite or +inf")
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.partial_cmp(b),
            (ExtendedValue::Finite(_), ExtendedValue::Infinite) => Some(Ordering::Less),
            (ExtendedValue::Infinite, ExtendedValue::Finite(_)) => Some(Ordering::Greater),
            (ExtendedValue::Infinite, ExtendedValue::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl Add for ExtendedValue {
    type Output = ExtendedValue;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => ExtendedValue::Finite(a + b),
            _ => ExtendedValue::Infinite,
        }
    }
}

impl Add<f64> for ExtendedValue {
    type Output = ExtendedValue;

    fn add(self, rhs: f64) -> Self {
        self + ExtendedValue::Finite(rhs)
    }
}

impl Mul<f64> for ExtendedValue {
    type Output = ExtendedValue;

    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(x) => write!(f, "{}", crate::io::render_f64(*x)),
            ExtendedValue::Infinite => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtendedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedValue::Finite(x) => s.serialize_f64(*x),
            ExtendedValue::Infinite => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => ExtendedValue::from_f64(x).map_err(serde::de::Error::custom),
            Raw::Str(s) if s == "+inf" || s == "inf" => Ok(ExtendedValue::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad extended value {s:?}"))),
        }
    }
}

/// The α-logarithm `(z^{1−α} − 1)/(1 − α)`, or `ln z` in the limit band.
pub fn alpha_log(z: f64, order: Order) -> Result<f64> {
    if !(z > 0.0) {
        return domain(format!("alpha_log requires z > 0, got {z}"));
    }
    Ok(alpha_log_unchecked(z, order))
}

/// [`alpha_log`] without the domain check; `z` must be positive.
#[inline]
pub(crate) fn alpha_log_unchecked(z: f64, order: Order) -> f64 {
    let ln = z.ln();
    if order.near_one() {
        return ln;
    }
    let s = 1.0 - order.alpha();
    (s * ln).exp_m1() / s
}

/// `−p^α ln_α p`, the contribution of one probability to a Tsallis entropy.
/// Zero at p = 0.
#[inline]
pub(crate) fn tsallis_term(p: f64, order: Order) -> f64 {
    if p <= 0.0 {
        0.0
    } else if order.near_one() {
        -p * p.ln()
    } else {
        -p.powf(order.alpha()) * alpha_log_unchecked(p, order)
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        domain(format!("{name} must lie in [0, 1], got {x}"))
    }
}

/// Binary Tsallis entropy `h_α(u) = −u^α ln_α u − (1−u)^α ln_α(1−u)`.
pub fn binary_tsallis(u: f64, order: Order) -> Result<f64> {
    check_unit("u", u)?;
    Ok(tsallis_term(u, order) + tsallis_term(1.0 - u, order))
}

/// `g(t) = 1 − sqrt(1 − t²)`.
pub fn g_of_t(t: f64) -> Result<f64> {
    check_unit("t", t)?;
    Ok(g_unchecked(t))
}

#[inline]
pub(crate) fn g_unchecked(t: f64) -> f64 {
    // t² / (1 + sqrt(1 − t²)) is the cancellation-free form.
    let t2 = t * t;
    t2 / (1.0 + (1.0 - t2).max(0.0).sqrt())
}

/// The Pinsker factor: `2α/(1−α)` for α ≤ 1/2 and 2 for 1/2 ≤ α < 1.
pub fn kappa(order: Order) -> Result<f64> {
    let a = order.alpha();
    if !(a > 0.0 && a < 1.0) {
        return domain(format!("kappa requires 0 < alpha < 1, got {a}"));
    }
    Ok(if a <= 0.5 { 2.0 * a / (1.0 - a) } else { 2.0 })
}

/// `x^a` with `0^a := 0`; at a = 0 this is the support indicator of x.
#[inline]
fn support_pow(x: f64, a: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x.powf(a)
    }
}

/// `Φ_uv(α) = u^α v^{1−α} + (1−u)^α (1−v)^{1−α} + 2α g(|u−v|) − 1`, for α ∈ [0, 1/2].
///
/// Takes α as a bare real because α = 0 is a legal endpoint here.
pub fn phi_uv(u: f64, v: f64, alpha: f64) -> Result<f64> {
    check_unit("u", u)?;
    check_unit("v", v)?;
    if !(0.0..=0.5).contains(&alpha) {
        return domain(format!("phi_uv requires alpha in [0, 1/2], got {alpha}"));
    }
    let b = 1.0 - alpha;
    let mean = support_pow(u, alpha) * support_pow(v, b)
        + support_pow(1.0 - u, alpha) * support_pow(1.0 - v, b);
    Ok(mean + 2.0 * alpha * g_unchecked((u - v).abs()) - 1.0)
}

/// `binom(1/2, n)·(−1)^{n+1}`, the n-th coefficient of `1 − sqrt(1 − x)`.
pub fn pinsker_series_coeff(n: usize) -> Result<f64> {
    if n < 1 {
        return domain("series coefficients start at n = 1");
    }
    // binom(1/2, n) = prod_{k<n} (1/2 − k)/(k + 1)
    let mut binom = 1.0;
    for k in 0..n {
        binom *= (0.5 - k as f64) / (k as f64 + 1.0);
    }
    Ok(if n % 2 == 1 { binom } else { -binom })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    #[test]
    fn order_rejects_nonpositive() {
        assert!(Order::new(0.0).is_err());
        assert!(Order::new(-1.0).is_err());
        assert!(Order::new(f64::NAN).is_err());
        assert!(ord(1.0 + 5e-7).near_one());
        assert!(!ord(1.0 + 2e-6).near_one());
    }

    #[test]
    fn alpha_log_examples() {
        for a in [0.3, 1.0, 2.0, 7.0] {
            assert_eq!(alpha_log(1.0, ord(a)).unwrap(), 0.0);
        }
        assert!((alpha_log(2.0, ord(2.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((alpha_log(std::f64::consts::E, ord(1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(alpha_log(0.0, ord(2.0)).is_err());
        assert!(alpha_log(-1.0, ord(0.5)).is_err());
    }

    #[test]
    fn alpha_log_band_is_accurate() {
        // Reference through the series (exp(sL) − 1)/s = L + sL²/2 + s²L³/6 + s³L⁴/24 + ...
        for &s in &[2e-6, 1e-5, 5e-5] {
            for &z in &[1e-3, 0.5, 3.0, 1e3] {
                let l: f64 = f64::ln(z);
                let series = l + s * l * l / 2.0 + s * s * l.powi(3) / 6.0 + s.powi(3) * l.powi(4) / 24.0;
                let got = alpha_log(z, ord(1.0 - s)).unwrap();
                assert!((got - series).abs() <= 1e-14 * (1.0 + l.abs()), "z={z} s={s}");
            }
        }
    }

    #[test]
    fn binary_tsallis_examples() {
        assert_eq!(binary_tsallis(0.0, ord(2.0)).unwrap(), 0.0);
        assert!((binary_tsallis(0.5, ord(2.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((binary_tsallis(0.5, ord(1.0)).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        for &u in &[0.1, 0.37, 0.8] {
            for &a in &[0.3, 1.0, 2.5] {
                let l = binary_tsallis(u, ord(a)).unwrap();
                let r = binary_tsallis(1.0 - u, ord(a)).unwrap();
                assert!((l - r).abs() < 1e-15);
            }
        }
        assert!(binary_tsallis(1.2, ord(2.0)).is_err());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_of_t(0.0).unwrap(), 0.0);
        assert_eq!(g_of_t(1.0).unwrap(), 1.0);
        assert!((g_of_t(0.6).unwrap() - 0.2).abs() < 1e-15);
        assert!(g_of_t(-0.1).is_err());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(ord(0.5)).unwrap(), 2.0);
        assert!((kappa(ord(0.25)).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(kappa(ord(0.75)).unwrap(), 2.0);
        assert!(kappa(ord(1.0)).is_err());
        assert!(kappa(ord(1.5)).is_err());
    }

    #[test]
    fn phi_examples() {
        for &(u, v) in &[(0.1, 0.9), (0.5, 0.2), (0.33, 0.34)] {
            assert!(phi_uv(u, v, 0.0).unwrap().abs() < 1e-15);
        }
        for &a in &[0.0, 0.1, 0.5] {
            assert!(phi_uv(0.4, 0.4, a).unwrap().abs() < 1e-15);
        }
        assert!(phi_uv(0.9, 0.2, 0.5).unwrap() <= 0.0);
        assert!(phi_uv(0.5, 0.5, 0.6).is_err());
    }

    #[test]
    fn series_coefficients() {
        assert_eq!(pinsker_series_coeff(1).unwrap(), 0.5);
        assert_eq!(pinsker_series_coeff(2).unwrap(), 0.125);
        assert!((pinsker_series_coeff(3).unwrap() - 0.0625).abs() < 1e-17);
        for n in 1..=50 {
            assert!(pinsker_series_coeff(n).unwrap() > 0.0, "n={n}");
        }
        assert!(pinsker_series_coeff(0).is_err());
    }

    #[test]
    fn extended_value_arithmetic() {
        use ExtendedValue::*;
        assert!(Infinite > Finite(1e300));
        assert_eq!(Finite(1.0) + Infinite, Infinite);
        assert_eq!(Infinite * 2.0, Infinite);
        assert_eq!(Finite(1.5) + 2.0, Finite(3.5));
        assert_eq!(Infinite.to_string(), "+inf");
        assert!(ExtendedValue::from_f64(f64::NEG_INFINITY).is_err());
        let json = serde_json::to_string(&Infinite).unwrap();
        assert_eq!(serde_json::from_str::<ExtendedValue>(&json).unwrap(), Infinite);
    }
}
