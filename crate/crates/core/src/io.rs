//! Number rendering shared by every text output.

/// Shortest round-trip decimal for `x` (at most 17 significant digits).
///
/// Very small or very large magnitudes switch to exponent notation so that
/// the string stays short; both forms parse back to the identical `f64`.
/// Infinity renders as `+inf`.
pub fn render_f64(x: f64) -> String {
    if x == f64::INFINITY {
        return "+inf".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let ax = x.abs();
    if (1e-5..1e16).contains(&ax) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Parses the output of [`render_f64`] (and ordinary decimals).
pub fn parse_f64(s: &str) -> Option<f64> {
    match s.trim() {
        "+inf" | "inf" | "+Inf" | "Infinity" => Some(f64::INFINITY),
        t => t.parse().ok(),
    }
}
