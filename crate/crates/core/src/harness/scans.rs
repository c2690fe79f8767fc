//! Parameter scans exported as tables.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{fannes_bound, pinsker_lower_bound, yanagi_comparison_bound};
use crate::classical::{relative_entropy, renyi_entropy, renyi_rel_entropy, tsallis_entropy, tsallis_rel_entropy, Distribution};
use crate::error::{domain, Error, Result};
use crate::io::render_f64;
use crate::operator::DensityOperator;
use crate::quantum::{
    quantum_relative_entropy, quantum_renyi_entropy, quantum_renyi_rel_entropy, quantum_tsallis_entropy,
    quantum_tsallis_rel_entropy,
};
use crate::scalar::{ExtendedValue, Order};

/// A numeric table with named columns; missing cells are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    /// Values of the named column, top to bottom.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Header line plus one line per row; missing cells are empty.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.map(render_f64).unwrap_or_default()).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// Log-spaced τ values from `1e−8` to `1/8`, eight per decade.
pub fn default_tau_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (0..=56).map(|k| 10f64.powf(-8.0 + k as f64 / 8.0)).filter(|&t| t < 0.125).collect();
    grid.push(0.125);
    grid
}

/// Fannes-type bound next to the earlier comparison bound.
///
/// Columns `tau, fannes, yanagi, relative_difference`; the last two are
/// empty where `2τ > α^{1/(1−α)}`.
pub fn fannes_comparison_scan(d: usize, order: Order, tau_grid: &[f64]) -> Result<Table> {
    if !order.below_one() {
        return domain(format!("the comparison scan requires 0 < alpha < 1, got {order}"));
    }
    let mut t = Table::new(vec!["tau", "fannes", "yanagi", "relative_difference"]);
    for &tau in tau_grid {
        let f = fannes_bound(tau, d, order)?;
        let y = yanagi_comparison_bound(tau, d, order)?;
        let rel = y.and_then(|y| (f > 0.0).then(|| (y - f) / f));
        t.rows.push(vec![Some(tau), Some(f), y, rel]);
    }
    Ok(t)
}

/// Quantity followed to α → 1 by [`alpha_limit_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitQuantity {
    Tsallis,
    Renyi,
    TsallisRelative,
    RenyiRelative,
}

impl FromStr for LimitQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsallis" => Ok(LimitQuantity::Tsallis),
            "renyi" => Ok(LimitQuantity::Renyi),
            "tsallis-rel" => Ok(LimitQuantity::TsallisRelative),
            "renyi-rel" => Ok(LimitQuantity::RenyiRelative),
            other => Err(Error::Parse(format!("unknown quantity '{other}' (expected tsallis, renyi, tsallis-rel, renyi-rel)"))),
        }
    }
}

impl LimitQuantity {
    pub fn is_relative(self) -> bool {
        matches!(self, LimitQuantity::TsallisRelative | LimitQuantity::RenyiRelative)
    }
}

/// Inputs of a limit scan; relative quantities need the second argument.
#[derive(Debug, Clone)]
pub enum ScanInput {
    Classical(Distribution, Option<Distribution>),
    Quantum(DensityOperator, Option<DensityOperator>),
}

fn evaluate(q: LimitQuantity, input: &ScanInput, order: Order) -> Result<ExtendedValue> {
    let missing = || Error::Domain("a relative quantity needs two inputs".into());
    Ok(match (q, input) {
        (LimitQuantity::Tsallis, ScanInput::Classical(p, _)) => tsallis_entropy(p, order).into(),
        (LimitQuantity::Renyi, ScanInput::Classical(p, _)) => renyi_entropy(p, order).into(),
        (LimitQuantity::TsallisRelative, ScanInput::Classical(p, q)) => {
            tsallis_rel_entropy(&p.to_weights(), &q.as_ref().ok_or_else(missing)?.to_weights(), order)?
        }
        (LimitQuantity::RenyiRelative, ScanInput::Classical(p, q)) => renyi_rel_entropy(p, q.as_ref().ok_or_else(missing)?, order)?,
        (LimitQuantity::Tsallis, ScanInput::Quantum(r, _)) => quantum_tsallis_entropy(r, order).into(),
        (LimitQuantity::Renyi, ScanInput::Quantum(r, _)) => quantum_renyi_entropy(r, order).into(),
        (LimitQuantity::TsallisRelative, ScanInput::Quantum(r, s)) => {
            quantum_tsallis_rel_entropy(r, s.as_ref().ok_or_else(missing)?, order)?
        }
        (LimitQuantity::RenyiRelative, ScanInput::Quantum(r, s)) => quantum_renyi_rel_entropy(r, s.as_ref().ok_or_else(missing)?, order)?,
    })
}

fn limit_value(q: LimitQuantity, input: &ScanInput) -> Result<ExtendedValue> {
    if !q.is_relative() {
        return evaluate(q, input, Order::one());
    }
    match input {
        ScanInput::Classical(p, Some(q)) => relative_entropy(p, q),
        ScanInput::Quantum(r, Some(s)) => quantum_relative_entropy(r, s),
        _ => domain("a relative quantity needs two inputs"),
    }
}

/// Evaluates the quantity at `α = 1 ± 10^{−k}` for each `k` and compares
/// with the α = 1 value.
///
/// Columns `k, delta, below, above, limit, error, ratio, order`, where
/// `error` is the larger of the two one-sided errors, `ratio` the drop of
/// `error` from the previous row and `order = log10(ratio)` the observed
/// convergence order.
pub fn alpha_limit_scan(quantity: LimitQuantity, input: &ScanInput, exponents: RangeInclusive<u32>) -> Result<Table> {
    let limit = limit_value(quantity, input)?;
    let ExtendedValue::Finite(limit) = limit else {
        return domain("the α = 1 value is infinite; nothing to converge to");
    };
    let mut t = Table::new(vec!["k", "delta", "below", "above", "limit", "error", "ratio", "order"]);
    let mut prev: Option<f64> = None;
    for k in exponents {
        let delta = 10f64.powi(-(k as i32));
        let below = evaluate(quantity, input, Order::new(1.0 - delta)?)?.to_f64();
        let above = evaluate(quantity, input, Order::new(1.0 + delta)?)?.to_f64();
        let error = (below - limit).abs().max((above - limit).abs());
        let ratio = prev.map(|p| if error == 0.0 { f64::INFINITY } else { p / error });
        let order = ratio.map(f64::log10);
        t.rows.push(vec![Some(k as f64), Some(delta), Some(below), Some(above), Some(limit), Some(error), ratio, order]);
        prev = Some(error);
    }
    Ok(t)
}

/// Smallest binary Tsallis divergence at each trace distance against the
/// Pinsker-type bound.
///
/// Columns `tau, bound, min_divergence, ratio` with `ratio = bound /
/// min_divergence` (1 means the bound is attained on binary pairs).
pub fn pinsker_tightness_scan(order: Order, tau_grid: &[f64], resolution: usize) -> Result<Table> {
    if !order.below_one() {
        return domain(format!("the Pinsker scan requires 0 < alpha < 1, got {order}"));
    }
    if resolution < 2 {
        return domain("resolution must be at least 2");
    }
    let mut t = Table::new(vec!["tau", "bound", "min_divergence", "ratio"]);
    for &tau in tau_grid {
        let bound = pinsker_lower_bound(1.0, tau, order)?;
        let mut best = f64::INFINITY;
        for i in 0..resolution {
            let v = (1.0 - tau) * i as f64 / (resolution - 1) as f64;
            let p = Distribution::from_weights(&[v + tau, (1.0 - v - tau).max(0.0)])?;
            let q = Distribution::from_weights(&[v, 1.0 - v])?;
            best = best.min(tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), order)?.to_f64());
        }
        let ratio = if best > 0.0 { Some(bound / best) } else { None };
        t.rows.push(vec![Some(tau), Some(bound), Some(best), ratio]);
    }
    Ok(t)
}
