use serde_json::Value;

use super::rng::TrialRng;
use crate::bounds::{BoundReport, Evaluator, Verdict};
use crate::scalar::{ExtendedValue, Order};

/// Anything a check can compare: plain floats (NaN allowed, and always a
/// violation) or extended values.
pub trait Measure {
    fn value(self) -> f64;
}

impl Measure for f64 {
    fn value(self) -> f64 {
        self
    }
}

impl Measure for ExtendedValue {
    fn value(self) -> f64 {
        self.to_f64()
    }
}

/// One comparison made by a property.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: &'static str,
    pub measured: f64,
    pub bound: f64,
    /// Positive when the inequality holds with room to spare.
    pub slack: f64,
    pub tolerance: f64,
}

impl Check {
    /// `slack < −tolerance`, or a NaN slack.
    pub fn violated(&self) -> bool {
        !(self.slack >= -self.tolerance)
    }
}

/// State of a single randomized trial, handed to a property's check function.
pub struct Trial<'a> {
    pub rng: TrialRng,
    /// Dimension (or alphabet size) of the cell; 0 when the property ignores it.
    pub dim: usize,
    pub order: Order,
    pub eval: &'a Evaluator,
    /// Slack tolerance for bound checks.
    pub tolerance: f64,
    pub(crate) checks: Vec<Check>,
    pub(crate) capture: bool,
    pub(crate) inputs: Option<Value>,
}

fn difference(hi: f64, lo: f64) -> f64 {
    if hi == f64::INFINITY && lo == f64::INFINITY {
        0.0
    } else {
        hi - lo
    }
}

impl<'a> Trial<'a> {
    pub(crate) fn new(rng: TrialRng, dim: usize, order: Order, eval: &'a Evaluator, tolerance: f64, capture: bool) -> Self {
        Trial { rng, dim, order, eval, tolerance, checks: Vec::new(), capture, inputs: None }
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    /// `measured ≤ bound` up to the trial tolerance.
    pub fn upper(&mut self, label: &'static str, measured: impl Measure, bound: impl Measure) {
        let tol = self.tolerance;
        self.upper_tol(label, measured, bound, tol);
    }

    pub fn upper_tol(&mut self, label: &'static str, measured: impl Measure, bound: impl Measure, tolerance: f64) {
        let (m, b) = (measured.value(), bound.value());
        self.checks.push(Check { label, measured: m, bound: b, slack: difference(b, m), tolerance });
    }

    /// `measured ≥ bound` up to the trial tolerance.
    pub fn lower(&mut self, label: &'static str, measured: impl Measure, bound: impl Measure) {
        let tol = self.tolerance;
        self.lower_tol(label, measured, bound, tol);
    }

    pub fn lower_tol(&mut self, label: &'static str, measured: impl Measure, bound: impl Measure, tolerance: f64) {
        let (m, b) = (measured.value(), bound.value());
        self.checks.push(Check { label, measured: m, bound: b, slack: difference(m, b), tolerance });
    }

    /// `|a − b| ≤ tolerance`; equal infinities count as equal.
    pub fn close(&mut self, label: &'static str, a: impl Measure, b: impl Measure, tolerance: f64) {
        let (a, b) = (a.value(), b.value());
        let err = if a == b { 0.0 } else { (a - b).abs() };
        self.checks.push(Check { label, measured: a, bound: b, slack: -err, tolerance });
    }

    /// `|a − b| ≤ tolerance · (1 + scale)`.
    pub fn close_rel(&mut self, label: &'static str, a: f64, b: f64, scale: f64, tolerance: f64) {
        let err = if a == b { 0.0 } else { (a - b).abs() / (1.0 + scale.abs()) };
        self.checks.push(Check { label, measured: a, bound: b, slack: -err, tolerance });
    }

    /// Records an in-domain [`BoundReport`]; not-applicable reports are skipped.
    pub fn report(&mut self, label: &'static str, r: &BoundReport) {
        if r.verdict == Verdict::NotApplicable {
            return;
        }
        self.checks.push(Check {
            label,
            measured: r.measured.to_f64(),
            bound: r.bound.to_f64(),
            slack: r.slack,
            tolerance: self.tolerance,
        });
    }

    /// Serialized inputs for violation records; `f` only runs when a
    /// violating trial is replayed.
    pub fn inputs(&mut self, f: impl FnOnce() -> Value) {
        if self.capture {
            self.inputs = Some(f());
        }
    }
}

/// Which orders a property runs at.
#[derive(Debug, Clone, Copy)]
pub enum Orders {
    /// Once per cell at α = 1; the property picks its own orders.
    Independent,
    /// Every grid order accepted by the filter.
    Grid(fn(Order) -> bool),
}

/// Which dimensions a property runs at.
#[derive(Debug, Clone, Copy)]
pub enum Dims {
    Independent,
    /// Every configured dimension in `[min, max]`.
    Grid { min: usize, max: usize },
}

/// A registered randomized property.
pub struct Property {
    pub id: &'static str,
    pub summary: &'static str,
    /// Library operations the property exercises.
    pub covers: &'static [&'static str],
    pub orders: Orders,
    pub dims: Dims,
    pub run: fn(&mut Trial) -> crate::Result<()>,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property").field("id", &self.id).finish()
    }
}

pub(crate) fn any_order(_: Order) -> bool {
    true
}

pub(crate) fn below_one(o: Order) -> bool {
    o.alpha() < 1.0 && !o.near_one()
}

pub(crate) fn above_one(o: Order) -> bool {
    o.above_one()
}

pub(crate) fn off_one(o: Order) -> bool {
    !o.near_one()
}
