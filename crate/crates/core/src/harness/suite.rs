use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::properties::REGISTRY;
use super::registry::{Check, Dims, Orders, Property, Trial};
use super::rng::substream;
use crate::bounds::Evaluator;
use crate::error::{Error, Result};
use crate::io::render_f64;
use crate::operator::MAX_DIM;
use crate::scalar::Order;

/// Largest order accepted in a sampler grid.
pub const MAX_GRID_ALPHA: f64 = 8.0;

/// What to run and how often. Serialized as TOML with keys
/// `seed`, `dims`, `alphas`, `trials`, `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerConfig {
    pub seed: u64,
    #[serde(rename = "dims")]
    pub dim_list: Vec<usize>,
    #[serde(rename = "alphas")]
    pub alpha_grid: Vec<f64>,
    #[serde(rename = "trials")]
    pub trials_per_cell: usize,
    pub tolerance: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 1729,
            dim_list: vec![2, 3, 4],
            alpha_grid: vec![0.1, 0.3, 0.5, 0.7, 0.9, 1.5, 2.0, 3.0, 5.0],
            trials_per_cell: 100,
            tolerance: crate::bounds::BOUND_TOL,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Parse(m));
        if self.trials_per_cell < 1 {
            return bad("trials must be at least 1".into());
        }
        if self.dim_list.is_empty() || self.dim_list.iter().any(|&d| !(1..=MAX_DIM).contains(&d)) {
            return bad(format!("dims must be a nonempty list of integers in [1, {MAX_DIM}]"));
        }
        if self.alpha_grid.is_empty() || self.alpha_grid.iter().any(|&a| !(a > 0.0 && a <= MAX_GRID_ALPHA)) {
            return bad(format!("alphas must be a nonempty list of values in (0, {MAX_GRID_ALPHA}]"));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return bad("tolerance must be a nonnegative number".into());
        }
        Ok(())
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: SamplerConfig = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// A failed check, with enough context to replay it.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub property: String,
    pub check: String,
    pub dim: Option<usize>,
    pub alpha: Option<f64>,
    pub trial: u64,
    pub inputs: Value,
    pub measured: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Per-property totals and the tightest observed slack.
#[derive(Debug, Clone, Serialize)]
pub struct PropertySummary {
    pub id: String,
    pub cells: usize,
    pub trials: u64,
    pub checks: u64,
    pub violations: u64,
    /// Smallest slack over all non-NaN checks.
    pub min_slack: Option<f64>,
    pub min_slack_check: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: SamplerConfig,
    pub properties: Vec<PropertySummary>,
    pub violations: Vec<ViolationRecord>,
}

struct TrialOutcome {
    checks: u64,
    min: Option<(f64, &'static str)>,
    violations: Vec<ViolationRecord>,
}

#[derive(Clone, Copy)]
struct Cell {
    dim: Option<usize>,
    order: Option<Order>,
}

impl Cell {
    fn key(&self) -> u64 {
        let d = self.dim.unwrap_or(0) as u64;
        let a = self.order.map_or(0, |o| o.alpha().to_bits());
        d.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ a
    }
}

fn cells(p: &Property, cfg: &SamplerConfig) -> Vec<Cell> {
    let dims: Vec<Option<usize>> = match p.dims {
        Dims::Independent => vec![None],
        Dims::Grid { min, max } => cfg.dim_list.iter().copied().filter(|d| (min..=max).contains(d)).map(Some).collect(),
    };
    let orders: Vec<Option<Order>> = match p.orders {
        Orders::Independent => vec![None],
        Orders::Grid(keep) => cfg.alpha_grid.iter().filter_map(|&a| Order::new(a).ok()).filter(|o| keep(*o)).map(Some).collect(),
    };
    dims.iter().flat_map(|&dim| orders.iter().map(move |&order| Cell { dim, order })).collect()
}

fn execute(p: &Property, cfg: &SamplerConfig, eval: &Evaluator, cell: Cell, index: u64, capture: bool) -> (Vec<Check>, Option<Value>) {
    let rng = substream(cfg.seed, p.id, cell.key(), index);
    let mut trial = Trial::new(rng, cell.dim.unwrap_or(0), cell.order.unwrap_or(Order::one()), eval, cfg.tolerance, capture);
    let outcome = (p.run)(&mut trial);
    let mut checks = std::mem::take(&mut trial.checks);
    let mut inputs = trial.inputs.take();
    if let Err(e) = outcome {
        checks.push(Check { label: "error", measured: f64::NAN, bound: f64::NAN, slack: f64::NAN, tolerance: 0.0 });
        if capture {
            inputs = Some(serde_json::json!({ "error": e.to_string(), "inputs": inputs }));
        }
    }
    (checks, inputs)
}

fn run_trial(p: &Property, cfg: &SamplerConfig, eval: &Evaluator, cell: Cell, index: u64) -> TrialOutcome {
    let (checks, _) = execute(p, cfg, eval, cell, index, false);
    let mut min: Option<(f64, &'static str)> = None;
    for c in &checks {
        if !c.slack.is_nan() && min.is_none_or(|(m, _)| c.slack < m) {
            min = Some((c.slack, c.label));
        }
    }
    let mut violations = Vec::new();
    if checks.iter().any(Check::violated) {
        // Replay the same substream with input capture switched on.
        let (_, inputs) = execute(p, cfg, eval, cell, index, true);
        let inputs = inputs.unwrap_or(Value::Null);
        for c in checks.iter().filter(|c| c.violated()) {
            violations.push(ViolationRecord {
                property: p.id.to_string(),
                check: c.label.to_string(),
                dim: cell.dim,
                alpha: cell.order.map(|o| o.alpha()),
                trial: index,
                inputs: inputs.clone(),
                measured: c.measured,
                bound: c.bound,
                slack: c.slack,
            });
        }
    }
    TrialOutcome { checks: checks.len() as u64, min, violations }
}

/// Runs the given properties under `eval`. Trials run in parallel; results
/// are merged in (property, cell, trial) order, so the report depends only
/// on the configuration.
pub fn run_properties(cfg: &SamplerConfig, properties: &[&Property], eval: &Evaluator) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut summaries = Vec::with_capacity(properties.len());
    let mut violations = Vec::new();
    for p in properties {
        let cells = cells(p, cfg);
        let mut summary = PropertySummary {
            id: p.id.to_string(),
            cells: cells.len(),
            trials: 0,
            checks: 0,
            violations: 0,
            min_slack: None,
            min_slack_check: None,
        };
        let mut min: Option<(f64, &'static str)> = None;
        for cell in cells {
            let outcomes: Vec<TrialOutcome> = (0..cfg.trials_per_cell as u64)
                .into_par_iter()
                .map(|i| run_trial(p, cfg, eval, cell, i))
                .collect();
            for o in outcomes {
                summary.trials += 1;
                summary.checks += o.checks;
                summary.violations += o.violations.len() as u64;
                if let Some((s, label)) = o.min {
                    if min.is_none_or(|(m, _)| s < m) {
                        min = Some((s, label));
                    }
                }
                violations.extend(o.violations);
            }
        }
        summary.min_slack = min.map(|m| m.0);
        summary.min_slack_check = min.map(|m| m.1.to_string());
        summaries.push(summary);
    }
    Ok(SuiteReport { config: cfg.clone(), properties: summaries, violations })
}

/// Runs every registered property with the true bounds.
pub fn run_property_suite(cfg: &SamplerConfig) -> Result<SuiteReport> {
    run_property_suite_with(cfg, &Evaluator::default())
}

/// Runs every registered property with the given (possibly faulty) evaluator.
pub fn run_property_suite_with(cfg: &SamplerConfig, eval: &Evaluator) -> Result<SuiteReport> {
    let all: Vec<&Property> = REGISTRY.iter().collect();
    run_properties(cfg, &all, eval)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(render_f64).unwrap_or_default()
}

impl SuiteReport {
    pub fn total_violations(&self) -> usize {
        self.violations.len()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, property: &str) -> usize {
        self.violations.iter().filter(|v| v.property == property).count()
    }

    pub const SUMMARY_HEADER: &'static str = "property,cells,trials,checks,violations,min_slack,min_slack_check";

    /// One row per property, preceded by a `# seed=…` comment line.
    pub fn summary_csv(&self) -> String {
        let mut out = format!("# seed={}\n{}\n", self.config.seed, Self::SUMMARY_HEADER);
        for p in &self.properties {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                p.id,
                p.cells,
                p.trials,
                p.checks,
                p.violations,
                opt(p.min_slack),
                p.min_slack_check.as_deref().unwrap_or("")
            );
        }
        out
    }

    pub const VIOLATIONS_HEADER: &'static str = "property,check,dim,alpha,trial,measured,bound,slack,inputs";

    pub fn violations_csv(&self) -> String {
        let mut out = format!("{}\n", Self::VIOLATIONS_HEADER);
        for v in &self.violations {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                v.property,
                v.check,
                v.dim.map(|d| d.to_string()).unwrap_or_default(),
                opt(v.alpha),
                v.trial,
                render_f64(v.measured),
                render_f64(v.bound),
                render_f64(v.slack),
                csv_field(&v.inputs.to_string())
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let cfg = SamplerConfig::default();
        let back = SamplerConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(cfg, back);
        let partial = SamplerConfig::from_toml_str("seed = 5\ntrials = 3\n").unwrap();
        assert_eq!(partial.seed, 5);
        assert_eq!(partial.trials_per_cell, 3);
        assert_eq!(partial.dim_list, cfg.dim_list);
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(SamplerConfig::from_toml_str("trials = 0").is_err());
        assert!(SamplerConfig::from_toml_str("alphas = [0.5, 9.0]").is_err());
        assert!(SamplerConfig::from_toml_str("alphas = [0.0]").is_err());
        assert!(SamplerConfig::from_toml_str("dims = []").is_err());
        assert!(SamplerConfig::from_toml_str("colour = 1").is_err());
        assert!(SamplerConfig::from_toml_str("seed = \"x\"").is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a"), "a");
        assert_eq!(csv_field("{\"a\":1,\"b\":2}"), "\"{\"\"a\"\":1,\"\"b\"\":2}\"");
    }
}
