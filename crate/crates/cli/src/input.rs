use std::fs;
use std::path::Path;

use entropy_lab::classical::{Distribution, JointDistribution};
use entropy_lab::operator::{DensityOperator, PositiveOperator};
use entropy_lab::Error;

/// One input file, recognised by its schema.
#[derive(Debug, Clone)]
pub enum Input {
    Distribution(Distribution),
    Joint(JointDistribution),
    Operator(DensityOperator),
}

impl Input {
    fn kind(&self) -> &'static str {
        match self {
            Input::Distribution(_) => "distribution",
            Input::Joint(_) => "joint distribution",
            Input::Operator(_) => "density operator",
        }
    }

    pub fn distribution(&self) -> Result<&Distribution, Error> {
        match self {
            Input::Distribution(p) => Ok(p),
            other => Err(Error::Parse(format!("expected a distribution, got a {}", other.kind()))),
        }
    }

    pub fn joint(&self) -> Result<&JointDistribution, Error> {
        match self {
            Input::Joint(j) => Ok(j),
            other => Err(Error::Parse(format!("expected a joint distribution, got a {}", other.kind()))),
        }
    }

    /// Operators as given; distributions as diagonal operators.
    pub fn density(&self) -> Result<DensityOperator, Error> {
        match self {
            Input::Operator(rho) => Ok(rho.clone()),
            Input::Distribution(p) => DensityOperator::from_distribution(p),
            Input::Joint(_) => Err(Error::Parse("expected a distribution or density operator, got a joint distribution".into())),
        }
    }

    pub fn positive(&self, theta: f64) -> Result<PositiveOperator, Error> {
        self.density()?.as_positive().scaled(theta)
    }
}

/// Reads a JSON distribution, joint distribution or operator, or a CSV row
/// of probabilities.
pub fn load(path: &Path) -> Result<Input, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse(text: &str) -> Result<Input, Error> {
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        let row = trimmed.lines().next().unwrap_or("");
        return Distribution::from_csv_row(row).map(Input::Distribution);
    }
    let value: serde_json::Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("joint").is_some() {
        JointDistribution::from_json(&value).map(Input::Joint)
    } else if value.get("probs").is_some() {
        Distribution::from_json(&value).map(Input::Distribution)
    } else if value.get("dim").is_some() {
        DensityOperator::from_json(&value).map(Input::Operator)
    } else {
        Err(Error::Parse("unrecognised input: expected a \"probs\", \"joint\" or \"dim\" field".into()))
    }
}
