//! JSON schemas for instance and controller files.

use serde::{Deserialize, Serialize};

use crate::complex_core::{RationalFunction, RealPolynomial};
use crate::hinf_norm::{ControllerEntry, DiagonalController, ProblemInstance};
use crate::interpolation::OptimalController;
use crate::Error;

fn one() -> Vec<f64> {
    vec![1.0]
}

/// `{"num": [...], "den": [...]}`, ascending powers; `den` defaults to `[1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalSpec {
    pub num: Vec<f64>,
    #[serde(default = "one")]
    pub den: Vec<f64>,
}

impl RationalSpec {
    pub fn to_rational(&self, field: &str) -> std::result::Result<RationalFunction, String> {
        if self.num.iter().chain(&self.den).any(|c| !c.is_finite()) {
            return Err(format!("field `{field}`: coefficients must be finite"));
        }
        RationalFunction::new(RealPolynomial::new(self.num.clone()), RealPolynomial::new(self.den.clone()))
            .map_err(|e| format!("field `{field}`: {e}"))
    }

    pub fn from_rational(f: &RationalFunction) -> Self {
        let num = if f.num().is_zero() { vec![0.0] } else { f.num().coeffs().to_vec() };
        Self { num, den: f.den().coeffs().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub a: RationalSpec,
    pub b: RationalSpec,
}

impl InstanceFile {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("instance file: {e}"))
    }

    pub fn from_instance(inst: &ProblemInstance) -> Self {
        Self { a: RationalSpec::from_rational(inst.a()), b: RationalSpec::from_rational(inst.b()) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// Runs the stability and boundary checks of [`ProblemInstance::new`].
    pub fn to_instance(&self) -> std::result::Result<ProblemInstance, LoadError> {
        let a = self.a.to_rational("a").map_err(LoadError::Parse)?;
        let b = self.b.to_rational("b").map_err(LoadError::Parse)?;
        ProblemInstance::new(a, b).map_err(LoadError::Math)
    }
}

#[derive(Debug)]
pub enum LoadError {
    /// Malformed input.
    Parse(String),
    /// Well-formed input that violates a mathematical precondition.
    Math(Error),
}

/// One controller entry: a rational encoding or the string `"optimal"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Keyword(String),
    Rational(RationalSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerFile {
    pub s1: EntrySpec,
    pub s2: EntrySpec,
}

impl ControllerFile {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let file: Self = serde_json::from_str(text).map_err(|e| format!("controller file: {e}"))?;
        for (name, e) in [("s1", &file.s1), ("s2", &file.s2)] {
            if let EntrySpec::Keyword(k) = e {
                if k != "optimal" {
                    return Err(format!("field `{name}`: expected a rational encoding or \"optimal\", got \"{k}\""));
                }
            }
        }
        Ok(file)
    }

    pub fn needs_optimal(&self) -> bool {
        matches!(self.s1, EntrySpec::Keyword(_)) || matches!(self.s2, EntrySpec::Keyword(_))
    }

    /// `optimal` must be provided when [`Self::needs_optimal`] holds.
    pub fn to_controller(
        &self,
        optimal: Option<&std::sync::Arc<OptimalController>>,
    ) -> std::result::Result<DiagonalController, LoadError> {
        let entry = |name: &str, e: &EntrySpec| -> std::result::Result<ControllerEntry, LoadError> {
            match e {
                EntrySpec::Keyword(_) => optimal
                    .cloned()
                    .map(ControllerEntry::Optimal)
                    .ok_or_else(|| LoadError::Parse(format!("field `{name}`: optimal controller unavailable"))),
                EntrySpec::Rational(r) => r.to_rational(name).map(ControllerEntry::Rational).map_err(LoadError::Parse),
            }
        };
        DiagonalController::new(entry("s1", &self.s1)?, entry("s2", &self.s2)?).map_err(LoadError::Math)
    }
}
