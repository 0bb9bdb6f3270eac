//! JSON problem specs shared by the command-line subcommands.
//!
//! Two shapes are accepted: a bare family object, or a weighted-sum object
//! with a component list and optional rational coefficients. Coefficients are
//! parsed exactly from strings or integers; floats are rejected so a spec
//! never drifts through a round trip.

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::dist::{DistError, Family, LatticeDistribution, WeightedSumSpec};
use crate::rational::{format_rational, parse_rational, Rational, RationalError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("spec must be a family object or a {{coefficients, components}} object")]
    UnknownShape,
    #[error("components must be a nonempty array")]
    EmptyComponents,
    #[error("coefficient {index}: floats are not accepted, write \"p/q\" or an integer")]
    FloatCoefficient { index: usize },
    #[error("coefficient {index}: expected a string or integer")]
    BadCoefficientShape { index: usize },
    #[error("coefficient {index}: {source}")]
    Coefficient {
        index: usize,
        source: RationalError,
    },
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// A parsed problem: either one distribution or a weighted sum of several.
#[derive(Clone, Debug)]
pub enum ProblemSpec {
    Distribution(Family),
    WeightedSum {
        coefficients: Vec<Rational>,
        components: Vec<Family>,
    },
}

/// Built counterpart of a ProblemSpec.
pub enum BuiltProblem {
    Distribution(LatticeDistribution),
    WeightedSum(WeightedSumSpec),
}

#[derive(Serialize)]
struct WeightedSumJson<'a> {
    coefficients: Vec<String>,
    components: &'a [Family],
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self, InputError> {
        let obj = value.as_object().ok_or(InputError::UnknownShape)?;
        if obj.contains_key("family") {
            return Ok(Self::Distribution(serde_json::from_value(value)?));
        }
        if !obj.contains_key("components") {
            return Err(InputError::UnknownShape);
        }
        let comps = obj
            .get("components")
            .and_then(Value::as_array)
            .ok_or(InputError::EmptyComponents)?;
        if comps.is_empty() {
            return Err(InputError::EmptyComponents);
        }
        let components: Vec<Family> = comps
            .iter()
            .map(|v| serde_json::from_value(v.clone()))
            .collect::<Result<_, _>>()?;
        let coefficients = match obj.get("coefficients") {
            None => vec![Rational::from_integer(1); components.len()],
            Some(Value::Array(entries)) => entries
                .iter()
                .enumerate()
                .map(|(index, entry)| parse_coefficient(index, entry))
                .collect::<Result<_, _>>()?,
            Some(_) => return Err(InputError::UnknownShape),
        };
        Ok(Self::WeightedSum {
            coefficients,
            components,
        })
    }

    /// Canonical JSON: coefficients always as rational strings.
    pub fn to_value(&self) -> Value {
        match self {
            Self::Distribution(family) => {
                serde_json::to_value(family).expect("family serializes")
            }
            Self::WeightedSum {
                coefficients,
                components,
            } => serde_json::to_value(WeightedSumJson {
                coefficients: coefficients.iter().map(format_rational).collect(),
                components,
            })
            .expect("spec serializes"),
        }
    }

    pub fn build(&self) -> Result<BuiltProblem, InputError> {
        match self {
            Self::Distribution(family) => Ok(BuiltProblem::Distribution(family.build()?)),
            Self::WeightedSum {
                coefficients,
                components,
            } => {
                let dists = components
                    .iter()
                    .map(Family::build)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(BuiltProblem::WeightedSum(WeightedSumSpec::new(
                    coefficients.clone(),
                    dists,
                )?))
            }
        }
    }

    pub fn families(&self) -> Vec<Family> {
        match self {
            Self::Distribution(f) => vec![f.clone()],
            Self::WeightedSum { components, .. } => components.clone(),
        }
    }
}

fn parse_coefficient(index: usize, entry: &Value) -> Result<Rational, InputError> {
    let value = match entry {
        Value::String(s) => {
            parse_rational(s).map_err(|source| InputError::Coefficient { index, source })?
        }
        Value::Number(n) => match n.as_i64() {
            Some(i) => Rational::from_integer(i),
            None => return Err(InputError::FloatCoefficient { index }),
        },
        _ => return Err(InputError::BadCoefficientShape { index }),
    };
    if value.numer() == &0 {
        return Err(InputError::Coefficient {
            index,
            source: RationalError::ZeroCoefficient(index),
        });
    }
    Ok(value)
}
