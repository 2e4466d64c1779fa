//! JSON encodings of rules, classifications, combination reports and built rules.
//!
//! Rule files look like
//!
//! ```json
//! {"label": "gauss-3", "points": [
//!   {"node": {"sqrt": "3/5", "sign": -1}, "weight": "5/9"},
//!   {"node": "0", "weight": "8/9"},
//!   {"node": {"sqrt": "3/5", "sign": 1}, "weight": "5/9"}]}
//! ```

use rug::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::builder::BuiltRule;
use crate::combine::CombineReport;
use crate::composite::format_sci;
use crate::exact::{parse_rational, ExactError, ExactScalar};
use crate::rules::{QuadRule, RuleClassification, RuleError};

/// Digits used for the decimal renderings next to exact values.
pub const DECIMAL_DIGITS: usize = 20;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("sign must be 1 or -1, got {0}")]
    Sign(i64),
    #[error("node {0} is neither rational nor a signed square root")]
    Unrepresentable(ExactScalar),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeRepr {
    Rational(String),
    Surd { sqrt: String, sign: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRepr {
    pub node: NodeRepr,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleRepr {
    #[serde(default)]
    pub label: String,
    pub points: Vec<PointRepr>,
}

pub fn node_repr(node: &ExactScalar) -> Result<NodeRepr, FormatError> {
    if let Some(r) = node.as_rational() {
        return Ok(NodeRepr::Rational(r.to_string()));
    }
    let (c, d) = node.as_pure_surd().ok_or_else(|| FormatError::Unrepresentable(node.clone()))?;
    // c·√d = sign·√(c² d)
    let radicand = Rational::from(c * c) * d;
    Ok(NodeRepr::Surd { sqrt: radicand.to_string(), sign: if *c < 0 { -1 } else { 1 } })
}

pub fn node_from_repr(repr: &NodeRepr) -> Result<ExactScalar, FormatError> {
    match repr {
        NodeRepr::Rational(s) => Ok(ExactScalar::from(parse_rational(s)?)),
        NodeRepr::Surd { sqrt, sign } => {
            if *sign != 1 && *sign != -1 {
                return Err(FormatError::Sign(*sign));
            }
            Ok(ExactScalar::signed_sqrt(&parse_rational(sqrt)?, *sign < 0)?)
        }
    }
}

pub fn rule_repr(rule: &QuadRule) -> Result<RuleRepr, FormatError> {
    let points = rule
        .points()
        .iter()
        .map(|p| Ok(PointRepr { node: node_repr(&p.node)?, weight: p.weight.to_string() }))
        .collect::<Result<_, FormatError>>()?;
    Ok(RuleRepr { label: rule.label().to_string(), points })
}

pub fn rule_from_repr(repr: &RuleRepr) -> Result<QuadRule, FormatError> {
    let points =
        repr.points.iter().map(|p| Ok((node_from_repr(&p.node)?, parse_rational(&p.weight)?))).collect::<Result<Vec<_>, FormatError>>()?;
    Ok(QuadRule::new(repr.label.clone(), points)?)
}

pub fn rule_to_json(rule: &QuadRule) -> Result<Value, FormatError> {
    Ok(serde_json::to_value(rule_repr(rule)?)?)
}

pub fn rule_to_string(rule: &QuadRule) -> Result<String, FormatError> {
    Ok(serde_json::to_string_pretty(&rule_repr(rule)?)?)
}

pub fn rule_from_str(text: &str) -> Result<QuadRule, FormatError> {
    rule_from_repr(&serde_json::from_str(text)?)
}

/// `{"exact": "...", "decimal": "..."}`.
pub fn exact_json(x: &ExactScalar) -> Value {
    let decimal = format_sci(&x.to_float(256), DECIMAL_DIGITS);
    json!({ "exact": x.to_string(), "decimal": decimal })
}

pub fn classification_json(c: &RuleClassification) -> Value {
    json!({
        "degree": c.degree,
        "principal_moment": exact_json(&ExactScalar::from(&c.principal_moment)),
        "rule_moment": exact_json(&c.rule_moment),
        "gamma": exact_json(&c.defect),
        "sign": c.sign.as_str(),
        "exact_on_constants": !c.not_exact_on_constants,
    })
}

/// Keys: `coefficients`, `coefficient_sum`, `bracketing`, `inputs`,
/// `flattened`, `classification`.
pub fn combine_report_json(report: &CombineReport) -> Result<Value, FormatError> {
    let inputs = report
        .combination
        .terms
        .iter()
        .zip(&report.input_class)
        .map(|((_, rule), class)| Ok(json!({ "rule": rule_to_json(rule)?, "classification": classification_json(class) })))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(json!({
        "coefficients": report.combination.coefficients().map(ToString::to_string).collect::<Vec<_>>(),
        "coefficient_sum": report.combination.coefficient_sum().to_string(),
        "bracketing": report.bracketing,
        "inputs": inputs,
        "flattened": rule_to_json(&report.flattened)?,
        "classification": classification_json(&report.output_class),
    }))
}

/// Keys: `label`, `base`, `nodes`, `coefficients`, `coefficient_sum`,
/// `degree`, `gamma`, `flattened`, `classification`, `warning`.
pub fn built_rule_json(built: &BuiltRule) -> Result<Value, FormatError> {
    let sum = built.coefficients.iter().fold(Rational::new(), |acc, c| acc + c);
    Ok(json!({
        "label": built.input.label(),
        "base": built.input.base().as_str(),
        "nodes": built.input.positive_nodes().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "coefficients": built.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "coefficient_sum": sum.to_string(),
        "degree": built.degree(),
        "gamma": exact_json(built.gamma()),
        "flattened": rule_to_json(&built.flattened)?,
        "classification": classification_json(&built.classification),
        "warning": built.warning.as_ref().map(ToString::to_string),
    }))
}
