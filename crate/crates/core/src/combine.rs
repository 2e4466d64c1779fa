//! Pairwise combination of rules of equal degree into a rule of higher
//! degree: the combined rule, the mean rule, and the least-squares
//! characterization of their coefficients.

use std::collections::BTreeMap;

use rug::Rational;

use crate::exact::ExactScalar;
use crate::linsolve::{self, SolveError};
use crate::rules::{classify, moment, QuadRule, RuleClassification, RuleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombineError {
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("rules have different degrees ({0} and {1})")]
    DegreeMismatch(i32, i32),
    #[error("rules are not exact on constants (degree {0})")]
    NegativeDegree(i32),
    #[error("both rules give the same value {0} on t^{1}; use the mean rule instead")]
    EqualMoments(ExactScalar, u32),
    #[error("rule moment {0} is irrational, so no rational coefficients exist")]
    IrrationalMoment(ExactScalar),
    #[error("normal equations are singular")]
    Singular,
}

impl From<SolveError> for CombineError {
    fn from(_: SolveError) -> Self {
        CombineError::Singular
    }
}

/// `Σ c_i · Q_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCombination {
    pub terms: Vec<(Rational, QuadRule)>,
}

impl LinearCombination {
    pub fn new(terms: Vec<(Rational, QuadRule)>) -> Self {
        Self { terms }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        self.terms.iter().map(|(c, _)| c)
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.coefficients().fold(Rational::new(), |acc, c| acc + c)
    }

    pub fn flatten(&self) -> QuadRule {
        flatten(self)
    }
}

/// Merges every `(node, coefficient · weight)` contribution into one rule.
/// Weights on equal nodes are summed and zero weights dropped.
pub fn flatten(combination: &LinearCombination) -> QuadRule {
    let mut merged: BTreeMap<ExactScalar, Rational> = BTreeMap::new();
    for (coeff, rule) in &combination.terms {
        for p in rule.points() {
            *merged.entry(p.node.clone()).or_default() += Rational::from(coeff * &p.weight);
        }
    }
    let label = combination.terms.iter().map(|(c, r)| format!("{c}*{}", r.label())).collect::<Vec<_>>().join(" + ");
    let first = merged.keys().next().cloned();
    let mut points: Vec<(ExactScalar, Rational)> = merged.into_iter().filter(|(_, w)| *w != 0).collect();
    if points.is_empty() {
        // every weight cancelled: the zero functional, kept as one zero-weight point
        points.extend(first.map(|x| (x, Rational::new())));
    }
    QuadRule::new(label, points).expect("nodes of valid rules stay distinct and inside [-1, 1] after merging")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombineReport {
    pub combination: LinearCombination,
    pub flattened: QuadRule,
    pub input_class: [RuleClassification; 2],
    pub output_class: RuleClassification,
    /// Both coefficients nonnegative, so the combined value lies between the
    /// values of the two inputs for every integrand.
    pub bracketing: bool,
}

impl CombineReport {
    pub fn alpha(&self) -> &Rational {
        &self.combination.terms[0].0
    }

    pub fn beta(&self) -> &Rational {
        &self.combination.terms[1].0
    }
}

struct PairMoments {
    degree: i32,
    classes: [RuleClassification; 2],
}

fn classify_pair(a: &QuadRule, b: &QuadRule) -> Result<PairMoments, CombineError> {
    let ca = classify(a)?;
    let cb = classify(b)?;
    if ca.degree != cb.degree {
        return Err(CombineError::DegreeMismatch(ca.degree, cb.degree));
    }
    if ca.degree < 0 {
        return Err(CombineError::NegativeDegree(ca.degree));
    }
    Ok(PairMoments { degree: ca.degree, classes: [ca, cb] })
}

fn rational_moment(class: &RuleClassification) -> Result<&Rational, CombineError> {
    class.rule_moment.as_rational().ok_or_else(|| CombineError::IrrationalMoment(class.rule_moment.clone()))
}

/// `α = (μ - μ_B)/(μ_A - μ_B)`, `β = (μ_A - μ)/(μ_A - μ_B)`.
fn degree_raising_coefficients(mu: &Rational, mu_a: &Rational, mu_b: &Rational) -> (Rational, Rational) {
    let denom = Rational::from(mu_a - mu_b);
    let alpha = Rational::from(mu - mu_b) / &denom;
    let beta = Rational::from(mu_a - mu) / &denom;
    (alpha, beta)
}

fn report(
    a: &QuadRule,
    b: &QuadRule,
    alpha: Rational,
    beta: Rational,
    classes: [RuleClassification; 2],
) -> Result<CombineReport, CombineError> {
    let bracketing = alpha >= 0 && beta >= 0;
    let combination = LinearCombination::new(vec![(alpha, a.clone()), (beta, b.clone())]);
    let flattened = combination.flatten();
    let output_class = classify(&flattened)?;
    Ok(CombineReport { combination, flattened, input_class: classes, output_class, bracketing })
}

/// The combined rule of two rules of equal degree `m` with `μ_A ≠ μ_B`; it
/// is exact on `t^(m+1)` and so has degree at least `m + 1`.
pub fn combine_pair(a: &QuadRule, b: &QuadRule) -> Result<CombineReport, CombineError> {
    let pair = classify_pair(a, b)?;
    let [ca, cb] = &pair.classes;
    if ca.rule_moment == cb.rule_moment {
        return Err(CombineError::EqualMoments(ca.rule_moment.clone(), ca.failing_index()));
    }
    let (mu_a, mu_b) = (rational_moment(ca)?, rational_moment(cb)?);
    let mu = moment((pair.degree + 1) as u32);
    let (alpha, beta) = degree_raising_coefficients(&mu, mu_a, mu_b);
    report(a, b, alpha, beta, pair.classes)
}

/// The mean rule: the arithmetic mean when `μ_A = μ_B`, otherwise the same
/// coefficients as [`combine_pair`].
pub fn mean_rule(a: &QuadRule, b: &QuadRule) -> Result<CombineReport, CombineError> {
    let pair = classify_pair(a, b)?;
    let [ca, cb] = &pair.classes;
    if ca.rule_moment == cb.rule_moment {
        let half = Rational::from((1, 2));
        return report(a, b, half.clone(), half, pair.classes);
    }
    let (mu_a, mu_b) = (rational_moment(ca)?, rational_moment(cb)?);
    let mu = moment((pair.degree + 1) as u32);
    let (alpha, beta) = degree_raising_coefficients(&mu, mu_a, mu_b);
    report(a, b, alpha, beta, pair.classes)
}

/// Least-squares fit of `α v_A + β v_B` to the moment vector
/// `(μ_0, …, μ_m, μ)`, solved exactly from the 2×2 normal equations.
pub fn least_squares_coeffs(a: &QuadRule, b: &QuadRule) -> Result<(Rational, Rational), CombineError> {
    let pair = classify_pair(a, b)?;
    let [ca, cb] = &pair.classes;
    let (mu_a, mu_b) = (rational_moment(ca)?, rational_moment(cb)?);
    let mu = moment((pair.degree + 1) as u32);
    let s = (0..=pair.degree as u32).fold(Rational::new(), |acc, i| {
        let m = moment(i);
        acc + Rational::from(&m * &m)
    });
    let gram = vec![
        vec![Rational::from(mu_a * mu_a) + &s, Rational::from(mu_a * mu_b) + &s],
        vec![Rational::from(mu_a * mu_b) + &s, Rational::from(mu_b * mu_b) + &s],
    ];
    let rhs = vec![Rational::from(mu_a * &mu) + &s, Rational::from(mu_b * &mu) + &s];
    let x = linsolve::solve(&gram, &rhs)?;
    let mut it = x.into_iter();
    Ok((it.next().expect("two unknowns"), it.next().expect("two unknowns")))
}
