//! Quadrature rules on [-1, 1], their exact monomial moments, and the
//! degree / defect / sign classification.

use std::cmp::Ordering;
use std::fmt;

use rug::Rational;

use crate::exact::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("a rule needs at least one point")]
    Empty,
    #[error("node {0} appears more than once")]
    DuplicateNode(ExactScalar),
    #[error("node {0} lies outside [-1, 1]")]
    NodeOutOfRange(ExactScalar),
    #[error("no failing monomial up to degree {cap}; rule data is corrupt")]
    DegreeCapExceeded { cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoint {
    pub node: ExactScalar,
    pub weight: Rational,
}

/// A finite set of `(node, weight)` pairs, stored with nodes ascending.
///
/// The label is descriptive only and is ignored by equality.
#[derive(Debug, Clone)]
pub struct QuadRule {
    points: Vec<QuadPoint>,
    label: String,
}

impl PartialEq for QuadRule {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for QuadRule {}

impl QuadRule {
    pub fn new<I>(label: impl Into<String>, points: I) -> Result<Self, RuleError>
    where
        I: IntoIterator<Item = (ExactScalar, Rational)>,
    {
        let mut points: Vec<QuadPoint> = points.into_iter().map(|(node, weight)| QuadPoint { node, weight }).collect();
        if points.is_empty() {
            return Err(RuleError::Empty);
        }
        let one = ExactScalar::one();
        let minus_one = -&one;
        for p in &points {
            if p.node > one || p.node < minus_one {
                return Err(RuleError::NodeOutOfRange(p.node.clone()));
            }
        }
        points.sort_by(|a, b| a.node.cmp(&b.node));
        if let Some(w) = points.windows(2).find(|w| w[0].node == w[1].node) {
            return Err(RuleError::DuplicateNode(w[0].node.clone()));
        }
        Ok(Self { points, label: label.into() })
    }

    /// Convenience constructor for rules whose nodes are all rational.
    pub fn from_rationals<I>(label: impl Into<String>, points: I) -> Result<Self, RuleError>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        Self::new(label, points.into_iter().map(|(x, w)| (ExactScalar::from(x), w)))
    }

    /// `M(g) = 2 g(0)`
    pub fn midpoint() -> Self {
        Self::from_rationals("midpoint", [(Rational::new(), Rational::from(2))]).expect("valid rule")
    }

    /// `T(g) = g(-1) + g(1)`
    pub fn trapezoidal() -> Self {
        Self::from_rationals("trapezoidal", [(Rational::from(-1), Rational::from(1)), (Rational::from(1), Rational::from(1))])
            .expect("valid rule")
    }

    /// `S(g) = (g(-1) + 4 g(0) + g(1)) / 3`
    pub fn simpson() -> Self {
        let third = Rational::from((1, 3));
        Self::from_rationals(
            "simpson",
            [(Rational::from(-1), third.clone()), (Rational::new(), Rational::from((4, 3))), (Rational::from(1), third)],
        )
        .expect("valid rule")
    }

    pub fn points(&self) -> &[QuadPoint] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn weight_sum(&self) -> Rational {
        self.points.iter().fold(Rational::new(), |acc, p| acc + &p.weight)
    }

    pub fn all_nodes_rational(&self) -> bool {
        self.points.iter().all(|p| p.node.is_rational())
    }

    /// True when the node set is closed under negation with matching weights.
    pub fn is_symmetric(&self) -> bool {
        let n = self.points.len();
        (0..n).all(|i| {
            let (a, b) = (&self.points[i], &self.points[n - 1 - i]);
            a.node == -&b.node && a.weight == b.weight
        })
    }

    /// Applies the rule to values already computed at each node.
    pub fn apply_values<'a, I>(&self, values: I) -> ExactScalar
    where
        I: IntoIterator<Item = &'a ExactScalar>,
    {
        self.points.iter().zip(values).fold(ExactScalar::zero(), |acc, (p, v)| &acc + &v.mul_rational(&p.weight))
    }

    /// Iterator over `Q(φ_0), Q(φ_1), …` computed with running node powers.
    pub fn monomial_moments(&self) -> MonomialMoments<'_> {
        MonomialMoments { rule: self, powers: Vec::new() }
    }
}

impl fmt::Display for QuadRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.label)?;
        for p in &self.points {
            write!(f, " [{} @ {}]", p.weight, p.node)?;
        }
        Ok(())
    }
}

pub struct MonomialMoments<'a> {
    rule: &'a QuadRule,
    powers: Vec<ExactScalar>,
}

impl Iterator for MonomialMoments<'_> {
    type Item = ExactScalar;

    fn next(&mut self) -> Option<ExactScalar> {
        if self.powers.is_empty() {
            self.powers = vec![ExactScalar::one(); self.rule.points.len()];
        } else {
            for (power, p) in self.powers.iter_mut().zip(&self.rule.points) {
                *power = &*power * &p.node;
            }
        }
        let mut rational = Rational::new();
        let mut rest = ExactScalar::zero();
        for (power, p) in self.powers.iter().zip(&self.rule.points) {
            match power.as_rational() {
                Some(r) => rational += Rational::from(r * &p.weight),
                None => rest = &rest + &power.mul_rational(&p.weight),
            }
        }
        Some(rest.add_rational(&rational))
    }
}

/// `∫_{-1}^{1} t^j dt`: zero for odd `j`, `2/(j+1)` for even `j`.
pub fn moment(j: u32) -> Rational {
    if j % 2 == 1 {
        Rational::new()
    } else {
        Rational::from((2, j + 1))
    }
}

/// `Q(φ_j) = Σ w_i t_i^j`, exactly.
pub fn apply_monomial(rule: &QuadRule, j: u32) -> ExactScalar {
    rule.points.iter().fold(ExactScalar::zero(), |acc, p| &acc + &p.node.pow(j).mul_rational(&p.weight))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleSign {
    Positive,
    Negative,
}

impl RuleSign {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleSign::Positive => "positive",
            RuleSign::Negative => "negative",
        }
    }
}

impl fmt::Display for RuleSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleClassification {
    /// Degree of precision; `-1` when the rule is not even exact for constants.
    pub degree: i32,
    /// `∫ t^(m+1) dt`.
    pub principal_moment: Rational,
    /// `Q(t^(m+1))`.
    pub rule_moment: ExactScalar,
    /// `γ = μ - Q(t^(m+1))`, never zero.
    pub defect: ExactScalar,
    pub sign: RuleSign,
    /// Set when the rule fails on constants (degree `-1`).
    pub not_exact_on_constants: bool,
}

impl RuleClassification {
    /// The index `m + 1` of the first monomial the rule gets wrong.
    pub fn failing_index(&self) -> u32 {
        (self.degree + 1) as u32
    }
}

/// Degree, principal moment, defect and sign of a rule.
///
/// The search stops at `t^(2n)`; no rule with `n` distinct nodes can be exact
/// there, so reaching the cap means the rule data is corrupt.
pub fn classify(rule: &QuadRule) -> Result<RuleClassification, RuleError> {
    let cap = 2 * rule.len() as u32;
    for (j, rule_moment) in rule.monomial_moments().enumerate().take(cap as usize + 1) {
        let j = j as u32;
        let principal_moment = moment(j);
        if rule_moment.as_rational() == Some(&principal_moment) {
            continue;
        }
        let defect = &ExactScalar::from(&principal_moment) - &rule_moment;
        let sign = match defect.signum() {
            Ordering::Greater => RuleSign::Positive,
            Ordering::Less => RuleSign::Negative,
            Ordering::Equal => unreachable!("nonzero defect"),
        };
        return Ok(RuleClassification {
            degree: j as i32 - 1,
            principal_moment,
            rule_moment,
            defect,
            sign,
            not_exact_on_constants: j == 0,
        });
    }
    Err(RuleError::DegreeCapExceeded { cap })
}

/// Equal degree and defects of opposite sign.
pub fn is_companion(a: &QuadRule, b: &QuadRule) -> Result<bool, RuleError> {
    let (ca, cb) = (classify(a)?, classify(b)?);
    Ok(ca.degree == cb.degree && ca.sign != cb.sign)
}
