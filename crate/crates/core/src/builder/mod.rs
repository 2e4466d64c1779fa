//! Degree `2k+1` combined rules from `k+1` symmetric degree-one rules.
//!
//! `Q_0` is the midpoint rule `2 g(0)` or the trapezoidal rule
//! `g(-1) + g(1)`, and `Q_j(g) = g(-t_j) + g(t_j)` for the positive nodes
//! `t_1..t_k`. The coefficients of `W_k = Σ a_j Q_j` match the even
//! moments through `t^{2k}`; odd moments vanish by symmetry.

mod legendre;
mod rationalize;

use std::fmt;

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rug::{Integer, Rational};

use crate::combine::{flatten, LinearCombination};
use crate::exact::ExactScalar;
use crate::linsolve::{solve, solve_vandermonde, SolveError};
use crate::rules::{classify, QuadRule, RuleClassification, RuleError};

pub use legendre::legendre_roots;
pub use rationalize::{rationalize, rationalize_convergent, rationalize_exact, simplest_in_interval};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("at least one positive node is required")]
    NoNodes,
    #[error("node {0} is not strictly inside (0, 1)")]
    NodeOutOfRange(Rational),
    #[error("node {0} appears twice")]
    DuplicateNode(Rational),
    #[error("moment system is singular")]
    Singular,
    #[error("Newton iteration for root {root} did not converge")]
    NoConvergence { root: usize },
    #[error("no {k} distinct nodes after {attempts} draws")]
    RejectionLimit { k: usize, attempts: usize },
    #[error("{0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

impl From<SolveError> for BuildError {
    fn from(_: SolveError) -> Self {
        BuildError::Singular
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseRule {
    Midpoint,
    Trapezoid,
}

impl BaseRule {
    pub fn as_str(self) -> &'static str {
        match self {
            BaseRule::Midpoint => "midpoint",
            BaseRule::Trapezoid => "trapezoid",
        }
    }

    /// `t_0²`: 0 for the midpoint rule, 1 for the trapezoidal rule.
    fn square_node(self) -> Rational {
        match self {
            BaseRule::Midpoint => Rational::new(),
            BaseRule::Trapezoid => Rational::from(1),
        }
    }

    fn rule(self) -> QuadRule {
        match self {
            BaseRule::Midpoint => QuadRule::midpoint(),
            BaseRule::Trapezoid => QuadRule::trapezoidal(),
        }
    }
}

impl fmt::Display for BaseRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BaseRule {
    type Err = BuildError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "midpoint" => Ok(BaseRule::Midpoint),
            "trapezoid" | "trapezoidal" => Ok(BaseRule::Trapezoid),
            _ => Err(BuildError::InvalidArgument("base rule must be midpoint or trapezoid")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuilderInput {
    positive_nodes: Vec<Rational>,
    base: BaseRule,
    label: String,
}

impl BuilderInput {
    pub fn new(positive_nodes: Vec<Rational>, base: BaseRule, label: impl Into<String>) -> Result<Self, BuildError> {
        if positive_nodes.is_empty() {
            return Err(BuildError::NoNodes);
        }
        if let Some(t) = positive_nodes.iter().find(|t| **t <= 0 || **t >= 1) {
            return Err(BuildError::NodeOutOfRange(t.clone()));
        }
        let mut sorted = positive_nodes.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(BuildError::DuplicateNode(w[0].clone()));
        }
        Ok(Self { positive_nodes, base, label: label.into() })
    }

    pub fn positive_nodes(&self) -> &[Rational] {
        &self.positive_nodes
    }

    pub fn base(&self) -> BaseRule {
        self.base
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn k(&self) -> usize {
        self.positive_nodes.len()
    }
}

/// Emitted when two squared nodes lie closer than [`CONDITIONING_THRESHOLD`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditioningWarning {
    pub min_gap: Rational,
    /// Indices into `0..=k`, 0 being the base rule.
    pub pair: (usize, usize),
}

impl fmt::Display for ConditioningWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "squared nodes {} and {} differ by {:.3e}; floating-point application may lose digits",
            self.pair.0,
            self.pair.1,
            self.min_gap.to_f64()
        )
    }
}

pub const CONDITIONING_THRESHOLD: (u32, u32) = (1, 1000);

#[derive(Debug, Clone)]
pub struct BuiltRule {
    pub input: BuilderInput,
    /// `a_0..a_k`, `a_0` belonging to the base rule.
    pub coefficients: Vec<Rational>,
    pub combination: LinearCombination,
    pub flattened: QuadRule,
    pub classification: RuleClassification,
    pub warning: Option<ConditioningWarning>,
}

impl BuiltRule {
    pub fn gamma(&self) -> &ExactScalar {
        &self.classification.defect
    }

    pub fn degree(&self) -> i32 {
        self.classification.degree
    }
}

fn symmetric_pair(t: &Rational) -> QuadRule {
    QuadRule::from_rationals(format!("pair({t})"), [(Rational::from(-t), Rational::from(1)), (t.clone(), Rational::from(1))])
        .expect("t in (0, 1)")
}

fn conditioning(squares: &[Rational]) -> Option<ConditioningWarning> {
    let mut order: Vec<usize> = (0..squares.len()).collect();
    order.sort_by(|&a, &b| squares[a].cmp(&squares[b]));
    let (gap, pair) = order
        .windows(2)
        .map(|w| (Rational::from(&squares[w[1]] - &squares[w[0]]), (w[0].min(w[1]), w[0].max(w[1]))))
        .min_by(|a, b| a.0.cmp(&b.0))?;
    (gap < Rational::from(CONDITIONING_THRESHOLD)).then_some(ConditioningWarning { min_gap: gap, pair })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolveMethod {
    /// Björck–Pereyra on the Vandermonde structure, `O(k²)`.
    #[default]
    Vandermonde,
    /// Dense elimination with partial pivoting, `O(k³)`.
    Elimination,
}

fn squared_nodes(input: &BuilderInput) -> Vec<Rational> {
    std::iter::once(input.base.square_node()).chain(input.positive_nodes.iter().map(|t| Rational::from(t * t))).collect()
}

/// Coefficients `a_0..a_k` from `Σ_j a_j x_j^i = 1/(2i+1)`, `i = 0..k`,
/// with `x_j = t_j²` and `0^0 = 1`.
pub fn solve_coefficients(input: &BuilderInput) -> Result<Vec<Rational>, BuildError> {
    solve_coefficients_with(input, SolveMethod::default())
}

pub fn solve_coefficients_with(input: &BuilderInput, method: SolveMethod) -> Result<Vec<Rational>, BuildError> {
    let squares = squared_nodes(input);
    let n = squares.len();
    let rhs: Vec<Rational> = (0..n as u32).map(|i| Rational::from((1, 2 * i + 1))).collect();
    if method == SolveMethod::Vandermonde {
        return Ok(solve_vandermonde(&squares, &rhs)?);
    }
    let mut matrix = vec![Vec::with_capacity(n); n];
    let mut powers = vec![Rational::from(1); n];
    for row in matrix.iter_mut() {
        row.extend(powers.iter().cloned());
        for (p, x) in powers.iter_mut().zip(&squares) {
            *p *= x;
        }
    }
    Ok(solve(&matrix, &rhs)?)
}

/// Builds `W_k` and verifies its degree exactly.
pub fn build_combined(input: &BuilderInput) -> Result<BuiltRule, BuildError> {
    let coefficients = solve_coefficients(input)?;
    let rules = std::iter::once(input.base.rule()).chain(input.positive_nodes.iter().map(symmetric_pair));
    let combination = LinearCombination::new(coefficients.iter().cloned().zip(rules).collect());
    let flattened = flatten(&combination).with_label(input.label.clone());
    let classification = classify(&flattened)?;
    let squares = squared_nodes(input);
    Ok(BuiltRule { input: input.clone(), coefficients, combination, flattened, classification, warning: conditioning(&squares) })
}

/// A uniform draw `m / 2^53` from the top 53 bits of the next output.
fn draw(rng: &mut SplitMix64) -> Rational {
    let m = rng.next_u64() >> 11;
    Rational::from((Integer::from(m), Integer::from(1) << 53))
}

/// `k` distinct rationals in `(0, 1)` from a SplitMix64 stream seeded with
/// `seed`, each the smallest-denominator rational within `tolerance` of a draw.
pub fn random_rational_nodes(seed: u64, k: usize, tolerance: &Rational) -> Result<Vec<Rational>, BuildError> {
    if k == 0 {
        return Err(BuildError::InvalidArgument("k must be positive"));
    }
    if *tolerance <= 0 || *tolerance >= 1 {
        return Err(BuildError::InvalidArgument("tolerance must lie in (0, 1)"));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let limit = 1000 * k;
    let mut nodes: Vec<Rational> = Vec::with_capacity(k);
    for _ in 0..limit {
        let u = draw(&mut rng);
        if u == 0 {
            continue;
        }
        let t = rationalize_exact(&u, tolerance);
        if t <= 0 || t >= 1 || nodes.contains(&t) {
            continue;
        }
        nodes.push(t);
        if nodes.len() == k {
            return Ok(nodes);
        }
    }
    Err(BuildError::RejectionLimit { k, attempts: limit })
}
