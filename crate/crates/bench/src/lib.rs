//! Fixtures shared by the benchmarks in `benches/`.

use combquad_core::builder::random_rational_nodes;
use combquad_core::{BaseRule, BuilderInput, CompositeJob, Expr, NumericContext, QuadRule, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// Nodes from the seeded generator at tolerance 1e-4.
pub fn random_input(seed: u64, k: usize) -> BuilderInput {
    let nodes = random_rational_nodes(seed, k, &q(1, 10_000)).expect("enough distinct nodes");
    BuilderInput::new(nodes, BaseRule::Midpoint, format!("w{k}")).expect("valid nodes")
}

/// `∫_{-1}^{1} 2/(1+t²) dt` with `n` panels at `digits` decimal digits.
pub fn model_job(rule: QuadRule, n: u32, digits: u32) -> CompositeJob {
    let g = Expr::parse("2/(1+t^2)").expect("valid");
    CompositeJob::new(rule, q(-1, 1), q(1, 1), n, g, NumericContext::new(digits))
}
