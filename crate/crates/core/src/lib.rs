//! Exact construction and evaluation of combined quadrature rules on [-1, 1].
//!
//! Rules are built from exact nodes ([`exact::ExactScalar`]) and rational
//! weights, classified by degree of precision and the sign of their defect,
//! and combined pairwise or from families of degree-one rules into rules of
//! higher degree. The [`composite`] module evaluates any rule on `[a, b]`
//! subdivided into `n` panels at arbitrary precision.

pub mod builder;
pub mod combine;
pub mod composite;
pub mod exact;
pub mod expr;
pub mod families;
pub mod format;
pub mod linsolve;
pub mod rules;

pub use builder::{build_combined, BaseRule, BuildError, BuilderInput, BuiltRule};
pub use combine::{combine_pair, least_squares_coeffs, mean_rule, CombineError, CombineReport, LinearCombination};
pub use composite::{composite_apply, CompositeError, CompositeJob, CompositeValue, NumericContext, Reference};
pub use exact::{parse_rational, surd_canonicalize, ExactError, ExactScalar};
pub use expr::{Expr, ExprError};
pub use families::{FamilyError, RegionLabel};
pub use format::FormatError;
pub use rug::{Float, Integer, Rational};
pub use rules::{apply_monomial, classify, is_companion, moment, QuadPoint, QuadRule, RuleClassification, RuleError, RuleSign};

/// Any error raised by this crate, tagged with the module it came from.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("exact: {0}")]
    Exact(#[from] ExactError),
    #[error("rules: {0}")]
    Rule(#[from] RuleError),
    #[error("combine: {0}")]
    Combine(#[from] CombineError),
    #[error("families: {0}")]
    Family(#[from] FamilyError),
    #[error("builder: {0}")]
    Build(#[from] BuildError),
    #[error("composite: {0}")]
    Composite(#[from] CompositeError),
    #[error("expr: {0}")]
    Expr(#[from] ExprError),
    #[error("format: {0}")]
    Format(#[from] FormatError),
}
