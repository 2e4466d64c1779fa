//! Composite rules on `[a, b]` at arbitrary precision, and errors against a reference.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::exact::{parse_rational, ExactError, ExactScalar};
use crate::expr::{eval_exact, eval_float_prec, Expr, ExprError};
use crate::rules::QuadRule;

pub const GUARD_DIGITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompositeError {
    #[error("interval [{0}, {1}] is empty")]
    EmptyInterval(Rational, Rational),
    #[error("subdivision count must be positive")]
    ZeroSubdivisions,
    #[error("precision must be at least one digit")]
    ZeroPrecision,
    #[error("integrand at {node}: {source}")]
    Evaluation { node: String, source: ExprError },
    #[error("exact mode unavailable: {0}")]
    ExactUnavailable(&'static str),
    #[error("reference is zero; relative digits undefined")]
    ZeroReference,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn bits_for(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 1
}

/// Decimal working precision. Floats carry `digits + 10` guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericContext {
    digits: u32,
}

impl NumericContext {
    /// # Panics
    ///
    /// If `digits` is 0.
    pub fn new(digits: u32) -> Self {
        assert!(digits > 0, "precision must be at least one digit");
        Self { digits }
    }

    pub fn try_new(digits: u32) -> Result<Self, CompositeError> {
        if digits == 0 {
            return Err(CompositeError::ZeroPrecision);
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        bits_for(self.digits)
    }

    pub fn guard_bits(&self) -> u32 {
        bits_for(self.digits + GUARD_DIGITS)
    }

    /// `digits` significant decimal digits of `x`, round-half-even.
    pub fn format(&self, x: &Float) -> String {
        format_sci(x, self.digits as usize)
    }
}

/// `d.ddd…e±x` with `digits` significant digits, or `0`.
pub fn format_sci(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix_round(10, Some(digits), Round::Nearest);
    // normalise MPFR's `1.23e5` and `-1.23` forms
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    if exp == 0 {
        mantissa
    } else {
        format!("{mantissa}e{exp}")
    }
}

/// `π · 2^bits` truncated, from `16 atan(1/5) - 4 atan(1/239)` with fixed-point integers.
fn machin_fixed(bits: u32) -> Integer {
    fn atan_inv(x: u32, one: &Integer) -> Integer {
        let x2 = x * x;
        let mut term = Integer::from(one / x);
        let mut sum = term.clone();
        let mut k = 1u32;
        let mut negative = true;
        while term != 0 {
            term /= x2;
            k += 2;
            let t = Integer::from(&term / k);
            if negative {
                sum -= t;
            } else {
                sum += t;
            }
            negative = !negative;
        }
        sum
    }
    let guard = 64;
    let one = Integer::from(1) << (bits + guard);
    let pi = atan_inv(5, &one) * 16u32 - atan_inv(239, &one) * 4u32;
    pi >> guard
}

/// π at `prec` bits, rounded to nearest.
pub fn pi_at_bits(prec: u32) -> Float {
    let fixed = machin_fixed(prec + 8);
    Float::with_val(prec, Rational::from((fixed, Integer::from(1) << (prec + 8))))
}

/// Cached π at `prec` bits.
pub(crate) fn pi_guard(prec: u32) -> Arc<Float> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Float>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("pi cache").get(&prec) {
        return v.clone();
    }
    let v = Arc::new(pi_at_bits(prec));
    cache.lock().expect("pi cache").insert(prec, v.clone());
    v
}

/// π at the context's guard precision.
pub fn pi_reference(context: &NumericContext) -> Float {
    Float::with_val(context.guard_bits(), &*pi_guard(context.guard_bits()))
}

/// π to `digits` significant digits, last digit correctly rounded.
pub fn pi_decimal(digits: u32) -> String {
    assert!(digits > 0, "at least one digit");
    let bits = bits_for(digits + 20);
    let fixed = machin_fixed(bits);
    let scaled = Rational::from((fixed * Integer::from(Integer::u_pow_u(10, digits - 1)), Integer::from(1) << bits));
    let n = scaled.round().into_numer_denom().0.to_string();
    if digits == 1 {
        n
    } else {
        format!("{}.{}", &n[..1], &n[1..])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reference {
    Pi,
    Rational(Rational),
    /// Decimal literal, held exactly.
    Decimal(Rational),
}

impl Reference {
    /// `pi`, `p/q`, or a decimal literal.
    pub fn parse(text: &str) -> Result<Self, CompositeError> {
        let text = text.trim();
        if text == "pi" {
            return Ok(Reference::Pi);
        }
        let value = parse_rational(text)?;
        if text.contains(['.', 'e', 'E']) {
            Ok(Reference::Decimal(value))
        } else {
            Ok(Reference::Rational(value))
        }
    }

    pub fn resolve(&self, context: &NumericContext) -> Float {
        match self {
            Reference::Pi => pi_reference(context),
            Reference::Rational(r) | Reference::Decimal(r) => Float::with_val(context.guard_bits(), r),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ErrorReport {
    /// `reference - value`.
    pub signed_error: Float,
    /// `None` for a zero reference.
    pub significant_digits: Option<u32>,
}

/// `reference - value` and `floor(-log10(|error| / |reference|))`, capped
/// at the context digits and 0 when the error exceeds the reference.
pub fn error_report(value: &Float, reference: &Float, context: &NumericContext) -> ErrorReport {
    let prec = context.guard_bits();
    let signed_error = Float::with_val(prec, reference - value);
    let significant_digits = if reference.is_zero() {
        None
    } else if signed_error.is_zero() {
        Some(context.digits())
    } else {
        let rel = Float::with_val(prec, &signed_error / reference).abs();
        let digits = (-rel.log10()).floor();
        let d = if digits < 0 { 0 } else { digits.to_f64() as u32 };
        Some(d.min(context.digits()))
    };
    ErrorReport { signed_error, significant_digits }
}

/// A rule mapped from `[-1, 1]` to `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportedRule {
    pub a: Rational,
    pub b: Rational,
    pub points: Vec<(ExactScalar, Rational)>,
}

/// Nodes `a + (b - a)(t + 1)/2`, weights scaled by `(b - a)/2`.
pub fn transform(rule: &QuadRule, a: &Rational, b: &Rational) -> Result<TransportedRule, CompositeError> {
    if a >= b {
        return Err(CompositeError::EmptyInterval(a.clone(), b.clone()));
    }
    let half = Rational::from(b - a) / 2u32;
    let mid = Rational::from(a + &half);
    let points = rule.points().iter().map(|p| (p.node.mul_rational(&half).add_rational(&mid), Rational::from(&p.weight * &half))).collect();
    Ok(TransportedRule { a: a.clone(), b: b.clone(), points })
}

#[derive(Debug, Clone)]
pub struct CompositeJob {
    pub rule: QuadRule,
    pub a: Rational,
    pub b: Rational,
    pub n: u32,
    pub integrand: Expr,
    pub context: NumericContext,
    pub reference: Option<Reference>,
    pub exact: bool,
}

impl CompositeJob {
    /// Float-mode job on `[a, b]` with no reference.
    pub fn new(rule: QuadRule, a: Rational, b: Rational, n: u32, integrand: Expr, context: NumericContext) -> Self {
        Self { rule, a, b, n, integrand, context, reference: None, exact: false }
    }

    pub fn with_reference(mut self, reference: Reference) -> Self {
        self.reference = Some(reference);
        self
    }

    pub fn exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn with_n(&self, n: u32) -> Self {
        let mut job = self.clone();
        job.n = n;
        job
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompositeValue {
    Exact(Rational),
    Float(Float),
}

impl CompositeValue {
    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            CompositeValue::Exact(r) => Float::with_val(prec, r),
            CompositeValue::Float(f) => Float::with_val(prec, f),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            CompositeValue::Exact(r) => Some(r),
            CompositeValue::Float(_) => None,
        }
    }
}

fn pairwise<T: Clone>(mut items: Vec<T>, add: impl Fn(&T, &T) -> T) -> Option<T> {
    while items.len() > 1 {
        items = items.chunks(2).map(|c| if c.len() == 2 { add(&c[0], &c[1]) } else { c[0].clone() }).collect();
    }
    items.pop()
}

fn validate(job: &CompositeJob) -> Result<(), CompositeError> {
    if job.a >= job.b {
        return Err(CompositeError::EmptyInterval(job.a.clone(), job.b.clone()));
    }
    if job.n == 0 {
        return Err(CompositeError::ZeroSubdivisions);
    }
    Ok(())
}

fn exact_apply(job: &CompositeJob, h: &Rational) -> Result<Rational, CompositeError> {
    if !job.rule.all_nodes_rational() {
        return Err(CompositeError::ExactUnavailable("rule has irrational nodes"));
    }
    if !job.integrand.is_rational() {
        return Err(CompositeError::ExactUnavailable("integrand is not rational"));
    }
    let half = Rational::from(h / 2u32);
    let panels: Vec<Rational> = (0..job.n)
        .into_par_iter()
        .map(|i| {
            let left: Rational = &job.a + Rational::from(h * i);
            let mut acc = Rational::new();
            for p in job.rule.points() {
                let t = p.node.as_rational().expect("checked rational");
                let x = Rational::from(t + 1u32) * &half + &left;
                let g = eval_exact(&job.integrand, &x).map_err(|source| CompositeError::Evaluation { node: x.to_string(), source })?;
                acc += g * &p.weight;
            }
            Ok(acc * &half)
        })
        .collect::<Result<_, CompositeError>>()?;
    Ok(pairwise(panels, |x, y| Rational::from(x + y)).unwrap_or_default())
}

fn float_apply(job: &CompositeJob, h: &Rational) -> Result<Float, CompositeError> {
    let prec = job.context.guard_bits();
    let half = Rational::from(h / 2u32);
    // (t + 1) h/2 once per node; surd nodes are rounded here, rational ones stay exact
    let offsets: Vec<(Option<Rational>, Float)> = job
        .rule
        .points()
        .iter()
        .map(|p| match p.node.as_rational() {
            Some(t) => {
                let off = Rational::from(t + 1u32) * &half;
                let f = Float::with_val(prec, &off);
                (Some(off), f)
            }
            None => {
                let t = p.node.to_float(prec + 32);
                (None, Float::with_val(prec, (t + 1u32) * Float::with_val(prec + 32, &half)))
            }
        })
        .collect();
    let weights: Vec<Float> = job.rule.points().iter().map(|p| Float::with_val(prec, &p.weight)).collect();
    let scale = Float::with_val(prec, &half);
    let panels: Vec<Float> = (0..job.n)
        .into_par_iter()
        .map(|i| {
            let left: Rational = &job.a + Rational::from(h * i);
            let mut acc = Float::new(prec);
            for ((exact_off, off), w) in offsets.iter().zip(&weights) {
                let x = match exact_off {
                    Some(o) => Float::with_val(prec, Rational::from(&left + o)),
                    None => Float::with_val(prec, off + &left),
                };
                let g = eval_float_prec(&job.integrand, &x, prec)
                    .map_err(|source| CompositeError::Evaluation { node: format_sci(&x, 20), source })?;
                acc += g * w;
            }
            Ok(acc * &scale)
        })
        .collect::<Result<_, CompositeError>>()?;
    Ok(pairwise(panels, |x, y| Float::with_val(prec, x + y)).unwrap_or_else(|| Float::new(prec)))
}

/// Applies the transported rule on `n` equal panels of `[a, b]` and sums
/// the panel values in a fixed balanced tree.
pub fn composite_apply(job: &CompositeJob) -> Result<CompositeValue, CompositeError> {
    validate(job)?;
    let h = Rational::from(&job.b - &job.a) / job.n;
    if job.exact {
        Ok(CompositeValue::Exact(exact_apply(job, &h)?))
    } else {
        Ok(CompositeValue::Float(float_apply(job, &h)?))
    }
}

#[derive(Debug, Clone)]
pub struct ErrorRow {
    pub n: u32,
    pub value: CompositeValue,
    pub report: Option<ErrorReport>,
}

/// Runs the job once per `n` and reports against its reference.
pub fn error_table(job: &CompositeJob, ns: &[u32]) -> Result<Vec<ErrorRow>, CompositeError> {
    let reference = job.reference.as_ref().map(|r| r.resolve(&job.context));
    ns.iter()
        .map(|&n| {
            let value = composite_apply(&job.with_n(n))?;
            let report = reference.as_ref().map(|r| error_report(&value.to_float(job.context.guard_bits()), r, &job.context));
            Ok(ErrorRow { n, value, report })
        })
        .collect()
}

/// CSV with columns `n,value,signed_error,significant_digits`. Exact values
/// are written as `p/q`.
pub fn error_table_csv(rows: &[ErrorRow], context: &NumericContext) -> String {
    let mut out = String::from("n,value,signed_error,significant_digits\n");
    for row in rows {
        let value = match &row.value {
            CompositeValue::Exact(r) => r.to_string(),
            CompositeValue::Float(f) => context.format(f),
        };
        let (err, digits) = match &row.report {
            Some(r) => (format_sci(&r.signed_error, 6), r.significant_digits.map_or(String::new(), |d| d.to_string())),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(out, "{},{},{},{}", row.n, value, err, digits);
    }
    out
}
