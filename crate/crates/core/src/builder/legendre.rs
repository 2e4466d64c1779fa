//! Roots of Legendre polynomials at arbitrary precision.

use rug::float::Constant;
use rug::Float;

use super::BuildError;

const GUARD_DIGITS: u32 = 20;
const MAX_NEWTON_STEPS: usize = 200;

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 1
}

/// `(P_n(t), P_n'(t))` from the three-term recurrence.
fn legendre_pair(n: u32, t: &Float) -> (Float, Float) {
    let prec = t.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = t.clone();
    for j in 1..n {
        // (j+1) P_{j+1} = (2j+1) t P_j - j P_{j-1}
        let mut next = Float::with_val(prec, t * &p1) * (2 * j + 1);
        next -= Float::with_val(prec, &p0 * j);
        next /= j + 1;
        p0 = std::mem::replace(&mut p1, next);
    }
    if n == 0 {
        return (Float::with_val(prec, 1), Float::new(prec));
    }
    // (t² - 1) P_n' = n (t P_n - P_{n-1})
    let num = (Float::with_val(prec, t * &p1) - &p0) * n;
    let den = Float::with_val(prec, t * t) - 1u32;
    (p1, num / den)
}

/// The `n` roots of `P_n` in ascending order, accurate to `digits`
/// significant digits.
pub fn legendre_roots(n: u32, digits: u32) -> Result<Vec<Float>, BuildError> {
    if n == 0 {
        return Err(BuildError::InvalidArgument("Legendre degree must be positive"));
    }
    let prec = digits_to_bits(digits + GUARD_DIGITS);
    let stop = Float::with_val(prec, Float::i_exp(1, -(digits_to_bits(digits + GUARD_DIGITS / 2) as i32)));
    let pi = Float::with_val(prec, Constant::Pi);
    let mut roots = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let angle = Float::with_val(prec, &pi * (Float::with_val(prec, i) - 0.25f64)) / (Float::with_val(prec, n) + 0.5f64);
        let mut t = angle.cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON_STEPS {
            let (p, dp) = legendre_pair(n, &t);
            let step = p / dp;
            t -= &step;
            if step.is_zero() || step.abs() <= stop {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(BuildError::NoConvergence { root: i as usize });
        }
        roots.push(t);
    }
    roots.reverse();
    Ok(roots)
}
