//! Rational approximation of reals by continued fractions.

use rug::{Float, Integer, Rational};

fn simplest_nonnegative(lo: &Rational, hi: &Rational) -> Rational {
    // smallest-denominator rational in [lo, hi], 0 <= lo <= hi
    let ceil = Rational::from(lo.ceil_ref());
    if ceil <= *hi {
        return ceil;
    }
    let n = Rational::from(lo.floor_ref());
    let upper = Rational::from(lo - &n).recip();
    let lower = Rational::from(hi - &n).recip();
    n + simplest_nonnegative(&lower, &upper).recip()
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if *lo <= 0 && *hi >= 0 {
        Rational::new()
    } else if *lo > 0 {
        simplest_nonnegative(lo, hi)
    } else {
        -simplest_nonnegative(&Rational::from(-hi), &Rational::from(-lo))
    }
}

/// Smallest-denominator `p/q` with `|x - p/q| <= tolerance`. Among
/// candidates sharing that denominator the one nearest `x` wins.
///
/// # Panics
///
/// If `tolerance` is not positive.
pub fn rationalize_exact(x: &Rational, tolerance: &Rational) -> Rational {
    assert!(*tolerance > 0, "tolerance must be positive");
    let lo = Rational::from(x - tolerance);
    let hi = Rational::from(x + tolerance);
    let q = simplest_in_interval(&lo, &hi).into_numer_denom().1;
    let p = Rational::from(x * &q).round();
    let p = p.into_numer_denom().0;
    Rational::from((p, q))
}

/// [`rationalize_exact`] applied to the exact binary value of `x`.
///
/// # Panics
///
/// If `x` is not finite or `tolerance` is not positive.
pub fn rationalize(x: &Float, tolerance: &Rational) -> Rational {
    let exact = x.to_rational().expect("finite value");
    rationalize_exact(&exact, tolerance)
}

/// First continued-fraction convergent of `x` within `tolerance`. This can
/// have a larger denominator than [`rationalize`] since semiconvergents
/// are skipped; it matches what common computer algebra systems return.
///
/// # Panics
///
/// If `x` is not finite or `tolerance` is not positive.
pub fn rationalize_convergent(x: &Float, tolerance: &Rational) -> Rational {
    assert!(*tolerance > 0, "tolerance must be positive");
    let exact = x.to_rational().expect("finite value");
    let (mut p0, mut q0) = (Integer::from(1), Integer::new());
    let (mut p1, mut q1) = (Integer::new(), Integer::from(1));
    let mut rest = exact.clone();
    loop {
        let a = Rational::from(rest.floor_ref()).into_numer_denom().0;
        let p2 = Integer::from(&a * &p0) + &p1;
        let q2 = Integer::from(&a * &q0) + &q1;
        let c = Rational::from((p2.clone(), q2.clone()));
        if Rational::from(&c - &exact).abs() <= *tolerance {
            return c;
        }
        let frac = rest - &a;
        (p1, q1, p0, q0) = (p0, q0, p2, q2);
        rest = frac.recip();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn brute_force(x: &Rational, tol: &Rational, max_den: u32) -> Option<Rational> {
        (1..=max_den).find_map(|d| {
            let p = Rational::from(x * d).round();
            let c = p / d;
            (Rational::from(&c - x).abs() <= *tol).then_some(c)
        })
    }

    #[test]
    fn small_cases() {
        let x = Float::with_val(128, Float::parse("0.333333333").unwrap());
        assert_eq!(rationalize(&x, &q(1, 1_000_000)), q(1, 3));
        assert_eq!(rationalize_exact(&q(1, 2), &q(1, 1_000_000_000)), q(1, 2));
        assert_eq!(rationalize_exact(&q(2, 5), &q(1, 1)), q(0, 1));
        assert_eq!(rationalize_exact(&q(-7, 3), &q(1, 100)), q(-7, 3));
        assert_eq!(rationalize_exact(&q(22, 7), &q(1, 10)), q(16, 5));
        let pi = Float::with_val(200, rug::float::Constant::Pi);
        assert_eq!(rationalize(&pi, &q(1, 1000)), q(201, 64));
        assert_eq!(rationalize_convergent(&pi, &q(1, 1000)), q(333, 106));
        assert_eq!(rationalize_convergent(&pi, &q(1, 1_000_000)), q(355, 113));
    }

    proptest! {
        #[test]
        fn minimal_denominator(n in -100_000i64..100_000, d in 1i64..100_000, t in 1i64..2000) {
            let x = q(n, d);
            let tol = q(1, t * t);
            let r = rationalize_exact(&x, &tol);
            prop_assert!(Rational::from(&r - &x).abs() <= tol);
            let sweep = brute_force(&x, &tol, 10_000);
            if let Some(b) = sweep {
                prop_assert_eq!(r.denom(), b.denom());
            } else {
                prop_assert!(*r.denom() > 10_000);
            }
        }

        #[test]
        fn convergent_within_tolerance(n in 1i64..1_000_000_000, e in 2u32..14) {
            let x = Float::with_val(256, n) / 1_000_000_007u64;
            let tol = Rational::from((1, Integer::from(Integer::u_pow_u(10, e))));
            let c = rationalize_convergent(&x, &tol);
            let s = rationalize(&x, &tol);
            let exact = x.to_rational().unwrap();
            prop_assert!(Rational::from(&c - &exact).abs() <= tol);
            prop_assert!(s.denom() <= c.denom());
        }
    }
}
