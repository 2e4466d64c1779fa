//! Exact scalars: rationals extended by rational multiples of square roots
//! of squarefree integers.
//!
//! Every constructor and operation returns the canonical form, so two
//! [`ExactScalar`]s are equal exactly when their components are equal. The
//! set of such numbers is closed under `+`, `-`, `*` and division by a
//! nonzero value: `√a·√b = g·√((a/g)(b/g))` with `g = gcd(a, b)`, and a
//! reciprocal is found by repeatedly multiplying by a conjugate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Largest radicand (numerator times denominator) accepted by
/// [`surd_canonicalize`] unless the caller passes its own bound.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("square root of non-positive value {0}")]
    NonPositiveRadicand(Rational),
    #[error("radicand {0} exceeds the factorization bound {1}")]
    FactorBound(Integer, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    Parse(String),
}

/// `rational + Σ coeff_d · √d` over squarefree `d ≥ 2`, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    rational: Rational,
    surds: BTreeMap<Integer, Rational>,
}

/// Canonical form of `√s` for a positive rational `s`.
pub fn surd_canonicalize(s: &Rational) -> Result<ExactScalar, ExactError> {
    surd_canonicalize_bounded(s, DEFAULT_FACTOR_BOUND)
}

/// As [`surd_canonicalize`], refusing to factor `p·q` above `bound`.
pub fn surd_canonicalize_bounded(s: &Rational, bound: u64) -> Result<ExactScalar, ExactError> {
    if *s <= 0 {
        return Err(ExactError::NonPositiveRadicand(s.clone()));
    }
    // √(p/q) = √(pq)/q
    let (p, q) = s.clone().into_numer_denom();
    let pq = Integer::from(&p * &q);
    let (root, core) = square_split(&pq, bound)?;
    let coeff = Rational::from((root, q));
    Ok(ExactScalar::from_surd_term(coeff, core))
}

/// Splits `n > 0` as `root² · core` with `core` squarefree.
fn square_split(n: &Integer, bound: u64) -> Result<(Integer, Integer), ExactError> {
    if n.is_perfect_square() {
        return Ok((n.clone().sqrt(), Integer::from(1)));
    }
    let m = match n.to_u64() {
        Some(m) if m <= bound => m,
        _ => return Err(ExactError::FactorBound(n.clone(), bound)),
    };
    let mut rest = m;
    let mut root: u64 = 1;
    let mut core: u64 = 1;
    let mut p: u64 = 2;
    while (p as u128) * (p as u128) <= rest as u128 {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            root *= p.pow(e / 2);
            if e % 2 == 1 {
                core *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    core *= rest;
    Ok((Integer::from(root), Integer::from(core)))
}

fn smallest_prime_factor(n: &Integer) -> Integer {
    if let Some(m) = n.to_u64() {
        let mut p: u64 = 2;
        while (p as u128) * (p as u128) <= m as u128 {
            if m % p == 0 {
                return Integer::from(p);
            }
            p += if p == 2 { 1 } else { 2 };
        }
        return n.clone();
    }
    let mut p = Integer::from(2);
    loop {
        if Integer::from(&p * &p) > *n {
            return n.clone();
        }
        if n.is_divisible(&p) {
            return p;
        }
        p += 1;
    }
}

fn accumulate(rational: &mut Rational, surds: &mut BTreeMap<Integer, Rational>, key: Integer, coeff: Rational) {
    if coeff == 0 {
        return;
    }
    if key == 1 {
        *rational += coeff;
        return;
    }
    match surds.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if *slot.get() == 0 {
                slot.remove();
            }
        }
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Rational::from(1))
    }

    /// `coeff · √d` where `d` must already be squarefree (or 1).
    fn from_surd_term(coeff: Rational, d: Integer) -> Self {
        let mut out = Self::zero();
        accumulate(&mut out.rational, &mut out.surds, d, coeff);
        out
    }

    /// `sign · √s`; the form the rule file uses for surd nodes.
    pub fn signed_sqrt(s: &Rational, negative: bool) -> Result<Self, ExactError> {
        let root = surd_canonicalize(s)?;
        Ok(if negative { -root } else { root })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// Surd terms as `(radicand, coefficient)`, radicands ascending.
    pub fn surd_terms(&self) -> impl Iterator<Item = (&Integer, &Rational)> {
        self.surds.iter()
    }

    pub fn is_rational(&self) -> bool {
        self.surds.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.surds.is_empty() && self.rational == 0
    }

    /// `Some((c, d))` when the value is exactly `c·√d`.
    pub fn as_pure_surd(&self) -> Option<(&Rational, &Integer)> {
        if self.rational != 0 || self.surds.len() != 1 {
            return None;
        }
        self.surds.iter().next().map(|(d, c)| (c, d))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if *r == 0 {
            return Self::zero();
        }
        Self {
            rational: Rational::from(&self.rational * r),
            surds: self.surds.iter().map(|(d, c)| (d.clone(), Rational::from(c * r))).collect(),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        out.rational += r;
        out
    }

    /// Exact `self^j`.
    pub fn pow(&self, j: u32) -> Self {
        if j == 0 {
            return Self::one();
        }
        if self.is_rational() {
            return Self::from(Rational::from((&self.rational).pow(j)));
        }
        if let Some((c, d)) = self.as_pure_surd() {
            // (c√d)^j = c^j d^(j/2) (√d if j odd)
            let scale = Rational::from(c.pow(j)) * Integer::from(d.pow(j / 2));
            return if j % 2 == 0 { Self::from(scale) } else { Self::from_surd_term(scale, d.clone()) };
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = j;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Flips the sign of every surd term whose radicand is divisible by `p`.
    fn conjugate(&self, p: &Integer) -> Self {
        let mut out = self.clone();
        for (d, c) in out.surds.iter_mut() {
            if d.is_divisible(p) {
                *c = -c.clone();
            }
        }
        out
    }

    /// Writes `self = u + v·√p` with `u`, `v` free of the prime `p`.
    fn split_prime(&self, p: &Integer) -> (Self, Self) {
        let mut u = Self::from(self.rational.clone());
        let mut v = Self::zero();
        for (d, c) in &self.surds {
            if d.is_divisible(p) {
                let rest = Integer::from(d / p);
                accumulate(&mut v.rational, &mut v.surds, rest, c.clone());
            } else {
                accumulate(&mut u.rational, &mut u.surds, d.clone(), c.clone());
            }
        }
        (u, v)
    }

    fn pivot_prime(&self) -> Option<Integer> {
        self.surds.keys().next().map(smallest_prime_factor)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let Some(p) = self.pivot_prime() else {
            return Ok(Self::from(Rational::from(self.rational.recip_ref())));
        };
        let conj = self.conjugate(&p);
        let norm = self * &conj;
        Ok(&conj * &norm.recip()?)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    /// Exact sign, decided by recursive isolation of one prime at a time.
    pub fn signum(&self) -> Ordering {
        let Some(p) = self.pivot_prime() else {
            return self.rational.cmp0();
        };
        let (u, v) = self.split_prime(&p);
        let su = u.signum();
        let sv = v.signum();
        match (su, sv) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            _ => {
                // signs disagree: whichever of u², p·v² is larger wins
                let gap = &(&u * &u) - &(&v * &v).mul_rational(&Rational::from(p));
                match gap.signum() {
                    Ordering::Greater => su,
                    Ordering::Less => sv,
                    Ordering::Equal => unreachable!("√p is irrational"),
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest binary float at `prec` bits (computed with 32 extra bits).
    pub fn to_float(&self, prec: u32) -> Float {
        let work = prec + 32;
        let mut acc = Float::with_val(work, &self.rational);
        for (d, c) in &self.surds {
            let root = Float::with_val(work, d).sqrt();
            acc += root * Float::with_val(work, c);
        }
        Float::with_val(prec, acc)
    }
}

impl From<Rational> for ExactScalar {
    fn from(rational: Rational) -> Self {
        Self { rational, surds: BTreeMap::new() }
    }
}

impl From<&Rational> for ExactScalar {
    fn from(rational: &Rational) -> Self {
        Self::from(rational.clone())
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Self::from(Rational::from(v))
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            rational: Rational::from(-&self.rational),
            surds: self.surds.iter().map(|(d, c)| (d.clone(), Rational::from(-c))).collect(),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out.rational += &rhs.rational;
        for (d, c) in &rhs.surds {
            accumulate(&mut out.rational, &mut out.surds, d.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if let Some(r) = rhs.as_rational() {
            return self.mul_rational(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.mul_rational(r);
        }
        let mut out = rhs.mul_rational(&self.rational);
        for (d, c) in &self.surds {
            accumulate(&mut out.rational, &mut out.surds, d.clone(), Rational::from(c * &rhs.rational));
            for (e, k) in &rhs.surds {
                // √d·√e = g·√((d/g)(e/g))
                let g = Integer::from(d.gcd_ref(e));
                let key = Integer::from(d / &g) * Integer::from(e / &g);
                let coeff = Rational::from(c * k) * g;
                accumulate(&mut out.rational, &mut out.surds, key, coeff);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(b);
        }
        (self - other).signum()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if self.rational != 0 || self.surds.is_empty() {
            write!(f, "{}", self.rational)?;
            wrote = true;
        }
        for (d, c) in &self.surds {
            let negative = *c < 0;
            let mag = Rational::from(c.abs_ref());
            match (wrote, negative) {
                (false, false) => {}
                (false, true) => f.write_str("-")?,
                (true, false) => f.write_str(" + ")?,
                (true, true) => f.write_str(" - ")?,
            }
            if mag == 1 {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{mag}*sqrt({d})")?;
            }
            wrote = true;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

/// Parses `p`, `p/q`, or a decimal such as `-0.125` or `2.5e-3`, exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::Parse(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: Integer = num.trim().parse().map_err(|_| bad())?;
        let den: Integer = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((num, den)));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: Integer = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    let value = if scale >= 0 { Rational::from(all * ten.pow(scale as u32)) } else { Rational::from((all, ten.pow(scale.unsigned_abs()))) };
    Ok(if sign < 0 { -value } else { value })
}
