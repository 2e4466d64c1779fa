//! Two- and three-point rule families with closed-form weights, their
//! sign regions, and raster maps of those regions.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use rug::Rational;

use crate::exact::{surd_canonicalize, ExactError, ExactScalar};
use crate::rules::{QuadRule, RuleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("nodes must be pairwise distinct")]
    DegenerateNodes,
    #[error("weight {0} is irrational")]
    IrrationalWeight(ExactScalar),
    #[error("invalid raster: {0}")]
    InvalidRaster(&'static str),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    PositiveDeg1,
    NegativeDeg1,
    Deg2Positive,
    Deg2Negative,
    DegreeAtLeast3,
    Invalid,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::PositiveDeg1 => "positive_deg1",
            RegionLabel::NegativeDeg1 => "negative_deg1",
            RegionLabel::Deg2Positive => "deg2_positive",
            RegionLabel::Deg2Negative => "deg2_negative",
            RegionLabel::DegreeAtLeast3 => "degree_ge3",
            RegionLabel::Invalid => "invalid",
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, RegionLabel::PositiveDeg1 | RegionLabel::Deg2Positive)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, RegionLabel::NegativeDeg1 | RegionLabel::Deg2Negative)
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn in_unit_interval(x: &ExactScalar) -> bool {
    let one = ExactScalar::one();
    *x <= one && *x >= -&one
}

fn rational_weight(w: ExactScalar) -> Result<Rational, FamilyError> {
    match w.as_rational() {
        Some(r) => Ok(r.clone()),
        None => Err(FamilyError::IrrationalWeight(w)),
    }
}

/// `A_0 g(t0) + A_1 g(t1)` with `A_0 = 2 t1/(t1 - t0)`, `A_1 = -2 t0/(t1 - t0)`.
pub fn two_point_rule(t0: &ExactScalar, t1: &ExactScalar) -> Result<QuadRule, FamilyError> {
    let gap = t1 - t0;
    if gap.is_zero() {
        return Err(FamilyError::DegenerateNodes);
    }
    let inv = gap.recip()?;
    let two = Rational::from(2);
    let a0 = rational_weight(&t1.mul_rational(&two) * &inv)?;
    let a1 = rational_weight(&(-t0).mul_rational(&two) * &inv)?;
    Ok(QuadRule::new("two-point", [(t0.clone(), a0), (t1.clone(), a1)])?)
}

/// Label together with `γ_2 = 2/3 + 2 t0 t1`. On `γ_2 = 0` the label comes
/// from the sign of `γ_3 = -(2/3)(t0 + t1)`.
pub fn two_point_region(t0: &ExactScalar, t1: &ExactScalar) -> (RegionLabel, ExactScalar) {
    if t0 == t1 || !in_unit_interval(t0) || !in_unit_interval(t1) {
        return (RegionLabel::Invalid, ExactScalar::zero());
    }
    let gamma2 = (t0 * t1).mul_rational(&Rational::from(2)).add_rational(&Rational::from((2, 3)));
    match gamma2.signum() {
        Ordering::Greater => return (RegionLabel::PositiveDeg1, gamma2),
        Ordering::Less => return (RegionLabel::NegativeDeg1, gamma2),
        Ordering::Equal => {}
    }
    // On t0 t1 = -1/3 the cubic (4/3)t0 + (2/3)t1 + 2 t0² t1 reduces to
    // (2/3)(t0 + t1), and γ_3 is its negative.
    let gamma3 = (t0 + t1).mul_rational(&Rational::from((-2, 3)));
    let label = match gamma3.signum() {
        Ordering::Greater => RegionLabel::Deg2Positive,
        Ordering::Less => RegionLabel::Deg2Negative,
        Ordering::Equal => RegionLabel::DegreeAtLeast3,
    };
    (label, gamma2)
}

pub fn two_point_classify(t0: &ExactScalar, t1: &ExactScalar) -> RegionLabel {
    two_point_region(t0, t1).0
}

fn distinct3(t0: &ExactScalar, t1: &ExactScalar, t2: &ExactScalar) -> bool {
    t0 != t1 && t0 != t2 && t1 != t2
}

fn omega(t0: &ExactScalar, t1: &ExactScalar, t2: &ExactScalar) -> Result<[ExactScalar; 3], FamilyError> {
    if !distinct3(t0, t1, t2) {
        return Err(FamilyError::DegenerateNodes);
    }
    let three = Rational::from(3);
    let numer =
        |a: &ExactScalar, b: &ExactScalar| (a * b).mul_rational(&three).add_rational(&Rational::from(1)).mul_rational(&Rational::from(2));
    let d10 = t1 - t0;
    let d20 = t2 - t0;
    let d21 = t2 - t1;
    let w0 = numer(t1, t2).checked_div(&(&d10 * &d20).mul_rational(&three))?;
    let w1 = -numer(t0, t2).checked_div(&(&d10 * &d21).mul_rational(&three))?;
    let w2 = numer(t0, t1).checked_div(&(&d20 * &d21).mul_rational(&three))?;
    Ok([w0, w1, w2])
}

/// The unique rule on three distinct nodes that is exact for degree ≤ 2.
pub fn three_point_weights(t0: &ExactScalar, t1: &ExactScalar, t2: &ExactScalar) -> Result<QuadRule, FamilyError> {
    let [w0, w1, w2] = omega(t0, t1, t2)?;
    let points = [(t0.clone(), rational_weight(w0)?), (t1.clone(), rational_weight(w1)?), (t2.clone(), rational_weight(w2)?)];
    Ok(QuadRule::new("three-point", points)?)
}

/// `P = Σ t_i³ Ω_i`, the rule's value on `t³`. Negative means a positive
/// rule, positive a negative rule, zero degree at least 3.
pub fn three_point_sign(t0: &ExactScalar, t1: &ExactScalar, t2: &ExactScalar) -> Result<ExactScalar, FamilyError> {
    let w = omega(t0, t1, t2)?;
    Ok([t0, t1, t2].iter().zip(&w).fold(ExactScalar::zero(), |acc, (t, wi)| &acc + &(&t.pow(3) * wi)))
}

fn three_point_region(t0: &ExactScalar, t1: &ExactScalar, t2: &ExactScalar) -> (RegionLabel, ExactScalar) {
    if !in_unit_interval(t0) || !in_unit_interval(t1) || !in_unit_interval(t2) {
        return (RegionLabel::Invalid, ExactScalar::zero());
    }
    match three_point_sign(t0, t1, t2) {
        Err(_) => (RegionLabel::Invalid, ExactScalar::zero()),
        Ok(p) => {
            let label = match p.signum() {
                Ordering::Less => RegionLabel::Deg2Positive,
                Ordering::Greater => RegionLabel::Deg2Negative,
                Ordering::Equal => RegionLabel::DegreeAtLeast3,
            };
            (label, p)
        }
    }
}

pub fn three_point_classify(t0: &ExactScalar, t1: &ExactScalar, t2: &ExactScalar) -> RegionLabel {
    three_point_region(t0, t1, t2).0
}

/// The three-point Gauss–Legendre rule, nodes `0, ±√(3/5)`.
pub fn gauss3() -> QuadRule {
    let r = surd_canonicalize(&Rational::from((3, 5))).expect("positive radicand");
    three_point_weights(&-&r, &ExactScalar::zero(), &r).expect("distinct nodes with rational weights").with_label("gauss-legendre-3")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    TwoPoint,
    ThreePointSlice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterSpec {
    pub family: Family,
    pub grid_size: usize,
    /// `t2` for the three-point slice.
    pub fixed_coordinate: Option<Rational>,
    pub boundary_band: Rational,
}

impl RasterSpec {
    pub fn two_point(grid_size: usize, boundary_band: Rational) -> Self {
        Self { family: Family::TwoPoint, grid_size, fixed_coordinate: None, boundary_band }
    }

    pub fn three_point_slice(grid_size: usize, t2: Rational, boundary_band: Rational) -> Self {
        Self { family: Family::ThreePointSlice, grid_size, fixed_coordinate: Some(t2), boundary_band }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        if self.grid_size < 2 {
            return Err(FamilyError::InvalidRaster("grid size must be at least 2"));
        }
        if self.boundary_band <= 0 {
            return Err(FamilyError::InvalidRaster("boundary band must be positive"));
        }
        if self.family == Family::ThreePointSlice {
            match &self.fixed_coordinate {
                None => return Err(FamilyError::InvalidRaster("three-point slice needs a fixed t2")),
                Some(t2) if *t2 < -1 || *t2 > 1 => return Err(FamilyError::InvalidRaster("fixed t2 must lie in [-1, 1]")),
                _ => {}
            }
        }
        Ok(())
    }

    /// Lattice coordinate `i · 2/(G - 1) - 1`.
    pub fn lattice(&self, i: usize) -> Rational {
        Rational::from((2 * i as u64, (self.grid_size - 1) as u64)) - 1u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterCell {
    pub t0: Rational,
    pub t1: Rational,
    pub label: RegionLabel,
    /// Classifier value within the boundary band.
    pub boundary: bool,
}

impl RasterCell {
    /// PGM grey level: 255 positive, 0 negative, 128 boundary or raised degree, 64 invalid.
    pub fn grey(&self) -> u8 {
        match self.label {
            RegionLabel::Invalid => 64,
            _ if self.boundary => 128,
            RegionLabel::PositiveDeg1 | RegionLabel::Deg2Positive => 255,
            RegionLabel::NegativeDeg1 | RegionLabel::Deg2Negative => 0,
            RegionLabel::DegreeAtLeast3 => 128,
        }
    }

    pub fn display_label(&self) -> &'static str {
        if self.boundary && self.label != RegionLabel::Invalid {
            "boundary"
        } else {
            self.label.as_str()
        }
    }
}

/// Region map in row-major order; row 0 is `t1 = +1`, column 0 is `t0 = -1`.
#[derive(Debug, Clone)]
pub struct RegionRaster {
    pub spec: RasterSpec,
    pub cells: Vec<RasterCell>,
}

impl RegionRaster {
    pub fn grid_size(&self) -> usize {
        self.spec.grid_size
    }

    pub fn cell(&self, row: usize, col: usize) -> &RasterCell {
        &self.cells[row * self.spec.grid_size + col]
    }

    fn nearest_index(&self, x: &Rational) -> usize {
        // i = round((x + 1)(G - 1)/2), clamped to the grid
        let scaled = (Rational::from(x + 1u32) * (self.spec.grid_size as u64 - 1)) / 2u32;
        let rounded = scaled.round();
        let g = self.spec.grid_size as i64 - 1;
        rounded.numer().to_i64().unwrap_or(0).clamp(0, g) as usize
    }

    /// The cell whose lattice point is nearest to `(t0, t1)`.
    pub fn cell_at(&self, t0: &Rational, t1: &Rational) -> &RasterCell {
        let col = self.nearest_index(t0);
        let row = self.spec.grid_size - 1 - self.nearest_index(t1);
        self.cell(row, col)
    }

    pub fn count(&self, pred: impl Fn(&RasterCell) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(c)).count()
    }

    pub fn to_pgm(&self) -> Vec<u8> {
        let g = self.spec.grid_size;
        let mut out = format!("P5\n{g} {g}\n255\n").into_bytes();
        out.extend(self.cells.iter().map(RasterCell::grey));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t0,t1,label\n");
        for c in &self.cells {
            out.push_str(&format!("{},{},{}\n", c.t0, c.t1, c.display_label()));
        }
        out
    }
}

/// Samples the family classifier on the exact `G × G` lattice over `[-1, 1]²`.
pub fn region_raster(spec: &RasterSpec) -> Result<RegionRaster, FamilyError> {
    spec.validate()?;
    let g = spec.grid_size;
    let fixed = spec.fixed_coordinate.clone().map(ExactScalar::from);
    let band = ExactScalar::from(&spec.boundary_band);
    let rows: Vec<Vec<RasterCell>> = (0..g)
        .into_par_iter()
        .map(|row| {
            let t1 = spec.lattice(g - 1 - row);
            let x1 = ExactScalar::from(&t1);
            (0..g)
                .map(|col| {
                    let t0 = spec.lattice(col);
                    let x0 = ExactScalar::from(&t0);
                    let (label, value) = match (&spec.family, &fixed) {
                        (Family::TwoPoint, _) => two_point_region(&x0, &x1),
                        (Family::ThreePointSlice, Some(t2)) => three_point_region(&x0, &x1, t2),
                        (Family::ThreePointSlice, None) => unreachable!("validated"),
                    };
                    let boundary = label != RegionLabel::Invalid && value.abs() < band;
                    RasterCell { t0, t1: t1.clone(), label, boundary }
                })
                .collect()
        })
        .collect();
    Ok(RegionRaster { spec: spec.clone(), cells: rows.into_iter().flatten().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{apply_monomial, classify, moment, RuleSign};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn x(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from(q(n, d))
    }

    fn root3_over_3() -> ExactScalar {
        surd_canonicalize(&q(1, 3)).unwrap()
    }

    fn weights(rule: &QuadRule) -> Vec<Rational> {
        rule.points().iter().map(|p| p.weight.clone()).collect()
    }

    /// Label derived from the generic classifier, independent of the closed forms.
    fn label_from_classify(rule: &QuadRule) -> RegionLabel {
        let c = classify(rule).unwrap();
        match (c.degree, c.sign) {
            (1, RuleSign::Positive) => RegionLabel::PositiveDeg1,
            (1, RuleSign::Negative) => RegionLabel::NegativeDeg1,
            (2, RuleSign::Positive) => RegionLabel::Deg2Positive,
            (2, RuleSign::Negative) => RegionLabel::Deg2Negative,
            (d, _) if d >= 3 => RegionLabel::DegreeAtLeast3,
            _ => RegionLabel::Invalid,
        }
    }

    #[test]
    fn two_point_examples() {
        let t = two_point_rule(&x(-1, 1), &x(1, 1)).unwrap();
        assert_eq!(t, QuadRule::trapezoidal());
        let r = root3_over_3();
        let g2 = two_point_rule(&-&r, &r).unwrap();
        assert_eq!(weights(&g2), vec![q(1, 1), q(1, 1)]);
        assert_eq!(classify(&g2).unwrap().degree, 3);
        let d2 = two_point_rule(&x(-1, 3), &x(1, 1)).unwrap();
        assert_eq!(weights(&d2), vec![q(3, 2), q(1, 2)]);
        let c = classify(&d2).unwrap();
        assert_eq!((c.degree, c.sign), (2, RuleSign::Negative));
        assert_eq!(apply_monomial(&d2, 3).as_rational(), Some(&q(4, 9)));
        assert_eq!(two_point_rule(&x(1, 2), &x(1, 2)), Err(FamilyError::DegenerateNodes));
    }

    #[test]
    fn two_point_labels() {
        assert_eq!(two_point_classify(&x(-1, 1), &x(1, 1)), RegionLabel::NegativeDeg1);
        let r = root3_over_3();
        assert_eq!(two_point_classify(&-&r, &r), RegionLabel::DegreeAtLeast3);
        assert_eq!(two_point_classify(&r, &-&r), RegionLabel::DegreeAtLeast3);
        assert_eq!(two_point_classify(&x(-1, 3), &x(1, 1)), RegionLabel::Deg2Negative);
        assert_eq!(two_point_classify(&x(1, 3), &x(-1, 1)), RegionLabel::Deg2Positive);
        assert_eq!(two_point_classify(&x(1, 2), &x(1, 2)), RegionLabel::Invalid);
        assert_eq!(two_point_classify(&x(3, 2), &x(0, 1)), RegionLabel::Invalid);
    }

    #[test]
    fn three_point_examples() {
        let a = three_point_weights(&x(-15, 16), &x(-7, 8), &x(-3, 4)).unwrap();
        assert_eq!(weights(&a), vec![q(2 * 760, 9), q(-2 * 1194, 9), q(2 * 443, 9)]);
        assert_eq!(gauss3().points().iter().map(|p| p.weight.clone()).collect::<Vec<_>>(), vec![q(5, 9), q(8, 9), q(5, 9)]);
        // t1 = 0, t2 = -t0
        let t0 = q(1, 2);
        let w = three_point_weights(&ExactScalar::from(&t0), &x(0, 1), &ExactScalar::from(-t0.clone())).unwrap();
        let s: Rational = 3 * Rational::from(&t0 * &t0);
        let outer = Rational::from(s.recip_ref());
        let middle = 2u32 * (s.clone() - 1u32) / &s;
        assert_eq!(weights(&w), vec![outer.clone(), middle, outer]);
        assert_eq!(three_point_weights(&x(0, 1), &x(0, 1), &x(1, 2)), Err(FamilyError::DegenerateNodes));
    }

    #[test]
    fn three_point_signs() {
        let p = three_point_sign(&x(-15, 16), &x(-7, 8), &x(-3, 4)).unwrap();
        assert_eq!(p.signum(), Ordering::Less);
        let r = surd_canonicalize(&q(3, 5)).unwrap();
        assert!(three_point_sign(&-&r, &x(0, 1), &r).unwrap().is_zero());
        let p = three_point_sign(&x(3, 4), &x(-7, 8), &x(-3, 4)).unwrap();
        assert_eq!(p.signum(), Ordering::Greater);
    }

    #[test]
    fn six_symmetric_points_have_zero_p() {
        let r = root3_over_3();
        let z = ExactScalar::zero();
        let triples = [(z.clone(), r.clone(), -&r), (r.clone(), z.clone(), -&r), (r.clone(), -&r, z.clone())];
        for (a, b, c) in triples {
            assert!(three_point_sign(&a, &b, &c).unwrap().is_zero());
            assert!(three_point_sign(&-&a, &-&b, &-&c).unwrap().is_zero());
        }
    }

    #[test]
    fn gauss3_classification() {
        let c = classify(&gauss3()).unwrap();
        assert_eq!((c.degree, c.sign), (5, RuleSign::Positive));
        assert_eq!(c.defect.as_rational(), Some(&q(8, 175)));
    }

    #[test]
    fn two_point_raster() {
        let raster = region_raster(&RasterSpec::two_point(3, q(1, 1000))).unwrap();
        // row 0 is t1 = +1, col 0 is t0 = -1
        assert_eq!(raster.cell(0, 0).label, RegionLabel::NegativeDeg1);
        assert_eq!(raster.cell_at(&q(-1, 1), &q(1, 1)).label, RegionLabel::NegativeDeg1);
        let raster = region_raster(&RasterSpec::two_point(41, q(1, 1000))).unwrap();
        let pos = raster.count(|c| c.label.is_positive());
        let neg = raster.count(|c| c.label.is_negative());
        assert!(neg > 0 && pos > neg);
        assert_eq!(raster.cell_at(&q(-1, 2), &q(1, 2)).label, RegionLabel::PositiveDeg1);
        // diagonal is degenerate
        assert_eq!(raster.count(|c| c.label == RegionLabel::Invalid), 41);
        let pgm = raster.to_pgm();
        assert!(pgm.starts_with(b"P5\n41 41\n255\n"));
        assert_eq!(pgm.len(), b"P5\n41 41\n255\n".len() + 41 * 41);
        let csv = raster.to_csv();
        assert_eq!(csv.lines().count(), 1 + 41 * 41);
        assert_eq!(csv.lines().nth(1), Some("-1,1,negative_deg1"));
    }

    #[test]
    fn boundary_band_marks_cells_near_the_hyperbola() {
        // (-1/3, 1) and (1, -1/3) lie exactly on t0 t1 = -1/3
        let raster = region_raster(&RasterSpec::two_point(4, q(1, 100))).unwrap();
        let c = raster.cell_at(&q(-1, 3), &q(1, 1));
        assert_eq!(c.label, RegionLabel::Deg2Negative);
        assert_eq!(c.grey(), 128);
        let wide = region_raster(&RasterSpec::two_point(4, q(10, 1))).unwrap();
        assert_eq!(wide.count(|c| c.label != RegionLabel::Invalid && c.grey() != 128), 0);
    }

    #[test]
    fn three_point_slice_raster() {
        let raster = region_raster(&RasterSpec::three_point_slice(64, q(-3, 4), q(1, 1_000_000))).unwrap();
        assert!(raster.cell_at(&q(-15, 16), &q(-7, 8)).label.is_positive());
        assert!(raster.cell_at(&q(3, 4), &q(-7, 8)).label.is_negative());
        let exact = region_raster(&RasterSpec::three_point_slice(33, q(-3, 4), q(1, 1_000_000))).unwrap();
        let a = exact.cell_at(&q(-15, 16), &q(-7, 8));
        assert_eq!((a.t0.clone(), a.t1.clone()), (q(-15, 16), q(-7, 8)));
        assert_eq!(a.label, RegionLabel::Deg2Positive);
        assert_eq!(exact.cell_at(&q(3, 4), &q(-7, 8)).label, RegionLabel::Deg2Negative);
        assert_eq!(exact.cell_at(&q(-3, 4), &q(0, 1)).label, RegionLabel::Invalid);
    }

    #[test]
    fn invalid_raster_specs() {
        assert!(region_raster(&RasterSpec::two_point(1, q(1, 10))).is_err());
        assert!(region_raster(&RasterSpec::two_point(5, q(0, 1))).is_err());
        let mut s = RasterSpec::three_point_slice(5, q(2, 1), q(1, 10));
        assert!(region_raster(&s).is_err());
        s.fixed_coordinate = None;
        assert!(region_raster(&s).is_err());
    }

    fn node() -> impl Strategy<Value = Rational> {
        (-64i64..=64).prop_map(|n| q(n, 64))
    }

    proptest! {
        #[test]
        fn three_point_rules_are_exact_to_degree_two(a in node(), b in node(), c in node()) {
            let (x0, x1, x2) = (ExactScalar::from(&a), ExactScalar::from(&b), ExactScalar::from(&c));
            prop_assume!(distinct3(&x0, &x1, &x2));
            let rule = three_point_weights(&x0, &x1, &x2).unwrap();
            prop_assert_eq!(rule.weight_sum(), q(2, 1));
            for j in 0..3 {
                prop_assert_eq!(apply_monomial(&rule, j), ExactScalar::from(moment(j)));
            }
            // Ψ3 = Π(t - t_i), Ψ4 = Ψ3 (t - t0), Ψ5 = Ψ4 (t - t1)
            let psi = |t: &Rational, extra: &[&Rational]| {
                let mut v = Rational::from(t - &a) * Rational::from(t - &b) * Rational::from(t - &c);
                for e in extra {
                    v *= Rational::from(t - *e);
                }
                v
            };
            for extra in [vec![], vec![&a], vec![&a, &b]] {
                let total = rule.points().iter().fold(Rational::new(), |acc, p| {
                    acc + Rational::from(&p.weight * &psi(p.node.as_rational().unwrap(), &extra))
                });
                prop_assert_eq!(total, q(0, 1));
            }
            let p = three_point_sign(&x0, &x1, &x2).unwrap();
            prop_assert_eq!(p.clone(), apply_monomial(&rule, 3));
            prop_assert_eq!(three_point_classify(&x0, &x1, &x2), label_from_classify(&rule));
        }

        #[test]
        fn two_point_labels_agree_with_classifier(a in node(), b in node()) {
            let (x0, x1) = (ExactScalar::from(&a), ExactScalar::from(&b));
            prop_assume!(a != b);
            let label = two_point_classify(&x0, &x1);
            prop_assert_eq!(label, two_point_classify(&x1, &x0));
            prop_assert_eq!(label, label_from_classify(&two_point_rule(&x0, &x1).unwrap()));
        }
    }
}
