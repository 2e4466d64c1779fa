//! Scripted reproduction of the worked examples on `∫ 2/(1+t²) dt = π`.

use combquad_core::composite::{error_report, pi_reference};
use combquad_core::families::gauss3;
use combquad_core::{
    build_combined, combine_pair, composite_apply, mean_rule, surd_canonicalize, BaseRule, BuilderInput, CompositeJob, ExactScalar, Expr,
    Float, NumericContext, QuadRule, Rational,
};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn model_value(rule: &QuadRule) -> Rational {
    let two = Rational::from(2);
    let values: Vec<ExactScalar> =
        rule.points().iter().map(|p| (ExactScalar::one() + p.node.pow(2)).recip().expect("1 + t² > 0").mul_rational(&two)).collect();
    rule.apply_values(values.iter()).as_rational().cloned().expect("rational on 2/(1+t²)")
}

fn pi_minus(value: &Rational) -> f64 {
    let ctx = NumericContext::new(30);
    error_report(&Float::with_val(ctx.guard_bits(), value), &pi_reference(&ctx), &ctx).signed_error.to_f64()
}

struct Checker {
    ok: bool,
}

impl Checker {
    fn check(&mut self, what: &str, shown: String, pass: bool) {
        println!("{:4} {what}: {shown}", if pass { "ok" } else { "FAIL" });
        self.ok &= pass;
    }

    fn rational(&mut self, what: &str, got: &Rational, want: &Rational) {
        self.check(what, format!("{got} (pi - value = {:.4e})", pi_minus(got)), got == want);
    }
}

/// Prints every headline number with its check; `false` if any check failed.
pub fn run() -> bool {
    let mut c = Checker { ok: true };
    let s3 = surd_canonicalize(&q(1, 3)).expect("positive");
    let hip2 = QuadRule::new("two-point gauss", [(-&s3, q(1, 1)), (s3, q(1, 1))]).expect("valid");
    let simpson = QuadRule::simpson();

    println!("two-point gauss A and simpson S");
    let y = combine_pair(&hip2, &simpson).expect("same degree");
    c.check("coefficients", format!("{} A + {} S", y.alpha(), y.beta()), (y.alpha(), y.beta()) == (&q(3, 5), &q(2, 5)));
    c.rational("A(g)", &model_value(&hip2), &q(3, 1));
    c.rational("S(g)", &model_value(&simpson), &q(10, 3));
    c.rational("Y(g)", &model_value(&y.flattened), &q(47, 15));

    println!("mean of gauss-3 and the degree-5 rule Y");
    let w = mean_rule(&gauss3(), &y.flattened).expect("same degree");
    c.check("degree", w.output_class.degree.to_string(), w.output_class.degree == 7);
    c.rational("W(g)", &model_value(&w.flattened), &q(1321, 420));

    println!("mean of gauss-3 and open newton-cotes 5");
    let nc5 = QuadRule::from_rationals(
        "open newton-cotes 5",
        [(q(-4, 5), q(275, 576)), (q(-2, 5), q(100, 576)), (q(0, 1), q(402, 576)), (q(2, 5), q(100, 576)), (q(4, 5), q(275, 576))],
    )
    .expect("valid");
    let w = mean_rule(&gauss3(), &nc5).expect("same degree");
    c.check("gamma", w.output_class.defect.to_string(), w.output_class.defect.as_rational() == Some(&q(16, 1125)));
    c.rational("W(g)", &model_value(&w.flattened), &q(156637, 49938));

    println!("midpoint build on 1/2, 1/3, 1/4");
    let w3 =
        build_combined(&BuilderInput::new(vec![q(1, 2), q(1, 3), q(1, 4)], BaseRule::Midpoint, "w3").expect("valid")).expect("solvable");
    let coeffs: Vec<String> = w3.coefficients.iter().map(ToString::to_string).collect();
    c.check("coefficients", coeffs.join(" "), w3.coefficients == [q(-4426, 105), q(5344, 315), q(-5589, 49), q(309248, 2205)]);
    c.check("gamma", w3.gamma().to_string(), w3.gamma().as_rational() == Some(&q(1817, 15120)));

    println!("builds on rationalized Legendre roots");
    let nodes: Vec<Rational> =
        ["41349881/277750224", "26322066/60734531", "209827923/308838634", "130457471/150806838", "272617463/279921589"]
            .iter()
            .map(|s| s.parse().expect("literal"))
            .collect();
    let mid = build_combined(&BuilderInput::new(nodes.clone(), BaseRule::Midpoint, "w5").expect("valid")).expect("solvable");
    let trap = build_combined(&BuilderInput::new(nodes, BaseRule::Trapezoid, "w5~").expect("valid")).expect("solvable");
    let (gm, gt) = (mid.gamma().to_float(128).to_f64(), trap.gamma().to_float(128).to_f64());
    c.check("degree", mid.degree().to_string(), mid.degree() == 11 && trap.degree() == 11);
    c.check("gamma midpoint", format!("{gm:.4e}"), (gm / 2.105e-17 - 1.0).abs() <= 0.01);
    c.check("gamma trapezoid", format!("{gt:.4e}"), (gt / -5.243e-18 - 1.0).abs() <= 0.01);
    let ctx = NumericContext::new(80);
    let job = CompositeJob::new(trap.flattened, q(-1, 1), q(1, 1), 1024, Expr::parse("2/(1+t^2)").expect("valid"), ctx);
    let value = composite_apply(&job).expect("finite").to_float(ctx.guard_bits());
    let err = error_report(&value, &pi_reference(&ctx), &ctx).signed_error.to_f64();
    c.check("pi - trapezoid build, n=1024, 80 digits", format!("{err:.4e}"), (1.0e-61..=1.3e-61).contains(&err));

    c.ok
}
