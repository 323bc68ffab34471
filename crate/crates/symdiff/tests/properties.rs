use num_rational::BigRational;
use proptest::prelude::*;
use weylspin_symdiff::{evaluate, evaluate_exact, parse, Chart, DiffExpr, Value};

const NVARS: usize = 4;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn arb_term() -> impl Strategy<Value = DiffExpr> {
    (
        -5i64..=5,
        1i64..=3,
        prop::collection::vec(0u32..=2, NVARS),
        prop::option::weighted(0.3, (0usize..NVARS, 0usize..NVARS, -2i64..=2)),
    )
        .prop_map(|(n, d, pows, ex)| {
            let mut t = DiffExpr::from_rational(rat(n, d));
            for (k, &p) in pows.iter().enumerate() {
                t = &t * &DiffExpr::var(k).pow(p as i32).unwrap();
            }
            if let Some((a, b, c)) = ex {
                let arg = &DiffExpr::var(a) * &DiffExpr::var(b).scale(&rat(c, 1));
                t = &t * &DiffExpr::exp(&arg).unwrap();
            }
            t
        })
}

fn arb_poly() -> impl Strategy<Value = DiffExpr> {
    prop::collection::vec(arb_term(), 1..4).prop_map(|ts| ts.iter().fold(DiffExpr::zero(), |acc, t| &acc + t))
}

/// Polynomial-exponential numerator over a denominator `1 + x_k^2` or `1`.
fn arb_expr() -> impl Strategy<Value = DiffExpr> {
    (arb_poly(), prop::option::of(0usize..NVARS)).prop_map(|(p, den)| match den {
        Some(k) => {
            let d = &DiffExpr::one() + &(&DiffExpr::var(k) * &DiffExpr::var(k));
            &p / &d
        }
        None => p,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_linear(a in arb_expr(), b in arb_expr(), k in 0usize..NVARS) {
        let lhs = (&a + &b).diff(k);
        let rhs = &a.diff(k) + &b.diff(k);
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn leibniz_rule(a in arb_expr(), b in arb_expr(), k in 0usize..NVARS) {
        let lhs = (&a * &b).diff(k);
        let rhs = &(&a.diff(k) * &b) + &(&a * &b.diff(k));
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn partials_commute(a in arb_expr(), j in 0usize..NVARS, k in 0usize..NVARS) {
        prop_assert!((&a.diff(j).diff(k) - &a.diff(k).diff(j)).is_zero());
    }

    #[test]
    fn rendering_reparses(a in arb_expr()) {
        let chart = Chart::new(NVARS - 2);
        let text = chart.render(&a);
        let back = parse(&chart, &text).unwrap();
        prop_assert!((&back - &a).is_zero(), "{}", text);
    }

    #[test]
    fn subtraction_of_self_is_zero(a in arb_expr()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&(&a * &DiffExpr::from_int(2)) - &(&a + &a)).is_zero());
    }

    #[test]
    fn quotient_times_divisor(a in arb_expr(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let q = &a / &b;
        prop_assert!((&(&q * &b) - &a).is_zero());
    }

    #[test]
    fn exact_evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), p in prop::collection::vec(-3i64..=3, NVARS)) {
        // Evaluate where all exponentials vanish: exponents are products of
        // two coordinates, so put the point on the zero locus of all of them.
        let mut point: Vec<BigRational> = p.iter().map(|&c| rat(c, 1)).collect();
        for v in point.iter_mut().skip(1) {
            *v = rat(0, 1);
        }
        let av = evaluate_exact(&a, &point);
        let bv = evaluate_exact(&b, &point);
        if let (Ok(av), Ok(bv)) = (av, bv) {
            prop_assert_eq!(evaluate_exact(&(&a * &b), &point).unwrap(), &av * &bv);
            prop_assert_eq!(evaluate_exact(&(&a + &b), &point).unwrap(), &av + &bv);
        }
    }

    #[test]
    fn interval_encloses_sum(c in -3i64..=3, s in -4i64..=4) {
        // exp(s·x0) + c at x0 = 1 encloses the f64 value.
        let e = &DiffExpr::exp(&DiffExpr::var(0).scale(&rat(s, 1))).unwrap() + &DiffExpr::from_int(c);
        let point = vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
        let width = rat(1, 1_000_000);
        let v = evaluate(&e, &point, &width).unwrap();
        let f = (s as f64).exp() + c as f64;
        match v {
            Value::Exact(x) => prop_assert!(s == 0 && x == rat(1 + c, 1)),
            Value::Approx(i) => {
                prop_assert!(i.width() <= width);
                let lo: f64 = num_traits::ToPrimitive::to_f64(&i.lo).unwrap();
                let hi: f64 = num_traits::ToPrimitive::to_f64(&i.hi).unwrap();
                prop_assert!(lo - 1e-9 <= f && f <= hi + 1e-9);
            }
        }
    }
}

#[test]
fn exponentials_merge() {
    let chart = Chart::new(2);
    let a = parse(&chart, "exp(x1)*exp(-x1)").unwrap();
    assert!(a.is_one());
    let b = parse(&chart, "exp(x1)*exp(x2) - exp(x1+x2)").unwrap();
    assert!(b.is_zero());
}

#[test]
fn second_derivative_of_exponential() {
    let chart = Chart::new(3);
    let h = parse(&chart, "exp(-2*x3*u)").unwrap();
    let d = h.diff(chart.u()).diff(chart.u());
    let expected = parse(&chart, "4*x3^2*exp(-2*x3*u)").unwrap();
    assert_eq!(d, expected);
}

#[test]
fn exp_one_to_six_digits() {
    let chart = Chart::new(0);
    let e = parse(&chart, "exp(1)").unwrap();
    let width = rat(1, 1_000_000);
    match evaluate(&e, &[rat(0, 1), rat(0, 1)], &width).unwrap() {
        Value::Approx(i) => {
            assert!(i.width() <= width);
            assert!(i.contains(&rat(2_718_281, 1_000_000)) || i.lo > rat(2_718_281, 1_000_000));
            assert!(i.lo < rat(2_718_282, 1_000_000));
            assert!(i.hi > rat(2_718_281, 1_000_000));
        }
        other => panic!("expected interval, got {:?}", other),
    }
}

#[test]
fn pole_is_reported() {
    let chart = Chart::new(1);
    let e = parse(&chart, "1/x1").unwrap();
    let r = evaluate_exact(&e, &[rat(0, 1), rat(0, 1), rat(0, 1)]);
    assert_eq!(r, Err(weylspin_symdiff::EvalError::Pole));
}

#[test]
fn zero_at_point_detected_exactly_with_exponentials() {
    // exp(u) - exp(u) at u = 1 is zero; exp(u) at u = 1 is irrational.
    let chart = Chart::new(0);
    let e = parse(&chart, "exp(u)").unwrap();
    let point = [rat(0, 1), rat(1, 1)];
    assert_eq!(
        evaluate_exact(&e, &point),
        Err(weylspin_symdiff::EvalError::NotRational)
    );
    let z = parse(&chart, "(exp(u) + v) - v - exp(u)").unwrap();
    assert_eq!(evaluate_exact(&z, &point).unwrap(), rat(0, 1));
}
