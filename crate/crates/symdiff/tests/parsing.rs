use num_rational::BigRational;
use weylspin_symdiff::{parse, parse_rational, Chart};

#[test]
fn precedence_and_unary_minus() {
    let c = Chart::new(2);
    let a = parse(&c, "-x1^2 + 3*x2/2").unwrap();
    let b = parse(&c, "(-1)*(x1*x1) + (3/2)*x2").unwrap();
    assert_eq!(a, b);
}

#[test]
fn negative_and_parenthesized_exponents() {
    let c = Chart::new(1);
    let a = parse(&c, "x1^-2 * x1^(2)").unwrap();
    assert!(a.is_one());
    let b = parse(&c, "(u + 1)^(-1) * (u+1)").unwrap();
    assert!(b.is_one());
}

#[test]
fn decimals_are_exact() {
    assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
    assert_eq!(parse_rational("-1/3").unwrap(), BigRational::new((-1).into(), 3.into()));
}

#[test]
fn unknown_variable_reports_position() {
    let c = Chart::new(2);
    let e = parse(&c, "v + x3").unwrap_err();
    assert_eq!(e.position, 4);
    assert!(e.message.contains("x3"));
}

#[test]
fn exp_of_rational_function_is_rejected() {
    let c = Chart::new(1);
    let e = parse(&c, "exp(1/x1)").unwrap_err();
    assert_eq!(e.position, 4);
    assert!(e.message.contains("polynomial"));
}

#[test]
fn division_by_zero_is_rejected() {
    let c = Chart::new(1);
    let e = parse(&c, "x1/(u - u)").unwrap_err();
    assert_eq!(e.position, 3);
}

#[test]
fn malformed_inputs() {
    let c = Chart::new(1);
    for bad in ["", "x1 +", "(x1", "x1)", "x1^x1", "2 $ 3", "x01"] {
        assert!(parse(&c, bad).is_err(), "accepted {:?}", bad);
    }
}

#[test]
fn chart_names() {
    let c = Chart::new(3);
    assert_eq!(c.index_of("v"), Some(0));
    assert_eq!(c.index_of("x3"), Some(3));
    assert_eq!(c.index_of("u"), Some(4));
    assert_eq!(c.index_of("x4"), None);
    assert_eq!(c.name(4), "u");
}
