#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylspin_core::clifford::{CliffordRep, Signature};
use weylspin_core::lie_spin::{bivector_bracket, lambda_star, weighted_spinor_op, Bivector, CoElement};
use weylspin_core::linalg::Matrix;
use weylspin_core::scalar::{int, rat, ExactScalar, Rational};
use weylspin_core::weyl::{
    check_theorem71, einstein_weyl_check, infinitesimal_holonomy, is_closed, make_example, random_walker,
    solve_flat_poisson, verify_compatibility, Epsilon, ExampleKind, Geometry,
};
use weylspin_symdiff::{Chart, DiffExpr};

fn arb_rat() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_bivector(dim: usize) -> impl Strategy<Value = Bivector> {
    prop::collection::vec(arb_rat(), dim * (dim - 1) / 2).prop_map(move |cs| {
        let mut b = Bivector::zero(dim);
        let mut it = cs.into_iter();
        for i in 0..dim {
            for j in i + 1..dim {
                b.set(i, j, ExactScalar::from_rational(it.next().unwrap()));
            }
        }
        b
    })
}

fn arb_co(n: usize) -> impl Strategy<Value = CoElement> {
    (
        arb_rat(),
        arb_rat(),
        prop::collection::vec(arb_rat(), n * n.saturating_sub(1) / 2),
        prop::collection::vec(arb_rat(), n),
    )
        .prop_map(move |(b, a, skew, x)| {
            let mut m = Matrix::zeros(n, n);
            let mut it = skew.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    m.set(i, j, -v.clone());
                    m.set(j, i, v);
                }
            }
            CoElement::new(b, a, m, x).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn clifford_relations_hold(r in 0usize..=4, s in 0usize..=4) {
        prop_assume!(r + s >= 1);
        let rep = CliffordRep::new(Signature::new(r, s)).unwrap();
        prop_assert!(rep.relation_failures().is_empty());
    }

    #[test]
    fn spin_lift_is_a_homomorphism((a, b) in (2usize..=6).prop_flat_map(|d| (arb_bivector(d), arb_bivector(d)))) {
        let sig = Signature::lorentzian(a.dim() - 2);
        let rep = CliffordRep::new(sig).unwrap();
        let lhs = lambda_star(&a, &rep).commutator(&lambda_star(&b, &rep));
        prop_assert_eq!(lhs, lambda_star(&bivector_bracket(&a, &b, sig), &rep));
    }

    #[test]
    fn weighted_action_commutator(
        (x, y) in (1usize..=4).prop_flat_map(|n| (arb_co(n), arb_co(n))),
        w in arb_rat(),
    ) {
        let rep = CliffordRep::new(Signature::lorentzian(x.n())).unwrap();
        let op = |c: &CoElement| weighted_spinor_op(&rep, &w, c).unwrap();
        let lhs = op(&x).commutator(&op(&y));
        let rhs = op(&x.bracket(&y)).scale(&ExactScalar::from_int(-4));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_walker_curvature_identities(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_walker(&mut rng, n, 2);
        let geo = Geometry::new(&s).unwrap();
        prop_assert!(geo.gamma.is_torsion_free());
        prop_assert!(geo.curvature.is_antisymmetric());
        prop_assert!(geo.curvature.bianchi_residuals().is_empty());
        let eps = verify_compatibility(&geo).epsilon;
        prop_assert!(matches!(eps, Epsilon::Minus2 | Epsilon::Both), "{:?}", eps);
    }

    #[test]
    fn holonomy_spans_are_nested(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_walker(&mut rng, 2, 2);
        let span = infinitesimal_holonomy(&Geometry::new(&s).unwrap(), 3).unwrap();
        for k in 1..span.spans.len() {
            prop_assert!(span.rank_by_order[k - 1] <= span.rank_by_order[k]);
            prop_assert!(span.spans[k].contains_span(&span.spans[k - 1]));
        }
    }

    /// Random `H` and `h` with `f = ∂_v H / (2 + w)`: whenever the comparison
    /// applies, the uu equation and Einstein-Weyl agree.
    #[test]
    fn theorem71_agrees_with_einstein_weyl(seed in any::<u64>(), n in 1usize..=3, shift in 0i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = random_walker(&mut rng, n, 2);
        let w = int(n as i64 - 2 + shift);
        let s = make_example(&ExampleKind::GenericSpinorFamily {
            n,
            h: Some(base.h().to_vec()),
            big_h: base.big_h().clone(),
            w,
        })
        .unwrap();
        let t = check_theorem71(&Geometry::new(&s).unwrap()).unwrap();
        prop_assert!(t.spinor_relation.is_zero());
        if shift == 0 || !is_closed(&s) {
            prop_assert_eq!(t.consistent_with_ew, Some(true));
        }
    }

    /// `f` linear (so harmonic) with `ḟ ≠ 0` in general, `H₀` from the flat
    /// Poisson solve: always Einstein-Weyl with `Λ = 0` and passes the theorem.
    #[test]
    fn cor72_family_is_einstein_weyl(n in 1usize..=3, coeffs in prop::collection::vec(-3i64..=3, 5)) {
        let chart = Chart::new(n);
        let mut f = DiffExpr::from_int(coeffs[0]);
        for i in 1..=n {
            f = &f + &DiffExpr::var(chart.x(i)).scale(&int(coeffs[i]));
        }
        f = &f + &DiffExpr::var(chart.u()).scale(&int(coeffs[4]));
        prop_assume!(!f.is_zero());
        let nn = n as i64;
        let rho = (&(&f * &f).scale(&int(2 * nn * (nn - 2))) + &f.diff(chart.u()).scale(&int(4 * nn)))
            .scale(&rat(-1, 2));
        let h0 = solve_flat_poisson(n, &rho).unwrap();
        let s = make_example(&ExampleKind::Cor72Flat { n, f, h0 }).unwrap();
        let geo = Geometry::new(&s).unwrap();
        let ew = einstein_weyl_check(&geo).unwrap();
        prop_assert!(ew.is_ew && ew.lambda.is_zero());
        let t = check_theorem71(&geo).unwrap();
        prop_assert!(t.passes, "{:?}", t.messages);
        prop_assert_eq!(t.consistent_with_ew, Some(true));
    }
}

#[test]
fn generic_family_without_weight_match_is_flagged() {
    let chart = Chart::new(2);
    let big_h = &DiffExpr::var(chart.v()) * &DiffExpr::var(chart.x(1));
    let s = make_example(&ExampleKind::GenericSpinorFamily {
        n: 2,
        h: None,
        big_h: big_h.scale(&int(3)),
        w: int(1),
    })
    .unwrap();
    let t = check_theorem71(&Geometry::new(&s).unwrap()).unwrap();
    assert!(!t.weight_matches);
    assert!(!t.passes);
    assert!(t.messages.iter().any(|m| m.starts_with("weight mismatch")));
}
