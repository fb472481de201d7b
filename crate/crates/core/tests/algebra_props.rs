
use proptest::prelude::*;
use qes_rabi::algebra::{
    energy_shift_factor, parse_poly, peel_structure, rat, render_poly, MPoly, Monomial, Var,
};

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u32..3, 0u32..3, 0u32..3, 0u32..3).prop_map(|(x, e, l, b)| {
        let mut m = Monomial::of(Var::X, x);
        *m.exp_mut(Var::E) = e;
        *m.exp_mut(Var::L) = l;
        *m.exp_mut(Var::B) = b;
        m
    })
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((monomial(), -20i64..20, 1i64..6), 0..6)
        .prop_map(|terms| MPoly::from_terms(terms.into_iter().map(|(m, n, d)| (m, rat(n, d)))))
}

fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MPoly::one(), a.clone());
    }

    #[test]
    fn exact_division_recovers_factor(a in nonzero_poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn derivative_is_linear_and_leibniz(a in poly(), b in poly(), k in -5i64..5) {
        for v in [Var::X, Var::E, Var::L, Var::B] {
            let lhs = (&a * &b).derivative(v);
            let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
            prop_assert_eq!(lhs, rhs);
            let s = MPoly::int(k);
            prop_assert_eq!((&(&s * &a) + &b).derivative(v), &(&s * &a.derivative(v)) + &b.derivative(v));
        }
    }

    #[test]
    fn render_parse_round_trip(a in poly()) {
        prop_assert_eq!(parse_poly(&render_poly(&a)).unwrap(), a);
    }

    #[test]
    fn peel_reconstructs_structured_products(
        content in prop::sample::select(vec![1i64, -1, 2, 3, -7, 16, 1280]),
        l_power in 0u32..4,
        ks in prop::collection::vec(0u32..4, 0..4),
        residual in nonzero_poly(),
    ) {
        let mut p = MPoly::int(content).mul_monomial(&Monomial::of(Var::L, l_power));
        for &k in &ks {
            p = &p * &energy_shift_factor(k);
        }
        let p = &p * &residual;
        let peeled = peel_structure(&p).unwrap();
        prop_assert_eq!(peeled.expand(), p);
        prop_assert!(peeled.l_power >= l_power);
        for k in &ks {
            prop_assert!(peeled.linear_ks.contains(k));
        }
        for k in 0..=peeled.residual.degree(Var::E).unwrap_or(0) {
            prop_assert!(peeled.residual.div_exact(&energy_shift_factor(k)).is_err());
        }
    }
}

#[test]
fn arithmetic_examples() {
    let p = |s: &str| parse_poly(s).unwrap();
    assert_eq!(p("E + L") + p("E - L"), p("2*E"));
    assert!((p("E + L") * MPoly::zero()).is_zero());
    assert_eq!(p("X^2 - X") * p("X^2 - X"), p("X^4 - 2*X^3 + X^2"));
    assert_eq!(
        p("4*L*X^2 - 2*L*X - L + 2*E*X - E - X + 1").derivative(Var::X),
        p("8*L*X - 2*L + 2*E - 1")
    );
    assert!(p("B").derivative(Var::X).is_zero());
    assert_eq!(p("X^2").derivative(Var::X), p("2*X"));
    assert_eq!(MPoly::one().derivative(Var::E), MPoly::zero());
    assert!(MPoly::one().is_one());
}
