use num_traits::Zero;
use proptest::prelude::*;
use qes_rabi::algebra::{rat, Rat};
use qes_rabi::exec::Execution;
use qes_rabi::norms::{
    closed_form_deviation, gamma_pochhammer, gamma_recursion, norm_sign_profile, norm_sweep, Sign,
};

fn lambda_sq() -> impl Strategy<Value = Rat> {
    (1i64..500, 1i64..50).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn recursion_equals_product(l in lambda_sq()) {
        let seq = gamma_recursion(20, &l).unwrap();
        for n in 0..=20 {
            prop_assert_eq!(&seq.values[n], &gamma_pochhammer(n, &l).unwrap());
        }
    }

    #[test]
    fn sign_rule(l in lambda_sq()) {
        let seq = gamma_recursion(20, &l).unwrap();
        prop_assert_eq!(seq.signs, norm_sign_profile(20, &l).unwrap());
    }

    #[test]
    fn vanishing_at_integers(m in 1i64..15) {
        let seq = gamma_recursion(20, &Rat::from_integer(m.into())).unwrap();
        for (n, g) in seq.values.iter().enumerate() {
            prop_assert_eq!(g.is_zero(), n as i64 >= m);
        }
    }
}

#[test]
fn closed_form_on_grid() {
    for l in [rat(3, 10), rat(1, 2), rat(17, 10), rat(5, 2), rat(39, 10)] {
        let dev = closed_form_deviation(&gamma_recursion(20, &l).unwrap()).unwrap();
        assert!(dev <= 1e-10, "L = {l}: {dev}");
    }
}

#[test]
fn sweep_is_order_preserving() {
    let ls: Vec<Rat> = (1..20).map(|k| rat(k, 7)).collect();
    let a = norm_sweep(&ls, 15, Execution::Sequential).unwrap();
    let b = norm_sweep(&ls, 15, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[17].signs[1], Sign::Negative); // L = 18/7 > 1
}
