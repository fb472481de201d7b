//! Structural properties of the iteration, the series, and their agreement.

use num_traits::{One, Zero};
use proptest::prelude::*;
use qes_rabi::aim::{binomial_content, AimEngine};
use qes_rabi::algebra::{rat, Rat, Var};
use qes_rabi::exec::Execution;
use qes_rabi::fixtures::JUDDIAN_TABLE;
use qes_rabi::series::{
    bd_polynomials, energy_prefactor, juddian_polynomial, qes_eigenfunction, qes_energy_poly,
    series_prefactor_at, series_relation, u_sequence_at, Branch,
};

#[test]
fn every_coefficient_peels_and_follows_the_factor_chain() {
    let table = AimEngine::rabi().termination_table(5).unwrap();
    for t in &table {
        assert_eq!(t.delta.degree(Var::X), Some(t.n as u32 + 1));
        for c in &t.coeffs {
            assert_eq!(c.peeled.expand(), c.poly, "C_{}{}", t.n, c.d);
            if c.d == 0 {
                continue;
            }
            let first = (t.n + 1).saturating_sub(c.d) as u32;
            let expect: Vec<u32> = (first..=t.n as u32).collect();
            assert_eq!(c.peeled.linear_ks, expect, "C_{}{}", t.n, c.d);
            assert_eq!(c.peeled.l_power, c.d as u32);
            assert_eq!(c.peeled.content, binomial_content(t.n, c.d));
        }
        let top = t.top();
        assert_eq!(top.peeled.linear_ks.len(), t.n + 1);
        assert!(top.peeled.residual.is_one());
        assert_eq!(t.y_poly.degree(Var::E), Some(2 * t.n as u32 + 2));
    }
}

#[test]
fn execution_strategies_agree() {
    let seq = AimEngine::rabi().execution(Execution::Sequential).termination_table(4).unwrap();
    let par = AimEngine::rabi().execution(Execution::Parallel).termination_table(4).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn qes_energies_cover_the_factor_chain() {
    let e = AimEngine::rabi().qes_energies(5).unwrap();
    assert_eq!(e.iter().map(|q| q.k).collect::<Vec<_>>(), (0..=5).collect::<Vec<_>>());
}

#[test]
fn energy_column_and_truncation() {
    let rel = series_relation(Branch::Zero).unwrap();
    for row in JUDDIAN_TABLE {
        assert_eq!(qes_energy_poly(row.n), row.energy_poly());
        let e = qes_energy_poly(row.n);
        assert!(rel.a(row.n as i64 - 1).subst(Var::E, &e).is_zero());
        assert!(rel.g(row.n as i64 + 1).subst(Var::E, &e).is_zero());
    }
}

#[test]
fn eigenfunctions_truncate_exactly() {
    let rel = series_relation(Branch::Zero).unwrap();
    for (n, l, b) in [(1usize, rat(3, 16), rat(1, 4)), (2, rat(5, 8), Rat::one())] {
        let chi = qes_eigenfunction(n, &l, &b).unwrap();
        let u: Vec<Rat> = chi
            .coefficients_in(Var::X)
            .iter()
            .map(|c| c.constant_value().unwrap())
            .collect();
        let e = &Rat::from_integer((n as i64).into()) - &l;
        // rows N and N+1 with u_{N+1} = u_{N+2} = 0
        let [_, m, g] = rel.row_at(n as i64, &e, &l, &b);
        assert!((&m * &u[n] + &g * &u[n - 1]).is_zero());
        let [_, _, g1] = rel.row_at(n as i64 + 1, &e, &l, &b);
        assert!(g1.is_zero());
    }
}

#[test]
fn juddian_rows_are_sign_normalized() {
    for n in 1..=6 {
        let j = juddian_polynomial(n).unwrap();
        let top = j.coefficients_in(Var::L).pop().unwrap();
        assert!(top.leading_sign() > 0);
        assert!(j.terms().all(|(_, c)| c.is_integer()));
    }
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (1i64..200, 1i64..40).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn prefactor_ratio(l in small_rat(), b in small_rat()) {
        prop_assume!(!l.is_integer());
        for n in 0..20usize {
            let c0 = series_prefactor_at(n, &l, &b).unwrap();
            let c1 = series_prefactor_at(n + 1, &l, &b).unwrap();
            let k = Rat::from_integer((n as i64 + 1).into());
            prop_assert_eq!(&c1 / &c0, -&b / (&k * (&k - &l)));
        }
    }

    #[test]
    fn generating_series_term_by_term(e in small_rat(), l in small_rat(), b in small_rat()) {
        let u = match u_sequence_at(&e, &l, &b, 6) {
            Ok(u) => u,
            Err(_) => return Ok(()),
        };
        let x = Rat::zero();
        for (n, bd) in bd_polynomials(6).iter().enumerate() {
            let c = energy_prefactor(n).eval_rat([&e, &l, &b, &x]).unwrap();
            let p = bd.as_fraction().eval_rat([&e, &l, &b, &x]).unwrap();
            prop_assert_eq!(c * p, u[n].clone());
        }
    }
}

#[test]
fn y_specialization_vanishes_exactly_at_juddian_points() {
    let y2 = AimEngine::rabi().y_polynomial(2).unwrap();
    let at = y2.subst(Var::E, &qes_energy_poly(2));
    let (zero, b) = (Rat::zero(), Rat::one());
    assert!(at.eval_rat([&zero, &rat(5, 8), &b, &zero]).is_zero());
    assert!(!at.eval_rat([&zero, &rat(1, 3), &b, &zero]).is_zero());
}
