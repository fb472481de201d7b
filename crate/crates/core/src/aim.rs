//! Symbolic asymptotic iteration on the transformed Rabi equation.
//!
//! Starting from the seed `(r₀, s₀)` of [`crate::model::initial_aim_pair`],
//!
//! ```text
//! r_n = r'_{n−1} + s_{n−1} + r₀ r_{n−1}
//! s_n = s'_{n−1} + s₀ r_{n−1}
//! ```
//!
//! and the iteration terminates when `s_n r_{n−1} − s_{n−1} r_n` vanishes.
//! After clearing the common `X^a (X−1)^b` denominator this cross-difference
//! is a polynomial `Δ_n` of degree `n + 1` in X. Its X-coefficients `C_{n,d}`
//! factor as `content · L^d · ∏_{k=n+1−d}^{n} (E + L − k) · Y_{n−d}` for `1 ≤ d ≤ n`,
//! the top coefficient `C_{n,n+1}` is `4^{n+1} L^{n+1} ∏_{k=0}^{n} (E + L − k)`, and `C_{n,0} = Y_n`.
//!
//! The raw leading coefficient comes out negative; `Δ_n` is multiplied by a
//! global sign so that the X-degree `n + 1` coefficient has positive leading
//! content. The applied sign is kept in [`TerminationData::sign`].

use crate::algebra::{peel_structure, MPoly, Monomial, Peeled, Rat, RatFn, Var};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::initial_aim_pair;

pub const DEFAULT_MAX_ITERATION: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AimState {
    pub n: usize,
    pub r: RatFn,
    pub s: RatFn,
}

#[derive(Clone, Debug)]
pub struct AimSeed {
    pub r0: RatFn,
    pub s0: RatFn,
}

impl AimSeed {
    pub fn rabi() -> AimSeed {
        let (r0, s0) = initial_aim_pair();
        AimSeed { r0, s0 }
    }

    pub fn initial_state(&self) -> AimState {
        AimState {
            n: 0,
            r: self.r0.clone(),
            s: self.s0.clone(),
        }
    }
}

pub fn aim_step(state: &AimState, seed: &AimSeed) -> AimState {
    let r = state
        .r
        .derivative_x()
        .add(&state.s)
        .add(&seed.r0.mul(&state.r));
    let s = state.s.derivative_x().add(&seed.s0.mul(&state.r));
    AimState {
        n: state.n + 1,
        r,
        s,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminationCoefficient {
    /// Power of X this coefficient multiplies.
    pub d: usize,
    pub poly: MPoly,
    pub peeled: Peeled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminationData {
    pub n: usize,
    /// Sign-normalized, fully reduced cross-difference numerator.
    pub delta: MPoly,
    /// Global sign applied to the raw numerator (`±1`).
    pub sign: i32,
    /// Powers `(a, b)` of `X^a (X−1)^b` left in the denominator after reduction.
    pub denominator: (u32, u32),
    /// Powers of X and (X−1) cancelled from the raw numerator.
    pub cancelled: (u32, u32),
    /// Coefficients `C_{n,d}` for `d = 0..=n+1`, ascending.
    pub coeffs: Vec<TerminationCoefficient>,
    /// `Y_n`: the peeled residual of `C_{n,0}` (whose content is `1` for every `n` computed).
    pub y_poly: MPoly,
}

impl TerminationData {
    pub fn coefficient(&self, d: usize) -> Option<&TerminationCoefficient> {
        self.coeffs.get(d)
    }

    pub fn top(&self) -> &TerminationCoefficient {
        self.coeffs.last().expect("degree n+1 coefficient")
    }
}

/// A QES energy read off the linear factors of the top coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QesEnergy {
    pub k: u32,
    /// `E = k − L`.
    pub energy: MPoly,
}

/// Raw numerator of `s_n r_{n−1} − s_{n−1} r_n` over its unreduced common
/// denominator, together with that denominator's `(X, X−1)` powers.
pub fn raw_cross_difference(prev: &AimState, cur: &AimState) -> (MPoly, u32, u32) {
    let lhs = (
        cur.s.numerator() * prev.r.numerator(),
        cur.s.pow_x() + prev.r.pow_x(),
        cur.s.pow_xm1() + prev.r.pow_xm1(),
    );
    let rhs = (
        prev.s.numerator() * cur.r.numerator(),
        prev.s.pow_x() + cur.r.pow_x(),
        prev.s.pow_xm1() + cur.r.pow_xm1(),
    );
    let a = lhs.1.max(rhs.1);
    let b = lhs.2.max(rhs.2);
    let x_minus_one = &MPoly::var(Var::X) - &MPoly::one();
    let lift = |(p, pa, pb): (MPoly, u32, u32)| {
        let p = p.mul_monomial(&Monomial::of(Var::X, a - pa));
        if b > pb {
            &p * &x_minus_one.pow(b - pb)
        } else {
            p
        }
    };
    (&lift(lhs) - &lift(rhs), a, b)
}

fn termination_from_states(prev: &AimState, cur: &AimState) -> Result<TerminationData> {
    let (raw, a, b) = raw_cross_difference(prev, cur);
    let reduced = RatFn::new(raw, a, b);
    let mut delta = reduced.numerator().clone();
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let top_deg = delta.degree(Var::X).unwrap_or(0) as usize;
    let top = &delta.coefficients_in(Var::X)[top_deg];
    let sign = if top.leading_sign() < 0 { -1 } else { 1 };
    if sign < 0 {
        delta = -delta;
    }
    let coeffs = delta
        .coefficients_in(Var::X)
        .into_iter()
        .enumerate()
        .map(|(d, poly)| {
            let peeled = peel_structure(&poly)?;
            Ok(TerminationCoefficient { d, poly, peeled })
        })
        .collect::<Result<Vec<_>>>()?;
    let y_poly = coeffs[0].peeled.residual.clone();
    Ok(TerminationData {
        n: cur.n,
        delta,
        sign,
        denominator: (reduced.pow_x(), reduced.pow_xm1()),
        cancelled: (a - reduced.pow_x(), b - reduced.pow_xm1()),
        coeffs,
        y_poly,
    })
}

#[derive(Clone, Debug)]
pub struct AimEngine {
    seed: AimSeed,
    max_iteration: usize,
    exec: Execution,
}

impl Default for AimEngine {
    fn default() -> Self {
        AimEngine::rabi()
    }
}

impl AimEngine {
    pub fn rabi() -> AimEngine {
        AimEngine {
            seed: AimSeed::rabi(),
            max_iteration: DEFAULT_MAX_ITERATION,
            exec: Execution::default(),
        }
    }

    pub fn with_seed(seed: AimSeed) -> AimEngine {
        AimEngine {
            seed,
            ..AimEngine::rabi()
        }
    }

    pub fn max_iteration(mut self, n_max: usize) -> AimEngine {
        self.max_iteration = n_max;
        self
    }

    pub fn execution(mut self, exec: Execution) -> AimEngine {
        self.exec = exec;
        self
    }

    fn check_range(&self, n: usize, min: usize) -> Result<()> {
        if n < min || n > self.max_iteration {
            return Err(Error::OutOfRange {
                what: "iteration n",
                value: n as i64,
                min: min as i64,
                max: self.max_iteration as i64,
            });
        }
        Ok(())
    }

    /// States `0..=n`.
    pub fn chain(&self, n: usize) -> Result<Vec<AimState>> {
        self.check_range(n, 0)?;
        let mut states = vec![self.seed.initial_state()];
        for _ in 0..n {
            let next = aim_step(states.last().unwrap(), &self.seed);
            states.push(next);
        }
        Ok(states)
    }

    pub fn termination_poly(&self, n: usize) -> Result<TerminationData> {
        self.check_range(n, 1)?;
        let states = self.chain(n)?;
        termination_from_states(&states[n - 1], &states[n])
    }

    /// Termination data for every `n` in `1..=n_last`, sharing one chain.
    pub fn termination_table(&self, n_last: usize) -> Result<Vec<TerminationData>> {
        self.check_range(n_last, 1)?;
        let states = self.chain(n_last)?;
        self.exec
            .map_range(n_last, |i| termination_from_states(&states[i], &states[i + 1]))
            .into_iter()
            .collect()
    }

    /// `Y_n`. `Y_0` is the residual of `C_{1,1} = 8 L (E+L−1) Y_0`; for `n ≥ 1` it is the residual of `C_{n,0}`.
    pub fn y_polynomial(&self, n: usize) -> Result<MPoly> {
        if n == 0 {
            self.check_range(1, 1)?;
            let t = self.termination_poly(1)?;
            return Ok(t.coeffs[1].peeled.residual.clone());
        }
        Ok(self.termination_poly(n)?.y_poly)
    }

    pub fn qes_energies(&self, n: usize) -> Result<Vec<QesEnergy>> {
        let t = self.termination_poly(n)?;
        Ok(qes_energies_of(&t))
    }
}

/// Linear-factor roots `E = k − L` of the top coefficient.
pub fn qes_energies_of(t: &TerminationData) -> Vec<QesEnergy> {
    let mut ks = t.top().peeled.linear_ks.clone();
    ks.dedup();
    ks.into_iter()
        .map(|k| QesEnergy {
            k,
            energy: &MPoly::int(k as i64) - &MPoly::var(Var::L),
        })
        .collect()
}

pub fn termination_poly(n: usize) -> Result<TerminationData> {
    AimEngine::rabi().termination_poly(n)
}

pub fn y_polynomial(n: usize) -> Result<MPoly> {
    AimEngine::rabi().y_polynomial(n)
}

pub fn qes_energies_from_aim(n: usize) -> Result<Vec<QesEnergy>> {
    AimEngine::rabi().qes_energies(n)
}

/// Expected integer content of `C_{n,d}` from the binomial pattern `4^d · C(n+1, d)`.
pub fn binomial_content(n: usize, d: usize) -> Rat {
    use num_bigint::BigInt;
    let mut binom = BigInt::from(1);
    for i in 0..d {
        binom = binom * BigInt::from(n + 1 - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(binom * BigInt::from(4).pow(d as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat_int};

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn first_step_structure() {
        let seed = AimSeed::rabi();
        let s0 = seed.initial_state();
        let s1 = aim_step(&s0, &seed);
        let r1 = seed.r0.derivative_x().add(&seed.s0).add(&seed.r0.mul(&seed.r0));
        let ss1 = seed.s0.derivative_x().add(&seed.s0.mul(&seed.r0));
        assert_eq!(s1.r, r1);
        assert_eq!(s1.s, ss1);
        assert_eq!(s1.n, 1);
    }

    #[test]
    fn denominators_grow_by_one_per_step() {
        let engine = AimEngine::rabi();
        let chain = engine.chain(5).unwrap();
        for (n, st) in chain.iter().enumerate() {
            let k = n as u32 + 1;
            assert_eq!((st.r.pow_x(), st.r.pow_xm1()), (k, k), "r_{n}");
            assert_eq!((st.s.pow_x(), st.s.pow_xm1()), (k, k), "s_{n}");
        }
    }

    #[test]
    fn degenerate_constant_seed() {
        // s₀ = 0, r₀ = c: r_n = c^{n+1}, s_n = 0.
        let c = rat_int(3);
        let seed = AimSeed {
            r0: RatFn::from_poly(MPoly::constant(c.clone())),
            s0: RatFn::from_poly(MPoly::zero()),
        };
        let engine = AimEngine::with_seed(seed);
        let chain = engine.chain(4).unwrap();
        for (n, st) in chain.iter().enumerate() {
            assert_eq!(
                st.r,
                RatFn::from_poly(MPoly::constant(num_traits::pow(c.clone(), n + 1)))
            );
            assert!(st.s.is_zero());
        }
    }

    #[test]
    fn n1_coefficients() {
        let t = termination_poly(1).unwrap();
        assert_eq!(t.sign, -1);
        assert_eq!(t.delta.degree(Var::X), Some(2));
        assert_eq!(t.coeffs[2].poly, p("16*L^2*(E+L)*(E+L-1)"));
        let y0 = p("E^2 - 2*L*E - B - 3*L^2");
        assert_eq!(t.coeffs[1].poly, p("8*L*(E+L-1)") * &y0);
        assert_eq!(y_polynomial(0).unwrap(), y0);
    }

    #[test]
    fn n2_top_coefficient() {
        let t = termination_poly(2).unwrap();
        assert_eq!(t.coeffs[3].poly, p("64*L^3*(E+L)*(E+L-1)*(E+L-2)"));
    }

    #[test]
    fn reduction_is_sound() {
        let engine = AimEngine::rabi();
        let chain = engine.chain(3).unwrap();
        for n in 1..=3 {
            let (raw, _, _) = raw_cross_difference(&chain[n - 1], &chain[n]);
            let t = termination_from_states(&chain[n - 1], &chain[n]).unwrap();
            let (cx, cxm1) = t.cancelled;
            let rebuilt = (&t.delta.mul_monomial(&Monomial::of(Var::X, cx))
                * &(&MPoly::var(Var::X) - &MPoly::one()).pow(cxm1))
                .scale(&rat_int(t.sign as i64));
            assert_eq!(rebuilt, raw);
        }
    }

    #[test]
    fn energies_from_factor_chain() {
        let e = qes_energies_from_aim(1).unwrap();
        assert_eq!(e.iter().map(|q| q.k).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(e[1].energy, p("1 - L"));
        assert_eq!(e[0].energy, p("-L"));
    }

    #[test]
    fn out_of_range() {
        assert!(termination_poly(0).is_err());
        assert!(termination_poly(9).is_err());
        assert!(AimEngine::rabi().max_iteration(2).termination_poly(3).is_err());
    }

    #[test]
    fn binomial_pattern_values() {
        assert_eq!(binomial_content(1, 2), rat_int(16));
        assert_eq!(binomial_content(4, 4), rat_int(1280));
        assert_eq!(binomial_content(5, 5), rat_int(6144));
        assert_eq!(binomial_content(5, 1), rat_int(24));
    }
}
