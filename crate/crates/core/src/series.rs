//! Frobenius series for the ξ-form equation and the polynomial families built on it.
//!
//! Substituting `χ = ξ^q Σ u_n ξⁿ` into `p₂χ'' + p₁χ' + p₀χ = 0` gives, for
//! every `n`, the three-term relation
//!
//! ```text
//! A(n) u_{n+1} + M(n) u_n + G(n) u_{n−1} = 0
//! ```
//!
//! The coefficients are derived here from [`ode_coefficients`]; at `q = 0`
//!
//! ```text
//! A(n) = (n+1)(n+1−L−E)
//! M(n) = n(2E−2L−n) + 3L² + 2EL + B − E²
//! G(n) = 4L(n−1−L−E)
//! ```
//!
//! With `D_n = ∏_{k<n} A(k) = n!(1−L−E)_n` the cleared numerators
//! `P̃_n = D_n u_n` obey `P̃_{n+1} = −M(n)P̃_n − G(n)A(n−1)P̃_{n−1}` and are
//! polynomials in `E, L, B`. The energy polynomials are
//! `P_n = u_n / c_n(E)` with `c_n(E) = (−1)ⁿ Bⁿ / (n!(1−L−E)_n)`, so
//! `Bⁿ P_n = (−1)ⁿ P̃_n` has degree `2n` in E.
//!
//! At `E = N − L` the factor `A(N−1)` vanishes, the row `N−1` becomes the
//! Juddian constraint `J_N(L, B) = Bᴺ P_N(N − L) = 0`, and `G(N+1) = 0`
//! truncates the series to a polynomial of degree N.

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat_int, MPoly, Rat, Var};
use crate::error::{Error, Result};
use crate::model::{ode_coefficients, OdeCoefficients};

pub const DEFAULT_MAX_ORDER: usize = 8;

/// `base (base−1) ⋯ (base−k+1)`.
fn falling(base: &MPoly, k: usize) -> MPoly {
    (0..k).fold(MPoly::one(), |acc, i| {
        &acc * &(base - &MPoly::int(i as i64))
    })
}

/// Which indicial root the series is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Zero,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRelation {
    q: MPoly,
    /// `coeffs[k][j]`: coefficient of `X^j` in the factor multiplying `χ^{(k)}`.
    coeffs: [Vec<MPoly>; 3],
}

impl SeriesRelation {
    pub fn derive(ode: &OdeCoefficients, q: MPoly) -> Result<SeriesRelation> {
        let coeffs = [
            ode.p0.coefficients_in(Var::X),
            ode.p1.coefficients_in(Var::X),
            ode.p2.coefficients_in(Var::X),
        ];
        for (k, row) in coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let shift = k as i64 - j as i64;
                if !c.is_zero() && !(-1..=1).contains(&shift) {
                    return Err(Error::NotThreeTerm { shift });
                }
            }
        }
        Ok(SeriesRelation { q, coeffs })
    }

    pub fn q(&self) -> &MPoly {
        &self.q
    }

    /// Coefficient of `u_{n+s}` in row `n`.
    fn shifted(&self, n: i64, s: i64) -> MPoly {
        let base = &self.q + &MPoly::int(n + s);
        let mut acc = MPoly::zero();
        for (k, row) in self.coeffs.iter().enumerate() {
            let j = k as i64 - s;
            if let Some(c) = usize::try_from(j).ok().and_then(|j| row.get(j)) {
                if !c.is_zero() {
                    acc = &acc + &(c * &falling(&base, k));
                }
            }
        }
        acc
    }

    /// Coefficient of `u_{n+1}` in row `n`.
    pub fn a(&self, n: i64) -> MPoly {
        self.shifted(n, 1)
    }

    /// Coefficient of `u_n` in row `n`.
    pub fn m(&self, n: i64) -> MPoly {
        self.shifted(n, 0)
    }

    /// Coefficient of `u_{n−1}` in row `n`.
    pub fn g(&self, n: i64) -> MPoly {
        self.shifted(n, -1)
    }

    /// `(A(n), M(n), G(n))` with `E` replaced by `energy`.
    pub fn row(&self, n: i64, energy: &MPoly) -> [MPoly; 3] {
        [self.a(n), self.m(n), self.g(n)].map(|p| p.subst(Var::E, energy))
    }

    /// `(A(n), M(n), G(n))` at exact `E, L, B`.
    pub fn row_at(&self, n: i64, e: &Rat, l: &Rat, b: &Rat) -> [Rat; 3] {
        let x = Rat::zero();
        [self.a(n), self.m(n), self.g(n)].map(|p| p.eval_rat([e, l, b, &x]))
    }

    /// `(A(n), M(n), G(n))` at floating `E, L, B`.
    pub fn row_f64(&self, n: i64, e: f64, l: f64, b: f64) -> [f64; 3] {
        [self.a(n), self.m(n), self.g(n)].map(|p| p.eval_f64([e, l, b, 0.0]))
    }
}

/// Indicial polynomial `c₂q² + c₁q + c₀` and its two roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialRoots {
    pub polynomial: [MPoly; 3],
    pub first: MPoly,
    pub second: MPoly,
}

pub fn indicial_roots() -> Result<IndicialRoots> {
    indicial_roots_of(&ode_coefficients())
}

pub fn indicial_roots_of(ode: &OdeCoefficients) -> Result<IndicialRoots> {
    // Coefficient of u₀ in the lowest row: Σ_k p_{k,k−1} q(q−1)⋯(q−k+1).
    let p = |poly: &MPoly, j: usize| poly.coefficients_in(Var::X).get(j).cloned().unwrap_or_default();
    let c2 = p(&ode.p2, 1);
    let c1 = &p(&ode.p1, 0) - &c2;
    let c0 = MPoly::zero();
    let lead = c2
        .constant_value()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Invalid("indicial leading coefficient is not a nonzero constant".into()))?;
    let second = c1.scale(&(-Rat::one() / lead));
    Ok(IndicialRoots {
        polynomial: [c0, c1, c2],
        first: MPoly::zero(),
        second,
    })
}

pub fn series_relation(branch: Branch) -> Result<SeriesRelation> {
    let ode = ode_coefficients();
    let q = match branch {
        Branch::Zero => MPoly::zero(),
        Branch::Second => indicial_roots_of(&ode)?.second,
    };
    SeriesRelation::derive(&ode, q)
}

fn zero_branch() -> SeriesRelation {
    series_relation(Branch::Zero).expect("the ξ-form equation is three-term")
}

/// A quotient of two polynomials, kept unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: MPoly,
    pub den: MPoly,
}

impl Fraction {
    pub fn eval_rat(&self, vals: [&Rat; 4]) -> Option<Rat> {
        let d = self.den.eval_rat(vals);
        (!d.is_zero()).then(|| self.num.eval_rat(vals) / d)
    }

    /// True when `self` and `other` are equal as rational functions.
    pub fn same_as(&self, other: &Fraction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

fn pochhammer_poly(a: &MPoly, n: usize) -> MPoly {
    (0..n).fold(MPoly::one(), |acc, i| &acc * &(a + &MPoly::int(i as i64)))
}

fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * rat_int(k as i64))
}

fn sign_pow(n: usize) -> Rat {
    if n % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `c_n = (−1)ⁿ Bⁿ / (n! (1−L)_n)` as a fraction in `L, B`.
pub fn series_prefactor(n: usize) -> Fraction {
    let one_minus_l = &MPoly::one() - &MPoly::var(Var::L);
    Fraction {
        num: MPoly::var(Var::B).pow(n as u32).scale(&sign_pow(n)),
        den: pochhammer_poly(&one_minus_l, n).scale(&factorial(n)),
    }
}

/// `c_n` at exact `L, B`; a positive integer `L = k ≤ n` is a pole.
pub fn series_prefactor_at(n: usize, l: &Rat, b: &Rat) -> Result<Rat> {
    if l.is_integer() && l.is_positive() && l <= &rat_int(n as i64) {
        return Err(Error::Pole {
            k: l.to_integer().try_into().unwrap_or(u32::MAX),
        });
    }
    let f = series_prefactor(n);
    Ok(f.eval_rat([&Rat::zero(), l, b, &Rat::zero()]).expect("pole excluded"))
}

/// `c_n(E) = (−1)ⁿ Bⁿ / (n! (1−L−E)_n)`, the normalization that makes `P_n` polynomial.
pub fn energy_prefactor(n: usize) -> Fraction {
    let base = &(&MPoly::one() - &MPoly::var(Var::L)) - &MPoly::var(Var::E);
    Fraction {
        num: MPoly::var(Var::B).pow(n as u32).scale(&sign_pow(n)),
        den: pochhammer_poly(&base, n).scale(&factorial(n)),
    }
}

/// `u_0..=u_{n_max}` at `E = energy` as fractions `P̃_n / D_n`.
///
/// Fails with [`Error::QesRow`] when some `A(n)` vanishes identically.
pub fn u_sequence(energy: &MPoly, n_max: usize) -> Result<Vec<Fraction>> {
    u_sequence_with(&zero_branch(), energy, n_max)
}

pub fn u_sequence_with(rel: &SeriesRelation, energy: &MPoly, n_max: usize) -> Result<Vec<Fraction>> {
    let mut nums = vec![MPoly::one()];
    let mut dens = vec![MPoly::one()];
    let mut prev_a = MPoly::zero();
    for n in 0..n_max {
        let [a, m, g] = rel.row(n as i64, energy);
        if a.is_zero() {
            return Err(Error::QesRow { row: n });
        }
        let mut next = -(&m * &nums[n]);
        if n > 0 {
            next = &next - &(&(&g * &prev_a) * &nums[n - 1]);
        }
        dens.push(&dens[n] * &a);
        nums.push(next);
        prev_a = a;
    }
    Ok(nums
        .into_iter()
        .zip(dens)
        .map(|(num, den)| Fraction { num, den })
        .collect())
}

/// `u_0..=u_{n_max}` at exact `E, L, B`.
pub fn u_sequence_at(e: &Rat, l: &Rat, b: &Rat, n_max: usize) -> Result<Vec<Rat>> {
    let rel = zero_branch();
    let mut u = vec![Rat::one()];
    for n in 0..n_max {
        let [a, m, g] = rel.row_at(n as i64, e, l, b);
        if a.is_zero() {
            return Err(Error::QesRow { row: n });
        }
        let lower = if n > 0 { &g * &u[n - 1] } else { Rat::zero() };
        u.push(-(&m * &u[n] + lower) / a);
    }
    Ok(u)
}

/// `Bⁿ P_n(E)`, a polynomial in `E, L, B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdPolynomial {
    pub n: usize,
    pub scaled: MPoly,
}

impl BdPolynomial {
    pub fn b_power(&self) -> u32 {
        self.n as u32
    }

    /// `P_n` as a fraction with denominator `Bⁿ`.
    pub fn as_fraction(&self) -> Fraction {
        Fraction {
            num: self.scaled.clone(),
            den: MPoly::var(Var::B).pow(self.n as u32),
        }
    }
}

/// Energy polynomials `P_0..=P_{n_max}` (scaled by `Bⁿ`), sharing one recursion.
pub fn bd_polynomials(n_max: usize) -> Vec<BdPolynomial> {
    let seq = u_sequence(&MPoly::var(Var::E), n_max).expect("A(n) never vanishes at symbolic E");
    seq.into_iter()
        .enumerate()
        .map(|(n, f)| BdPolynomial {
            n,
            scaled: f.num.scale(&sign_pow(n)),
        })
        .collect()
}

pub fn bd_polynomial(n: usize) -> BdPolynomial {
    bd_polynomials(n).pop().expect("nonempty")
}

/// `J_N(L, B) = Bᴺ P_N(E = N − L)`, denominators cleared and the top power of L positive.
pub fn juddian_polynomial(n: usize) -> Result<MPoly> {
    juddian_polynomial_with_limit(n, DEFAULT_MAX_ORDER)
}

pub fn juddian_polynomial_with_limit(n: usize, n_max: usize) -> Result<MPoly> {
    if n == 0 || n > n_max {
        return Err(Error::OutOfRange {
            what: "Juddian order N",
            value: n as i64,
            min: 1,
            max: n_max as i64,
        });
    }
    let energy = qes_energy_poly(n);
    let rel = zero_branch();
    // Rows 0..N−2 are regular at E = N − L; P̃_N itself only needs A(N−2).
    let mut nums = vec![MPoly::one()];
    let mut prev_a = MPoly::zero();
    for k in 0..n {
        let [a, m, g] = rel.row(k as i64, &energy);
        let mut next = -(&m * &nums[k]);
        if k > 0 {
            next = &next - &(&(&g * &prev_a) * &nums[k - 1]);
        }
        nums.push(next);
        prev_a = a;
    }
    let j = nums.pop().unwrap().scale(&sign_pow(n));
    Ok(normalize_juddian(j))
}

fn normalize_juddian(j: MPoly) -> MPoly {
    let lcm = crate::algebra::denominator_lcm(j.terms().map(|(_, c)| c));
    let mut j = j.scale(&Rat::from_integer(lcm));
    let coeffs = j.coefficients_in(Var::L);
    if coeffs.last().map(|c| c.leading_sign() < 0).unwrap_or(false) {
        j = -j;
    }
    j
}

/// `E = N − L` as a polynomial.
pub fn qes_energy_poly(n: usize) -> MPoly {
    &MPoly::int(n as i64) - &MPoly::var(Var::L)
}

/// `E = N + q − L`.
pub fn qes_energy(n: i64, q: &Rat, l: &Rat) -> Rat {
    rat_int(n) + q - l
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QesLevel {
    pub n: usize,
    pub q: Rat,
    pub energy: MPoly,
    pub juddian: MPoly,
    pub eigenfunction: Option<MPoly>,
}

/// Symbolic level data for order `N` on the `q = 0` branch.
pub fn qes_level(n: usize) -> Result<QesLevel> {
    Ok(QesLevel {
        n,
        q: Rat::zero(),
        energy: qes_energy_poly(n),
        juddian: juddian_polynomial(n)?,
        eigenfunction: None,
    })
}

impl QesLevel {
    /// Attaches the exact eigenfunction at `(L, B)`; errors if the point is not Juddian.
    pub fn at(mut self, l: &Rat, b: &Rat) -> Result<QesLevel> {
        self.eigenfunction = Some(qes_eigenfunction(self.n, l, b)?);
        Ok(self)
    }
}

/// `J_N(L, B)` at exact values.
pub fn juddian_value(n: usize, l: &Rat, b: &Rat) -> Result<Rat> {
    let j = juddian_polynomial(n)?;
    Ok(j.eval_rat([&Rat::zero(), l, b, &Rat::zero()]))
}

/// Exact polynomial eigenfunction χ(X) of degree `N` at a rational Juddian point.
pub fn qes_eigenfunction(n: usize, l: &Rat, b: &Rat) -> Result<MPoly> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "Juddian order N",
            value: 0,
            min: 1,
            max: DEFAULT_MAX_ORDER as i64,
        });
    }
    if !juddian_value(n, l, b)?.is_zero() {
        return Err(Error::NotJuddian { n });
    }
    let e = qes_energy(n as i64, &Rat::zero(), l);
    let rel = zero_branch();
    let mut u = vec![Rat::one()];
    for k in 0..n - 1 {
        let [a, m, g] = rel.row_at(k as i64, &e, l, b);
        let lower = if k > 0 { &g * &u[k - 1] } else { Rat::zero() };
        u.push(-(&m * &u[k] + lower) / a);
    }
    let [_, m, g] = rel.row_at(n as i64, &e, l, b);
    if m.is_zero() {
        return Err(Error::DegenerateTruncation { n });
    }
    u.push(-(&g * &u[n - 1]) / m);
    Ok(MPoly::from_terms(
        u.into_iter()
            .enumerate()
            .map(|(k, c)| (crate::algebra::Monomial::of(Var::X, k as u32), c)),
    ))
}

/// Floating counterpart of [`qes_eigenfunction`] for irrational Juddian points.
///
/// Returns ascending χ coefficients; the caller is responsible for `(L, B)`
/// being (numerically) on the Juddian curve.
pub fn qes_eigenfunction_f64(n: usize, l: f64, b: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "Juddian order N",
            value: 0,
            min: 1,
            max: DEFAULT_MAX_ORDER as i64,
        });
    }
    let e = n as f64 - l;
    let rel = zero_branch();
    let mut u = vec![1.0];
    for k in 0..n - 1 {
        let [a, m, g] = rel.row_f64(k as i64, e, l, b);
        let lower = if k > 0 { g * u[k - 1] } else { 0.0 };
        u.push(-(m * u[k] + lower) / a);
    }
    let [_, m, g] = rel.row_f64(n as i64, e, l, b);
    if m == 0.0 {
        return Err(Error::DegenerateTruncation { n });
    }
    u.push(-g * u[n - 1] / m);
    Ok(u)
}
