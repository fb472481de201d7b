//! The transformed Rabi eigenproblem.
//!
//! With ħ = ω = 1 and Ω = 2β, the transformed Hamiltonian
//! `a†a + β σx + λ σz (a† + a)` becomes, in the Bargmann representation
//! `a† → x`, `a → d/dx`, the first-order system
//!
//! ```text
//! (x + λ) ψ₁' = (E − λx) ψ₁ − β ψ₂
//! (x − λ) ψ₂' = (E + λx) ψ₂ − β ψ₁
//! ```
//!
//! Eliminating ψ₂ with the first equation and substituting into the second
//! gives `β (x − λ) · [second equation residual] = −R₁₀[ψ₁]`, where R₁₀ is the
//! residual of the second-order equation
//!
//! ```text
//! (x² − λ²) ψ₁'' − [(E − λx − 1)(x − λ) + (x + λ)(E + λx)] ψ₁'
//!     − [β² − E² + λ²x² − λ(x − λ)] ψ₁ = 0.
//! ```
//!
//! (Checked symbolically once; [`tests::elimination_reproduces_second_order_form`]
//! keeps it checked numerically.) Under `x = λ(2ξ − 1)`, `ψ₁ = e^{−2λ²ξ} χ(ξ)` its
//! residual is `−e^{−2λ²ξ}` times the residual of
//!
//! ```text
//! ξ(1 − ξ) χ'' + [L(4ξ² − 2ξ − 1) + E(2ξ − 1) − ξ + 1] χ'
//!     + [L²(3 − 4ξ) + 2EL(1 − 2ξ) + B − E²] χ = 0
//! ```
//!
//! with `L = λ²`, `B = β²`. This last equation is the canonical object for
//! everything downstream.
//!
//! # Sign convention for the iteration seed
//!
//! The iteration works on `χ'' = r₀ χ' + s₀ χ`. Writing the equation above as
//! `p₂ χ'' + p₁ χ' + p₀ χ = 0` with `p₂ = ξ(1 − ξ)`, we fix `r₀ = −p₁/p₂` and
//! `s₀ = −p₀/p₂`. Because `−p₂ = ξ(ξ − 1)` this is `r₀ = p₁ / (ξ(ξ − 1))`,
//! `s₀ = p₀ / (ξ(ξ − 1))`.

use num_traits::{Signed, Zero};

use crate::algebra::{parse_poly, to_f64, MPoly, Rat, RatFn, Var};
use crate::error::{Error, Result};

/// Default distance kept from the singular points x = ±λ on residual grids.
pub const DEFAULT_SINGULAR_MARGIN: f64 = 1e-3;

/// Exact physical parameters: `L = λ²` and `B = β²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    l: Rat,
    b: Rat,
}

impl ModelParams {
    pub fn new(lambda_sq: Rat, beta_sq: Rat) -> Result<ModelParams> {
        if !lambda_sq.is_positive() {
            return Err(Error::NonPositiveCoupling(lambda_sq.to_string()));
        }
        if beta_sq.is_negative() {
            return Err(Error::Invalid(format!("β² must be non-negative (got {beta_sq})")));
        }
        Ok(ModelParams {
            l: lambda_sq,
            b: beta_sq,
        })
    }

    pub fn from_lambda_beta(lambda: &Rat, beta: &Rat) -> Result<ModelParams> {
        ModelParams::new(lambda * lambda, beta * beta)
    }

    pub fn lambda_sq(&self) -> &Rat {
        &self.l
    }

    pub fn beta_sq(&self) -> &Rat {
        &self.b
    }

    pub fn to_float(&self) -> FloatParams {
        FloatParams::from_squares(to_f64(&self.l), to_f64(&self.b))
    }
}

/// Floating parameters λ ≥ 0, β ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatParams {
    pub lambda: f64,
    pub beta: f64,
}

impl FloatParams {
    pub fn from_squares(lambda_sq: f64, beta_sq: f64) -> FloatParams {
        FloatParams {
            lambda: lambda_sq.sqrt(),
            beta: beta_sq.sqrt(),
        }
    }

    pub fn lambda_sq(&self) -> f64 {
        self.lambda * self.lambda
    }
}

/// Coefficients of `p₂ χ'' + p₁ χ' + p₀ χ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeCoefficients {
    pub p2: MPoly,
    pub p1: MPoly,
    pub p0: MPoly,
}

pub fn ode_coefficients() -> OdeCoefficients {
    let parse = |s: &str| parse_poly(s).expect("static polynomial");
    OdeCoefficients {
        p2: parse("X*(1 - X)"),
        p1: parse("L*(4*X^2 - 2*X - 1) + E*(2*X - 1) - X + 1"),
        p0: parse("L^2*(3 - 4*X) + 2*E*L*(1 - 2*X) + B - E^2"),
    }
}

impl OdeCoefficients {
    /// `p₂ χ'' + p₁ χ' + p₀ χ` for a polynomial χ (which may itself depend on E, L, B).
    pub fn residual(&self, chi: &MPoly) -> MPoly {
        let d1 = chi.derivative(Var::X);
        let d2 = d1.derivative(Var::X);
        &(&(&self.p2 * &d2) + &(&self.p1 * &d1)) + &(&self.p0 * chi)
    }

    /// Substitutes `var := value` in all three coefficients.
    pub fn eval_var(&self, var: Var, value: &Rat) -> OdeCoefficients {
        OdeCoefficients {
            p2: self.p2.eval_var(var, value),
            p1: self.p1.eval_var(var, value),
            p0: self.p0.eval_var(var, value),
        }
    }

    /// Substitutes `var := replacement` in all three coefficients.
    pub fn subst(&self, var: Var, replacement: &MPoly) -> OdeCoefficients {
        OdeCoefficients {
            p2: self.p2.subst(var, replacement),
            p1: self.p1.subst(var, replacement),
            p0: self.p0.subst(var, replacement),
        }
    }

    /// Numeric coefficients at fixed `E`, `L`, `B`; the result is a polynomial in `X` only.
    pub fn at(&self, energy: &Rat, lambda_sq: &Rat, beta_sq: &Rat) -> OdeCoefficients {
        self.eval_var(Var::E, energy)
            .eval_var(Var::L, lambda_sq)
            .eval_var(Var::B, beta_sq)
    }
}

/// The seed pair `(r₀, s₀)` for `χ'' = r₀ χ' + s₀ χ`; see the module docs for the sign.
pub fn initial_aim_pair() -> (RatFn, RatFn) {
    let ode = ode_coefficients();
    (RatFn::new(ode.p1, 1, 1), RatFn::new(ode.p0, 1, 1))
}

pub fn xi_of_x(x: f64, lambda: f64) -> f64 {
    (x + lambda) / (2.0 * lambda)
}

pub fn x_of_xi(xi: f64, lambda: f64) -> f64 {
    lambda * (2.0 * xi - 1.0)
}

/// A two-component wavefunction with analytic first derivatives.
pub trait TwoComponent {
    fn psi1(&self, x: f64) -> f64;
    fn dpsi1(&self, x: f64) -> f64;
    fn psi2(&self, x: f64) -> f64;
    fn dpsi2(&self, x: f64) -> f64;
}

/// `(χ, χ', χ'')` at `t` for ascending coefficients.
fn horner3(coeffs: &[f64], t: f64) -> (f64, f64, f64) {
    let (mut p, mut d1, mut d2) = (0.0, 0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d2 = d2 * t + 2.0 * d1;
        d1 = d1 * t + p;
        p = p * t + c;
    }
    (p, d1, d2)
}

/// ψ pair reconstructed from a polynomial χ(ξ) at energy E.
///
/// `ψ₁(x) = e^{−2λ²ξ} χ(ξ)` and `ψ₂ = [(E − λx) ψ₁ − (x + λ) ψ₁'] / β`.
#[derive(Clone, Debug)]
pub struct PsiPair {
    chi: Vec<f64>,
    energy: f64,
    params: FloatParams,
}

pub fn psi_pair_from_chi(chi: &MPoly, energy: &Rat, params: &ModelParams) -> Result<PsiPair> {
    if chi.vars().iter().any(|&v| v != Var::X) {
        return Err(Error::Invalid(format!("χ must be a polynomial in X only: {chi}")));
    }
    let coeffs: Vec<f64> = chi
        .coefficients_in(Var::X)
        .iter()
        .map(|c| c.constant_value().map(|v| to_f64(&v)).unwrap_or(0.0))
        .collect();
    psi_pair_from_coeffs(coeffs, to_f64(energy), params.to_float())
}

pub fn psi_pair_from_coeffs(chi: Vec<f64>, energy: f64, params: FloatParams) -> Result<PsiPair> {
    if params.beta.is_zero() {
        return Err(Error::DecoupledSpin);
    }
    if !(params.lambda > 0.0) {
        return Err(Error::NonPositiveCoupling(params.lambda.to_string()));
    }
    Ok(PsiPair {
        chi,
        energy,
        params,
    })
}

impl PsiPair {
    pub fn chi_coefficients(&self) -> &[f64] {
        &self.chi
    }

    /// `(ψ₁, ψ₁', ψ₁'')` at `x`.
    fn psi1_jet(&self, x: f64) -> (f64, f64, f64) {
        let lam = self.params.lambda;
        let l = lam * lam;
        let xi = xi_of_x(x, lam);
        let (c0, c1, c2) = horner3(&self.chi, xi);
        let g = (-2.0 * l * xi).exp();
        (
            g * c0,
            g * (c1 - 2.0 * l * c0) / (2.0 * lam),
            g * (c2 - 4.0 * l * c1 + 4.0 * l * l * c0) / (4.0 * l),
        )
    }
}

impl TwoComponent for PsiPair {
    fn psi1(&self, x: f64) -> f64 {
        self.psi1_jet(x).0
    }

    fn dpsi1(&self, x: f64) -> f64 {
        self.psi1_jet(x).1
    }

    fn psi2(&self, x: f64) -> f64 {
        let FloatParams { lambda: lam, beta } = self.params;
        let (p, d1, _) = self.psi1_jet(x);
        ((self.energy - lam * x) * p - (x + lam) * d1) / beta
    }

    fn dpsi2(&self, x: f64) -> f64 {
        let FloatParams { lambda: lam, beta } = self.params;
        let (p, d1, d2) = self.psi1_jet(x);
        (-lam * p + (self.energy - lam * x - 1.0) * d1 - (x + lam) * d2) / beta
    }
}

fn check_grid_point(x: f64, lambda: f64, margin: f64) -> Result<()> {
    if (x - lambda).abs() < margin || (x + lambda).abs() < margin {
        return Err(Error::SingularGridPoint { x, margin });
    }
    Ok(())
}

/// Maximum over `grid` of both first-order residuals, using the default margin.
pub fn system_residual(
    psi: &impl TwoComponent,
    energy: f64,
    params: FloatParams,
    grid: &[f64],
) -> Result<f64> {
    system_residual_with_margin(psi, energy, params, grid, DEFAULT_SINGULAR_MARGIN)
}

pub fn system_residual_with_margin(
    psi: &impl TwoComponent,
    energy: f64,
    params: FloatParams,
    grid: &[f64],
    margin: f64,
) -> Result<f64> {
    let FloatParams { lambda: lam, beta } = params;
    let mut worst = 0.0_f64;
    for &x in grid {
        check_grid_point(x, lam, margin)?;
        let (p1, p2) = (psi.psi1(x), psi.psi2(x));
        let r1 = psi.dpsi1(x) - ((energy - lam * x) * p1 - beta * p2) / (x + lam);
        let r2 = psi.dpsi2(x) - (-beta * p1 + (energy + lam * x) * p2) / (x - lam);
        worst = worst.max(r1.abs()).max(r2.abs());
    }
    Ok(worst)
}

/// Residual of the second-order equation for ψ₁ in the variable x.
pub fn second_order_residual_x(psi: &PsiPair, energy: f64, params: FloatParams, x: f64) -> f64 {
    let FloatParams { lambda: lam, beta } = params;
    let (p, d1, d2) = psi.psi1_jet(x);
    (x * x - lam * lam) * d2
        - ((energy - lam * x - 1.0) * (x - lam) + (x + lam) * (energy + lam * x)) * d1
        - (beta * beta - energy * energy + lam * lam * x * x - lam * (x - lam)) * p
}

/// Residual of the ξ-form equation for a polynomial χ given by ascending float coefficients.
pub fn xi_form_residual(chi: &[f64], energy: f64, params: FloatParams, xi: f64) -> f64 {
    let l = params.lambda_sq();
    let b = params.beta * params.beta;
    let e = energy;
    let (c0, c1, c2) = horner3(chi, xi);
    xi * (1.0 - xi) * c2
        + (l * (4.0 * xi * xi - 2.0 * xi - 1.0) + e * (2.0 * xi - 1.0) - xi + 1.0) * c1
        + (l * l * (3.0 - 4.0 * xi) + 2.0 * e * l * (1.0 - 2.0 * xi) + b - e * e) * c0
}
