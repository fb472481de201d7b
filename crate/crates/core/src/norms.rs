//! Squared norms `γ_n` of the energy polynomials.
//!
//! Three equivalent forms: the recursion `γ_n = 2L(n−L)/(n+L) γ_{n−1}`
//! with `γ_0 = 1`, the product `γ_n = 2ⁿ Lⁿ (1−L)_n / (1+L)_n`, and a
//! Gamma-function closed form obtained with `Γ(z)Γ(1−z) = π / sin πz`:
//!
//! ```text
//! γ_n = 2ⁿ Lⁿ (sin πL / π) Γ(L) Γ(1+L) Γ(n+1−L) / Γ(n+1+L)
//! ```
//!
//! The factor `(n−L)` makes the norm indefinite once `L > 1`, and at
//! integer `L = m` every `γ_n` with `n ≥ m` vanishes.

use std::f64::consts::PI;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat_int, signum, to_f64, Rat};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numerics::{format_f64, ln_gamma};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        match signum(r) {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    fn times(self, o: Sign) -> Sign {
        match (self, o) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSequence {
    pub lambda_sq: Rat,
    /// `γ_0..=γ_n`.
    pub values: Vec<Rat>,
    pub signs: Vec<Sign>,
}

pub const CSV_HEADER: &str = "n,gamma_exact_num,gamma_exact_den,gamma_float,sign";

impl NormSequence {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for (n, (g, s)) in self.values.iter().zip(&self.signs).enumerate() {
            out.push_str(&format!(
                "{n},{},{},{},{s}\n",
                g.numer(),
                g.denom(),
                format_f64(to_f64(g))
            ));
        }
        out
    }
}

fn check_l(l: &Rat) -> Result<()> {
    if !l.is_positive() {
        return Err(Error::NonPositiveCoupling(crate::algebra::rat_string(l)));
    }
    Ok(())
}

pub fn gamma_recursion(n_max: usize, l: &Rat) -> Result<NormSequence> {
    check_l(l)?;
    let mut values = vec![Rat::one()];
    let two_l = rat_int(2) * l;
    for n in 1..=n_max {
        let n = rat_int(n as i64);
        let next = &two_l * (&n - l) / (&n + l) * values.last().unwrap();
        values.push(next);
    }
    let signs = values.iter().map(Sign::of).collect();
    Ok(NormSequence {
        lambda_sq: l.clone(),
        values,
        signs,
    })
}

pub fn gamma_pochhammer(n: usize, l: &Rat) -> Result<Rat> {
    check_l(l)?;
    let mut num = Rat::one();
    let mut den = Rat::one();
    let one = Rat::one();
    for k in 0..n {
        let k = rat_int(k as i64);
        num *= rat_int(2) * l * (&one - l + &k);
        den *= &one + l + &k;
    }
    Ok(num / den)
}

pub fn gamma_closed_form(n: usize, l: f64) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::NonPositiveCoupling(l.to_string()));
    }
    if l == l.floor() {
        return Err(Error::IntegerLambdaSquared(l as i64));
    }
    let nf = n as f64;
    let s = (PI * l).sin();
    let (lg_a, _) = ln_gamma(l);
    let (lg_b, _) = ln_gamma(1.0 + l);
    let (lg_c, sign_c) = ln_gamma(nf + 1.0 - l);
    let (lg_d, _) = ln_gamma(nf + 1.0 + l);
    let log_mag = nf * (2.0 * l).ln() + (s.abs() / PI).ln() + lg_a + lg_b + lg_c - lg_d;
    let sign = s.signum() * sign_c as f64;
    Ok(sign * log_mag.exp())
}

/// `sign(γ_n) = sign ∏_{k=1}^{n} (k − L)`.
pub fn norm_sign_profile(n_max: usize, l: &Rat) -> Result<Vec<Sign>> {
    check_l(l)?;
    let mut out = vec![Sign::Positive];
    for k in 1..=n_max {
        let f = Sign::of(&(rat_int(k as i64) - l));
        out.push(out[k - 1].times(f));
    }
    Ok(out)
}

/// Recursion-form sequences for several `L`, in input order.
pub fn norm_sweep(ls: &[Rat], n_max: usize, exec: Execution) -> Result<Vec<NormSequence>> {
    exec.map(ls, |l| gamma_recursion(n_max, l)).into_iter().collect()
}

/// Largest relative deviation of the closed form from the exact values.
pub fn closed_form_deviation(seq: &NormSequence) -> Result<f64> {
    let l = to_f64(&seq.lambda_sq);
    let mut worst = 0.0_f64;
    for (n, g) in seq.values.iter().enumerate() {
        let exact = to_f64(g);
        let approx = gamma_closed_form(n, l)?;
        let dev = if exact.is_zero() {
            approx.abs()
        } else {
            ((approx - exact) / exact).abs()
        };
        worst = worst.max(dev);
    }
    Ok(worst)
}
