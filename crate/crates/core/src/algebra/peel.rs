//! Structured factor extraction for termination coefficients.
//!
//! Every coefficient produced by the iteration has the shape
//! `content * L^a * (E+L-k1) * (E+L-k2) * ... * residual`; this module pulls
//! exactly that shape apart. There is no general factorization here.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::mpoly::{energy_shift_factor, MPoly, Var};
use super::rat::{rat, rat_string, to_f64, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeled {
    /// Signed rational content; the residual has coprime integer
    /// coefficients and a positive leading coefficient.
    pub content: Rat,
    pub l_power: u32,
    /// Values `k` of the peeled factors `(E + L - k)`, ascending, with repetition.
    pub linear_ks: Vec<u32>,
    pub residual: MPoly,
}

impl Peeled {
    /// Multiplies the parts back together.
    pub fn expand(&self) -> MPoly {
        let mut acc = self
            .residual
            .scale(&self.content)
            .mul_monomial(&super::mpoly::Monomial::of(Var::L, self.l_power));
        for &k in &self.linear_ks {
            acc = &acc * &energy_shift_factor(k);
        }
        acc
    }
}

pub fn peel_structure(p: &MPoly) -> Result<Peeled> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let l_power = p.min_degree(Var::L).unwrap_or(0);
    let mut rest = p.shift_down(Var::L, l_power).expect("minimum L degree");
    let mut linear_ks = Vec::new();
    for k in shift_candidates(&rest) {
        let factor = energy_shift_factor(k);
        while let Ok(q) = rest.div_exact(&factor) {
            rest = q;
            linear_ks.push(k);
        }
    }
    let mut content = rest.rational_content();
    if rest.leading_sign() < 0 {
        content = -content;
    }
    let residual = rest.scale(&(Rat::one() / &content));
    Ok(Peeled {
        content,
        l_power,
        linear_ks,
        residual,
    })
}

/// Candidate `k` with `(E+L-k)` dividing `p`.
///
/// Such a `k` is a root of `p(E, L=0, B=b, X=x)` for every `b, x`. The slice
/// is taken at a generic point and scanned below its Fujiwara bound.
fn shift_candidates(p: &MPoly) -> Vec<u32> {
    let zero = Rat::zero();
    let slice = [(3, 7), (5, 11), (13, 17)]
        .into_iter()
        .map(|(n, d)| {
            let t = rat(n, d);
            let q = p
                .eval_var(Var::L, &zero)
                .eval_var(Var::B, &t)
                .eval_var(Var::X, &(&t + Rat::one()));
            q.coefficients_in(Var::E)
                .iter()
                .map(|c| c.constant_value().unwrap_or_default())
                .collect::<Vec<Rat>>()
        })
        .find(|c| c.iter().any(|x| !x.is_zero()));
    let Some(mut slice) = slice else {
        return Vec::new();
    };
    while slice.last().is_some_and(Zero::is_zero) {
        slice.pop();
    }
    let n = slice.len() - 1;
    let lead = slice[n].clone();
    let bound = (1..=n)
        .map(|i| to_f64(&(&slice[n - i] / &lead).abs()).powf(1.0 / i as f64))
        .fold(0.0f64, f64::max)
        * 2.0;
    let last = bound.ceil().min(u32::MAX as f64) as u32;
    (0..=last)
        .filter(|&k| {
            let x = Rat::from_integer(k.into());
            slice.iter().rev().fold(Rat::zero(), |acc, c| acc * &x + c).is_zero()
        })
        .collect()
}

/// `content * L^a * (E+L-k1)*(E+L-k2)*... * [residual]`, omitting trivial parts.
impl fmt::Display for Peeled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![rat_string(&self.content)];
        if self.l_power > 0 {
            parts.push(if self.l_power == 1 {
                "L".to_string()
            } else {
                format!("L^{}", self.l_power)
            });
        }
        if !self.linear_ks.is_empty() {
            let chain: Vec<String> = self
                .linear_ks
                .iter()
                .map(|&k| if k == 0 { "(E+L)".to_string() } else { format!("(E+L-{k})") })
                .collect();
            parts.push(chain.join("*"));
        }
        if !self.residual.is_one() {
            parts.push(format!("[{}]", self.residual));
        }
        f.write_str(&parts.join(" * "))
    }
}
