//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat_string, signum, to_f64, MPoly, Monomial, Rat, Var};
use crate::error::{Error, Result};

/// Ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly::default()
    }

    pub fn constant(c: Rat) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x − r`.
    pub fn linear_root(r: &Rat) -> UPoly {
        UPoly::new(vec![-r.clone(), Rat::one()])
    }

    /// Reads a polynomial in `var` alone.
    pub fn from_mpoly(p: &MPoly, var: Var) -> Result<UPoly> {
        let free: Vec<Var> = p.vars().into_iter().filter(|&v| v != var).collect();
        if !free.is_empty() {
            return Err(Error::WrongArity { free });
        }
        Ok(UPoly::new(
            p.coefficients_in(var)
                .iter()
                .map(|c| c.constant_value().expect("single variable"))
                .collect(),
        ))
    }

    pub fn to_mpoly(&self, var: Var) -> MPoly {
        MPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::of(var, k as u32), c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        signum(&self.eval(x))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> UPoly {
        self.scale(&-Rat::one())
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            Some(l) => self.scale(&(Rat::one() / l)),
            None => UPoly::zero(),
        }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(q), UPoly::new(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Cauchy bound: every real root lies in `(−R, R)`.
    pub fn root_bound(&self) -> Rat {
        let Some(lead) = self.leading() else {
            return Rat::one();
        };
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => rat_string(c),
                1 => format!("{}*x", rat_string(c)),
                _ => format!("{}*x^{k}", rat_string(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Substitutes every variable in `fixed` and returns the remaining single-variable polynomial.
pub fn specialize(poly: &MPoly, fixed: &[(Var, Rat)]) -> Result<(Var, UPoly)> {
    let free: Vec<Var> = poly
        .vars()
        .into_iter()
        .filter(|v| !fixed.iter().any(|(f, _)| f == v))
        .collect();
    if free.len() != 1 {
        return Err(Error::WrongArity { free });
    }
    let mut p = poly.clone();
    for (v, val) in fixed {
        p = p.eval_var(*v, val);
    }
    let var = free[0];
    Ok((var, UPoly::from_mpoly(&p, var)?))
}
