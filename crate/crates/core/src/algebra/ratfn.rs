//! Rational functions whose denominator is a power product `X^a (X-1)^b`.
//!
//! This is exactly the shape produced by the asymptotic iteration on the
//! transformed Rabi equation, whose only finite singular points are ξ = 0, 1.

use std::fmt;

use super::mpoly::{MPoly, Monomial, Var};
use super::rat::rat_int;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: MPoly,
    pow_x: u32,
    pow_xm1: u32,
}

fn x_minus_one_pow(k: u32) -> MPoly {
    (&MPoly::var(Var::X) - &MPoly::one()).pow(k)
}

impl RatFn {
    /// Builds and fully reduces `num / (X^pow_x (X-1)^pow_xm1)`.
    pub fn new(num: MPoly, pow_x: u32, pow_xm1: u32) -> RatFn {
        let mut f = RatFn { num, pow_x, pow_xm1 };
        f.reduce();
        f
    }

    pub fn from_poly(p: MPoly) -> RatFn {
        RatFn::new(p, 0, 0)
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn pow_x(&self) -> u32 {
        self.pow_x
    }

    pub fn pow_xm1(&self) -> u32 {
        self.pow_xm1
    }

    pub fn denominator(&self) -> MPoly {
        &MPoly::var(Var::X).pow(self.pow_x) * &x_minus_one_pow(self.pow_xm1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.pow_x = 0;
            self.pow_xm1 = 0;
            return;
        }
        if self.pow_x > 0 {
            let k = self.num.min_degree(Var::X).unwrap_or(0).min(self.pow_x);
            if k > 0 {
                self.num = self.num.shift_down(Var::X, k).expect("min degree checked");
                self.pow_x -= k;
            }
        }
        while self.pow_xm1 > 0 {
            match divide_by_x_minus_one(&self.num) {
                Some(q) => {
                    self.num = q;
                    self.pow_xm1 -= 1;
                }
                None => break,
            }
        }
    }

    /// Rewrites the numerator over a larger denominator `X^a (X-1)^b`.
    fn lifted(&self, a: u32, b: u32) -> MPoly {
        let shifted = self.num.mul_monomial(&Monomial::of(Var::X, a - self.pow_x));
        if b > self.pow_xm1 {
            &shifted * &x_minus_one_pow(b - self.pow_xm1)
        } else {
            shifted
        }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        let a = self.pow_x.max(o.pow_x);
        let b = self.pow_xm1.max(o.pow_xm1);
        RatFn::new(&self.lifted(a, b) + &o.lifted(a, b), a, b)
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        let a = self.pow_x.max(o.pow_x);
        let b = self.pow_xm1.max(o.pow_xm1);
        RatFn::new(&self.lifted(a, b) - &o.lifted(a, b), a, b)
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, self.pow_x + o.pow_x, self.pow_xm1 + o.pow_xm1)
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: -&self.num,
            pow_x: self.pow_x,
            pow_xm1: self.pow_xm1,
        }
    }

    /// d/dX of `N / (X^a (X-1)^b)` is `[N' X (X-1) - N (a (X-1) + b X)] / (X^(a+1) (X-1)^(b+1))`.
    pub fn derivative_x(&self) -> RatFn {
        let x = MPoly::var(Var::X);
        let x_xm1 = &x * &(&x - &MPoly::one());
        let a = rat_int(self.pow_x as i64);
        let b = rat_int(self.pow_xm1 as i64);
        let log_der = &(&x - &MPoly::one()).scale(&a) + &x.scale(&b);
        let num = &(&self.num.derivative(Var::X) * &x_xm1) - &(&self.num * &log_der);
        RatFn::new(num, self.pow_x + 1, self.pow_xm1 + 1)
    }

    /// Floating-point evaluation at `[E, L, B, X]`.
    pub fn eval_f64(&self, vals: [f64; 4]) -> f64 {
        let x = vals[3];
        self.num.eval_f64(vals) / (x.powi(self.pow_x as i32) * (x - 1.0).powi(self.pow_xm1 as i32))
    }
}

/// Exact quotient by `(X - 1)` via synthetic division in X, or `None` if it does not divide.
pub fn divide_by_x_minus_one(p: &MPoly) -> Option<MPoly> {
    let coeffs = p.coefficients_in(Var::X);
    if coeffs.is_empty() {
        return Some(MPoly::zero());
    }
    let at_one = coeffs.iter().fold(MPoly::zero(), |acc, c| &acc + c);
    if !at_one.is_zero() {
        return None;
    }
    let deg = coeffs.len() - 1;
    let mut q = vec![MPoly::zero(); deg];
    let mut carry = MPoly::zero();
    for k in (1..=deg).rev() {
        carry = &carry + &coeffs[k];
        q[k - 1] = carry.clone();
    }
    Some(MPoly::from_coefficients(Var::X, &q))
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / (X^{} (X-1)^{})", self.num, self.pow_x, self.pow_xm1)
    }
}
