//! Sparse polynomials in the four variables E, L, B and X over `Rat`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose derived order is
//! lexicographic on `(x, e, l, b)`. Zero coefficients are never stored.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{rat_int, Rat};
use crate::error::{Error, Result};

/// Polynomial variables: energy `E`, coupling `L = λ²`, gap `B = β²`, and `X = ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    E,
    L,
    B,
    X,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::E, Var::L, Var::B];

    pub fn symbol(self) -> char {
        match self {
            Var::E => 'E',
            Var::L => 'L',
            Var::B => 'B',
            Var::X => 'X',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        match c {
            'E' => Some(Var::E),
            'L' => Some(Var::L),
            'B' => Some(Var::B),
            'X' => Some(Var::X),
            _ => None,
        }
    }
}

/// Exponent tuple. Field order fixes the canonical term order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: u32,
    pub e: u32,
    pub l: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, e: 0, l: 0, b: 0 };

    pub fn of(var: Var, exp: u32) -> Monomial {
        let mut m = Monomial::ONE;
        *m.exp_mut(var) = exp;
        m
    }

    pub fn exp(&self, var: Var) -> u32 {
        match var {
            Var::E => self.e,
            Var::L => self.l,
            Var::B => self.b,
            Var::X => self.x,
        }
    }

    pub fn exp_mut(&mut self, var: Var) -> &mut u32 {
        match var {
            Var::E => &mut self.e,
            Var::L => &mut self.l,
            Var::B => &mut self.b,
            Var::X => &mut self.x,
        }
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            x: self.x + o.x,
            e: self.e + o.e,
            l: self.l + o.l,
            b: self.b + o.b,
        }
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        Some(Monomial {
            x: self.x.checked_sub(o.x)?,
            e: self.e.checked_sub(o.e)?,
            l: self.l.checked_sub(o.l)?,
            b: self.b.checked_sub(o.b)?,
        })
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        MPoly::term(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> MPoly {
        MPoly::constant(rat_int(c))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::term(Rat::one(), Monomial::of(v, 1))
    }

    pub fn term(c: Rat, m: Monomial) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> MPoly {
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Greatest term in canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn min_degree(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).min()
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.contains_var(v))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: Var) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let k = m.exp(var);
            (k > 0).then(|| {
                let mut dm = *m;
                *dm.exp_mut(var) = k - 1;
                (dm, c * rat_int(k as i64))
            })
        }))
    }

    /// Substitutes `var := value`.
    pub fn eval_var(&self, var: Var, value: &Rat) -> MPoly {
        let max = self.degree(var).unwrap_or(0) as usize;
        let mut powers = Vec::with_capacity(max + 1);
        powers.push(Rat::one());
        for i in 1..=max {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut rest = *m;
            *rest.exp_mut(var) = 0;
            (rest, c * &powers[m.exp(var) as usize])
        }))
    }

    /// Substitutes `var := replacement` for a polynomial replacement.
    pub fn subst(&self, var: Var, replacement: &MPoly) -> MPoly {
        let max = self.degree(var).unwrap_or(0) as usize;
        let mut powers = Vec::with_capacity(max + 1);
        powers.push(MPoly::one());
        for i in 1..=max {
            let next = &powers[i - 1] * replacement;
            powers.push(next);
        }
        let mut buckets: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); max + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            *rest.exp_mut(var) = 0;
            buckets[m.exp(var) as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .fold(MPoly::zero(), |acc, (k, b)| {
                &acc + &(&MPoly::from_terms(b) * &powers[k])
            })
    }

    /// Evaluates all variables in floating point; `vals` is indexed as `[E, L, B, X]`.
    pub fn eval_f64(&self, vals: [f64; 4]) -> f64 {
        let [e, l, b, x] = vals;
        self.terms
            .iter()
            .map(|(m, c)| {
                super::rat::to_f64(c)
                    * e.powi(m.e as i32)
                    * l.powi(m.l as i32)
                    * b.powi(m.b as i32)
                    * x.powi(m.x as i32)
            })
            .sum()
    }

    /// Evaluates exactly at `[E, L, B, X]`.
    pub fn eval_rat(&self, vals: [&Rat; 4]) -> Rat {
        let [e, l, b, x] = vals;
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, k) in [(e, m.e), (l, m.l), (b, m.b), (x, m.x)] {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: Var) -> Vec<MPoly> {
        let Some(deg) = self.degree(var) else {
            return Vec::new();
        };
        let mut out: Vec<BTreeMap<Monomial, Rat>> = vec![BTreeMap::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            *rest.exp_mut(var) = 0;
            out[m.exp(var) as usize].insert(rest, c.clone());
        }
        out.into_iter().map(|terms| MPoly { terms }).collect()
    }

    /// Inverse of [`MPoly::coefficients_in`].
    pub fn from_coefficients(var: Var, coeffs: &[MPoly]) -> MPoly {
        MPoly::from_terms(coeffs.iter().enumerate().flat_map(|(k, p)| {
            p.terms.iter().map(move |(m, c)| {
                let mut mm = *m;
                *mm.exp_mut(var) += k as u32;
                (mm, c.clone())
            })
        }))
    }

    /// Exact division. Returns `Error::NotDivisible` when `den` does not divide `self`.
    pub fn div_exact(&self, den: &MPoly) -> Result<MPoly> {
        let (lead_m, lead_c) = den.leading_term().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.terms.clone();
        let mut quotient = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back() {
            let qm = rm.div(lead_m).ok_or(Error::NotDivisible)?;
            let qc = rc / lead_c;
            for (m, c) in &den.terms {
                add_into(&mut rem, m.mul(&qm), &(c * &qc), true);
            }
            quotient.insert(qm, qc);
        }
        Ok(MPoly { terms: quotient })
    }

    /// Divides by `var^k` if every term allows it.
    pub fn shift_down(&self, var: Var, k: u32) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut mm = *m;
            *mm.exp_mut(var) = m.exp(var).checked_sub(k)?;
            terms.insert(mm, c.clone());
        }
        Some(MPoly { terms })
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn rational_content(&self) -> Rat {
        use num_integer::Integer;
        let mut g = num_bigint::BigInt::zero();
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rat::one();
        }
        Rat::new(g, l)
    }

    /// Sign of the leading (canonically greatest) coefficient; `0` for the zero polynomial.
    pub fn leading_sign(&self) -> i32 {
        match self.leading_term() {
            None => 0,
            Some((_, c)) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

fn add_into(acc: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: &Rat, negate: bool) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(if negate { -c.clone() } else { c.clone() });
        }
        Entry::Occupied(mut o) => {
            if negate {
                *o.get_mut() -= c;
            } else {
                *o.get_mut() += c;
            }
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            add_into(&mut terms, *m, c, false);
        }
        MPoly { terms }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_into(&mut terms, *m, c, true);
        }
        MPoly { terms }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        MPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// `E + L - k`, the linear factor carried by the termination coefficients.
pub fn energy_shift_factor(k: u32) -> MPoly {
    &(&MPoly::var(Var::E) + &MPoly::var(Var::L)) - &MPoly::int(k as i64)
}
