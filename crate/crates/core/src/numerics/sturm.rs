//! Certified real-root isolation by Sturm sequences and exact bisection.

use num_traits::Zero;

use super::upoly::UPoly;
use crate::algebra::{to_f64, Rat};
use crate::exec::Execution;

/// An open interval holding exactly one simple root of the squarefree part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub sign_lo: i32,
    pub sign_hi: i32,
    /// Set when the root is known exactly.
    pub exact: Option<Rat>,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    /// Exact root if known, otherwise the midpoint.
    pub fn estimate(&self) -> Rat {
        self.exact.clone().unwrap_or_else(|| self.midpoint())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo < x && x < &self.hi
    }
}

#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<UPoly>,
}

impl SturmSequence {
    /// Sequence of a polynomial assumed squarefree.
    pub fn new(p: &UPoly) -> SturmSequence {
        let mut seq = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(r.neg());
            }
        }
        SturmSequence { seq }
    }

    pub fn polys(&self) -> &[UPoly] {
        &self.seq
    }

    pub fn sign_changes(&self, x: &Rat) -> usize {
        let mut last = 0;
        let mut changes = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Isolates every real root of `p` in the open interval `(lo, hi)`.
pub fn isolate_real_roots(p: &UPoly, domain: (&Rat, &Rat)) -> Vec<IsolatingInterval> {
    let (lo, hi) = domain;
    if p.degree().unwrap_or(0) == 0 || lo >= hi {
        return Vec::new();
    }
    // Roots sitting on the domain boundary are excluded, so divide them out.
    let mut q = p.squarefree();
    for end in [lo, hi] {
        if q.eval(end).is_zero() {
            q = q.div_rem(&UPoly::linear_root(end)).0;
        }
    }
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = SturmSequence::new(&q);
    let mut out = Vec::new();
    let total = sturm.count(lo, hi);
    bisect(&q, &sturm, lo.clone(), hi.clone(), total, &mut out);
    out
}

fn bisect(
    q: &UPoly,
    sturm: &SturmSequence,
    a: Rat,
    b: Rat,
    count: usize,
    out: &mut Vec<IsolatingInterval>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        let exact = (q.degree() == Some(1)).then(|| linear_root(q));
        out.push(IsolatingInterval {
            sign_lo: q.sign_at(&a),
            sign_hi: q.sign_at(&b),
            lo: a,
            hi: b,
            exact,
        });
        return;
    }
    let two = Rat::from_integer(2.into());
    let mid = (&a + &b) / &two;
    if q.eval(&mid).is_zero() {
        let mut delta = (&b - &a) / Rat::from_integer(4.into());
        loop {
            let (l, h) = (&mid - &delta, &mid + &delta);
            if !q.eval(&l).is_zero() && !q.eval(&h).is_zero() && sturm.count(&l, &h) == 1 {
                let left = sturm.count(&a, &l);
                let right = sturm.count(&h, &b);
                bisect(q, sturm, a, l.clone(), left, out);
                out.push(IsolatingInterval {
                    sign_lo: q.sign_at(&l),
                    sign_hi: q.sign_at(&h),
                    lo: l,
                    hi: h.clone(),
                    exact: Some(mid),
                });
                bisect(q, sturm, h, b, right, out);
                return;
            }
            delta /= &two;
        }
    }
    let left = sturm.count(&a, &mid);
    bisect(q, sturm, a, mid.clone(), left, out);
    bisect(q, sturm, mid, b, count - left, out);
}

fn linear_root(q: &UPoly) -> Rat {
    -&q.coeffs()[0] / &q.coeffs()[1]
}

/// Shrinks `iv` by exact bisection until its width is at most `tol`.
pub fn refine_interval(p: &UPoly, iv: &IsolatingInterval, tol: f64) -> IsolatingInterval {
    let q = p.squarefree();
    let mut iv = iv.clone();
    if iv.exact.is_none() && q.degree() == Some(1) {
        iv.exact = Some(linear_root(&q));
    }
    if let Some(r) = iv.exact.clone() {
        let tol = Rat::from_float(tol.max(0.0)).unwrap_or_else(Rat::zero);
        if tol.is_zero() || iv.width() <= tol {
            return iv;
        }
        let two = Rat::from_integer(2.into());
        let mut half = (&r - &iv.lo).min(&iv.hi - &r);
        while &half * &two > tol {
            half /= &two;
        }
        iv.lo = &r - &half;
        iv.hi = &r + &half;
        iv.sign_lo = q.sign_at(&iv.lo);
        iv.sign_hi = q.sign_at(&iv.hi);
        return iv;
    }
    let tol_r = Rat::from_float(tol.max(0.0)).unwrap_or_else(Rat::zero);
    let mut s_lo = q.sign_at(&iv.lo);
    while iv.width() > tol_r && tol_r > Rat::zero() {
        let mid = iv.midpoint();
        let s = q.sign_at(&mid);
        if s == 0 {
            iv.exact = Some(mid);
            return refine_interval(p, &iv, tol);
        }
        if s == s_lo {
            iv.lo = mid;
            s_lo = s;
        } else {
            iv.hi = mid;
        }
    }
    iv.sign_lo = q.sign_at(&iv.lo);
    iv.sign_hi = q.sign_at(&iv.hi);
    iv
}

/// Root approximation with `|hi − lo| ≤ tol`; exact when the root is known exactly.
pub fn refine_root(p: &UPoly, iv: &IsolatingInterval, tol: f64) -> Rat {
    if iv.width() <= Rat::from_float(tol).unwrap_or_else(Rat::zero) && iv.exact.is_none() {
        return iv.midpoint();
    }
    refine_interval(p, iv, tol).estimate()
}

/// Isolates and refines the roots of many polynomials over a shared domain.
pub fn isolate_batch(
    polys: &[UPoly],
    domain: (&Rat, &Rat),
    tol: f64,
    exec: Execution,
) -> Vec<Vec<IsolatingInterval>> {
    exec.map(polys, |p| {
        isolate_real_roots(p, domain)
            .iter()
            .map(|iv| refine_interval(p, iv, tol))
            .collect()
    })
}

/// Float view of a root enclosure: `(lo, hi)`.
pub fn enclosure_f64(iv: &IsolatingInterval) -> (f64, f64) {
    (to_f64(&iv.lo), to_f64(&iv.hi))
}

/// `(−R, R)` for the Cauchy bound `R` of `p`, or `(0, R)` when `positive_only`.
pub fn default_domain(p: &UPoly, positive_only: bool) -> (Rat, Rat) {
    let r = p.root_bound();
    if positive_only {
        (Rat::zero(), r)
    } else {
        (-r.clone(), r)
    }
}
