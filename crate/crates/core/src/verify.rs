//! Check suites tying the engines to the reference tables and to each other.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::aim::{AimEngine, TerminationData};
use crate::algebra::{rat, rat_string, to_f64, MPoly, Rat, Var};
use crate::error::Result;
use crate::exec::Execution;
use crate::fixtures::{aim_entries, y0, JUDDIAN_TABLE};
use crate::fock::{oracle_spectrum, verify_qes_enclosure, verify_qes_point, Form, TruncationSpec};
use crate::model::FloatParams;
use crate::numerics::{isolate_real_roots, specialize, IsolatingInterval, UPoly};
use crate::series::{juddian_polynomial, qes_energy_poly};

/// Highest iteration covered by the reference tables.
pub const TABLE_DEPTH: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.id, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checks.extend(other.checks);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{}: {ok}/{} passed", self.suite, self.checks.len())
    }
}

/// Shared, lazily computed termination table for `n = 1..=5`.
pub struct Context {
    exec: Execution,
    table: OnceLock<Vec<TerminationData>>,
}

impl Context {
    pub fn new(exec: Execution) -> Context {
        Context {
            exec,
            table: OnceLock::new(),
        }
    }

    pub fn termination(&self) -> &[TerminationData] {
        self.table.get_or_init(|| {
            AimEngine::rabi()
                .execution(self.exec)
                .termination_table(TABLE_DEPTH)
                .expect("table depth is within the default iteration limit")
        })
    }

    /// `Y_m`: the reference `Y₀`, computed residuals for `m ≥ 1`.
    pub fn y(&self, m: usize) -> MPoly {
        if m == 0 {
            y0()
        } else {
            self.termination()[m - 1].y_poly.clone()
        }
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::new(Execution::default())
    }
}

/// Each published `C_{n,d}` against the computed coefficient, one global sign per `n`.
pub fn aim_table_checks(ctx: &Context) -> Vec<Check> {
    let mut out = Vec::new();
    for t in ctx.termination() {
        let entries: Vec<_> = aim_entries(t.n).collect();
        let top = entries.iter().find(|e| e.d == t.n + 1).expect("top row");
        let top_expected = top.expand(|m| ctx.y(m));
        let computed_top = &t.coeffs[t.n + 1].poly;
        let sign = if &top_expected == computed_top {
            Rat::one()
        } else {
            -Rat::one()
        };
        for e in entries {
            let computed = &t.coeffs[e.d];
            let (passed, detail) = if e.d == 0 {
                let p = &computed.peeled;
                let plain = p.l_power == 0 && p.linear_ks.is_empty();
                let ok = plain && p.content.is_one() && p.residual == ctx.y(t.n);
                (ok, format!("C_{}0 = Y{} (no peelable factors: {plain})", t.n, t.n))
            } else {
                let expected = e.expand(|m| ctx.y(m));
                let ok = expected == computed.poly.scale(&sign);
                let detail = if ok {
                    format!("{} (global sign {})", e.render(), rat_string(&sign))
                } else {
                    format!("printed {} but computed {}", e.render(), computed.peeled)
                };
                (ok, detail)
            };
            out.push(Check::new(e.id(), passed, detail));
        }
    }
    out
}

/// `Y₀` against the reference and `deg_E(Y_n) = 2n + 2`.
pub fn y_checks(ctx: &Context) -> Vec<Check> {
    let mut out = Vec::new();
    let y0_computed = AimEngine::rabi().y_polynomial(0);
    out.push(Check::new(
        "Y0",
        y0_computed.as_ref().map(|y| *y == y0()).unwrap_or(false),
        format!("Y0 = {}", y0()),
    ));
    for n in 1..=TABLE_DEPTH {
        let deg = ctx.y(n).degree(Var::E).unwrap_or(0);
        out.push(Check::new(
            format!("deg Y{n}"),
            deg as usize == 2 * n + 2,
            format!("deg_E = {deg}"),
        ));
    }
    out
}

/// Computed `J_N` and `E = N − L` against the published rows.
pub fn juddian_table_checks() -> Vec<Check> {
    JUDDIAN_TABLE
        .iter()
        .flat_map(|row| {
            let j = juddian_polynomial(row.n);
            let ok = j.as_ref().map(|j| *j == row.poly()).unwrap_or(false);
            let energy_ok = qes_energy_poly(row.n) == row.energy_poly();
            [
                Check::new(format!("J{}", row.n), ok, row.polynomial.split_whitespace().collect::<Vec<_>>().join(" ")),
                Check::new(format!("E{}", row.n), energy_ok, format!("E = {}", row.energy)),
            ]
        })
        .collect()
}

pub fn fixtures(ctx: &Context) -> Report {
    let mut r = Report::new("fixtures");
    r.checks.extend(aim_table_checks(ctx));
    r.checks.extend(y_checks(ctx));
    r.checks.extend(juddian_table_checks());
    r
}

/// `Y_N(E = N − L) = c · B^m · J_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRelation {
    pub n: usize,
    pub constant: Rat,
    pub b_power: u32,
}

/// Exact quotient `Y_N(E = N − L) / J_N`, required to be a monomial in B.
pub fn cross_relation(y: &MPoly, n: usize) -> Result<Option<CrossRelation>> {
    let j = juddian_polynomial(n)?;
    let at = y.subst(Var::E, &qes_energy_poly(n));
    let Ok(q) = at.div_exact(&j) else {
        return Ok(None);
    };
    if q.len() != 1 || q.vars().iter().any(|&v| v != Var::B) {
        return Ok(None);
    }
    let (m, c) = q.leading_term().expect("one term");
    Ok(Some(CrossRelation {
        n,
        constant: c.clone(),
        b_power: m.exp(Var::B),
    }))
}

pub fn cross(ctx: &Context) -> Report {
    let mut r = Report::new("cross");
    for n in 1..=TABLE_DEPTH {
        let rel = cross_relation(&ctx.y(n), n);
        let check = match rel {
            Ok(Some(c)) => Check::new(
                format!("Y{n}/J{n}"),
                !c.constant.is_zero(),
                format!("Y{n}(E = {n} - L) = {} * B^{} * J{n}", rat_string(&c.constant), c.b_power),
            ),
            Ok(None) => Check::new(format!("Y{n}/J{n}"), false, "quotient is not a monomial in B"),
            Err(e) => Check::new(format!("Y{n}/J{n}"), false, e.to_string()),
        };
        r.checks.push(check);
    }
    r
}

/// Certified positive roots of `J_N(·, B)`.
pub fn juddian_roots(n: usize, b: &Rat) -> Result<(UPoly, Vec<IsolatingInterval>)> {
    let (_, p) = specialize(&juddian_polynomial(n)?, &[(Var::B, b.clone())])?;
    let bound = p.root_bound();
    let roots = isolate_real_roots(&p, (&Rat::zero(), &bound));
    Ok((p, roots))
}

pub const ORACLE_BETA_SQ: (i64, i64) = (1, 4);

pub fn oracle(exec: Execution) -> Report {
    let mut r = Report::new("oracle");
    let b = rat(ORACLE_BETA_SQ.0, ORACLE_BETA_SQ.1);
    match juddian_roots(1, &b) {
        Ok((_, roots)) => {
            let exact = roots.first().and_then(|iv| iv.exact.clone());
            let ok = roots.len() == 1 && exact == Some(rat(3, 16));
            let shown = exact.map_or_else(|| "not exact".to_string(), |e| rat_string(&e));
            r.checks.push(Check::new("J1 root", ok, format!("{} root(s), L = {shown}", roots.len())));
        }
        Err(e) => r.checks.push(Check::new("J1 root", false, e.to_string())),
    }
    let n1 = verify_qes_point(1, &rat(3, 16), &b, 80, 1e-6);
    r.checks.push(match n1 {
        Ok(c) => Check::new("N1 oracle", c.ok, format!("E = 0.8125, distance {:.3e}", c.distance)),
        Err(e) => Check::new("N1 oracle", false, e.to_string()),
    });
    let jobs: Vec<(usize, IsolatingInterval)> = (2..=TABLE_DEPTH)
        .flat_map(|n| {
            juddian_roots(n, &b)
                .map(|(_, roots)| roots.into_iter().map(move |iv| (n, iv)).collect::<Vec<_>>())
                .unwrap_or_default()
        })
        .collect();
    let results = exec.map(&jobs, |(n, iv)| (*n, verify_qes_enclosure(*n, iv, &b, 150, 1e-5)));
    for n in 2..=TABLE_DEPTH {
        let rows: Vec<_> = results.iter().filter(|(k, _)| *k == n).collect();
        let confirmed = rows.iter().filter(|(_, c)| c.as_ref().map(|c| c.ok).unwrap_or(false)).count();
        let worst = rows
            .iter()
            .filter_map(|(_, c)| c.as_ref().ok().map(|c| c.distance))
            .fold(0.0_f64, f64::max);
        r.checks.push(Check::new(
            format!("N{n} oracle"),
            !rows.is_empty() && confirmed == rows.len(),
            format!("{confirmed}/{} roots confirmed, max distance {worst:.3e}", rows.len()),
        ));
    }
    let s = oracle_spectrum(FloatParams { lambda: 0.6, beta: 0.0 }, TruncationSpec::transformed(80));
    let dev = s
        .lowest(6)
        .iter()
        .enumerate()
        .map(|(k, e)| (e - ((k / 2) as f64 - 0.36)).abs())
        .fold(0.0, f64::max);
    r.checks.push(Check::new("displaced oscillator", dev < 1e-8, format!("max deviation {dev:.3e}")));
    let p = FloatParams::from_squares(0.5, 0.25);
    let [a, o] = [Form::Transformed, Form::Original].map(|form| oracle_spectrum(p, TruncationSpec::new(120, form)));
    let dev = a.lowest(10).iter().zip(o.lowest(10)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    r.checks.push(Check::new("form equivalence", dev < 1e-6, format!("max deviation {dev:.3e}")));
    let neg = verify_qes_point(1, &rat(1, 4), &b, 80, 1e-6);
    r.checks.push(match neg {
        Ok(c) => Check::new("negative control", !c.ok && c.distance > 1e-3, format!("distance {:.3e}", c.distance)),
        Err(e) => Check::new("negative control", false, e.to_string()),
    });
    r
}

pub fn all(ctx: &Context, exec: Execution) -> Report {
    let mut r = fixtures(ctx).merge(cross(ctx)).merge(oracle(exec));
    r.suite = "all".into();
    r
}

/// Float midpoint of a root enclosure.
pub fn root_value(iv: &IsolatingInterval) -> f64 {
    to_f64(&iv.estimate())
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_relation_low_orders() {
        let ctx = Context::default();
        for n in 1..=3 {
            let c = cross_relation(&ctx.y(n), n).unwrap().unwrap();
            assert_eq!(c.b_power, 1);
            assert_eq!(c.constant, if n % 2 == 1 { Rat::one() } else { -Rat::one() });
        }
    }

    #[test]
    fn juddian_roots_at_quarter() {
        let (p, r) = juddian_roots(2, &rat(1, 4)).unwrap();
        let vals: Vec<f64> = r
            .iter()
            .map(|iv| to_f64(&crate::numerics::refine_root(&p, iv, 1e-10)))
            .collect();
        assert_eq!(vals.len(), 2);
        assert!((vals[0] - 0.11044).abs() < 1e-4 && (vals[1] - 0.79581).abs() < 1e-4);
    }

    #[test]
    fn non_monomial_quotient_is_rejected() {
        let y = crate::algebra::parse_poly("(L + B + 7)*(4*L + B - 1)").unwrap();
        assert_eq!(cross_relation(&y, 1).unwrap(), None);
    }
}
