use anyhow::{anyhow, bail, Context as _, Result};
use serde_json::{json, Value};

use qes_rabi::aim::AimEngine;
use qes_rabi::algebra::{parse_rat, rat_string, render_poly, to_f64, Rat, Var};
use qes_rabi::exec::Execution;
use qes_rabi::fixtures::aim_entries;
use qes_rabi::fock::{default_cutoff, oracle_spectrum, Form, TruncationSpec};
use qes_rabi::model::{
    psi_pair_from_coeffs, system_residual_with_margin, FloatParams, TwoComponent,
    DEFAULT_SINGULAR_MARGIN,
};
use qes_rabi::norms::norm_sweep;
use qes_rabi::numerics::{isolate_real_roots, refine_interval, specialize, IsolatingInterval, SturmSequence, UPoly};
use qes_rabi::series::{juddian_polynomial, qes_eigenfunction, qes_eigenfunction_f64};
use qes_rabi::verify::{self, aim_table_checks, Check, Context, Report, TABLE_DEPTH};

use crate::args::{Beta, Cli, Command, FormArg, Lambda, LambdaList, Level};
use crate::output::{csv_field, float, Document};

pub const NMAX_ENV: &str = "QES_RABI_NMAX_DEFAULT";

pub fn run(cli: &Cli) -> Result<Document> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match &cli.command {
        Command::Aim { n, fixture } => aim(*n as usize, *fixture, exec),
        Command::Juddian { n, beta, tol } => juddian(*n as usize, beta, *tol),
        Command::Verify { level } => verify(*level, exec),
        Command::Norms { lambda, n } => norms(lambda, *n, exec),
        Command::Spectrum { beta, lambda, nmax, form, count } => {
            spectrum(beta, lambda, *nmax, *form, *count)
        }
        Command::Wavefunction { order, beta, root, points } => {
            wavefunction(*order as usize, beta, *root, *points)
        }
    }
}

fn exact(s: &str, what: &str) -> Result<Rat> {
    parse_rat(s).with_context(|| format!("invalid {what}"))
}

/// `(square, label)` from either the value or its square.
fn squared(value: Option<&String>, square: Option<&String>, name: &str) -> Result<(Rat, Value)> {
    match (value, square) {
        (Some(v), _) => {
            let x = exact(v, name)?;
            Ok((&x * &x, json!({ name: rat_string(&x) })))
        }
        (None, Some(s)) => {
            let x = exact(s, &format!("{name}2"))?;
            if x < Rat::default() {
                bail!("{name}2 must be non-negative");
            }
            Ok((x.clone(), json!({ format!("{name}2"): rat_string(&x) })))
        }
        (None, None) => bail!("one of --{name} or --{name}2 is required"),
    }
}

fn beta_sq(b: &Beta) -> Result<(Rat, Value)> {
    squared(b.beta.as_ref(), b.beta2.as_ref(), "beta")
}

fn lambda_sq(l: &Lambda) -> Result<(Rat, Value)> {
    squared(l.lambda.as_ref(), l.lambda2.as_ref(), "lambda")
}

fn merge(values: &[Value]) -> Value {
    let mut out = serde_json::Map::new();
    for v in values {
        if let Value::Object(m) = v {
            out.extend(m.clone());
        }
    }
    Value::Object(out)
}

fn check_json(c: &Check) -> Value {
    json!({ "id": c.id, "passed": c.passed, "detail": c.detail })
}

fn aim(n: usize, fixture: bool, exec: Execution) -> Result<Document> {
    if fixture && n > TABLE_DEPTH {
        bail!("the reference table covers n ≤ {TABLE_DEPTH}");
    }
    let t = AimEngine::rabi().execution(exec).termination_poly(n)?;
    let mut doc = Document::new("aim", json!({ "n": n, "fixture": fixture }));
    let coeffs: Vec<Value> = t
        .coeffs
        .iter()
        .map(|c| {
            json!({
                "d": c.d,
                "factored": c.peeled.to_string(),
                "content": rat_string(&c.peeled.content),
                "l_power": c.peeled.l_power,
                "ks": c.peeled.linear_ks,
                "residual": render_poly(&c.peeled.residual),
            })
        })
        .collect();
    let y = render_poly(&t.y_poly);
    doc.csv = String::from("d,content,l_power,ks,residual,factored\n");
    doc.text = format!("n = {n}, overall sign {}\n", t.sign);
    for c in &t.coeffs {
        let ks: Vec<String> = c.peeled.linear_ks.iter().map(u32::to_string).collect();
        doc.csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.d,
            rat_string(&c.peeled.content),
            c.peeled.l_power,
            ks.join(" "),
            csv_field(&render_poly(&c.peeled.residual)),
            csv_field(&c.peeled.to_string()),
        ));
        doc.text.push_str(&format!("C_{n}{} = {}\n", c.d, c.peeled));
    }
    doc.text.push_str(&format!("Y_{n} = {y}\n"));
    let mut results = json!({ "n": n, "sign": t.sign, "coefficients": coeffs, "y": y });
    if fixture {
        let ctx = Context::new(exec);
        let ids: Vec<String> = aim_entries(n).map(|e| e.id()).collect();
        let checks: Vec<Check> = aim_table_checks(&ctx)
            .into_iter()
            .filter(|c| ids.contains(&c.id))
            .collect();
        for c in &checks {
            doc.text.push_str(&format!("{c}\n"));
        }
        doc.failed = checks.iter().filter(|c| !c.passed).map(|c| c.id.clone()).collect();
        results["fixture"] = checks.iter().map(check_json).collect();
    }
    doc.results = results;
    Ok(doc)
}

/// Root of `p` in L, as an enclosure with optional exact value.
fn root_json(iv: &IsolatingInterval, n: usize) -> Value {
    let l = to_f64(&iv.estimate());
    let nr = Rat::from_integer((n as i64).into());
    json!({
        "lambda2_lo": rat_string(&iv.lo),
        "lambda2_hi": rat_string(&iv.hi),
        "lambda2_exact": iv.exact.as_ref().map(rat_string),
        "lambda2": l,
        "lambda": l.max(0.0).sqrt(),
        "energy": n as f64 - l,
        "energy_exact": iv.exact.as_ref().map(|x| rat_string(&(&nr - x))),
    })
}

struct RootSplit {
    poly: UPoly,
    physical: Vec<IsolatingInterval>,
    boundary: bool,
    negative: Vec<IsolatingInterval>,
    sturm_count: usize,
}

fn juddian_roots(n: usize, b: &Rat, tol: f64) -> Result<RootSplit> {
    let j = juddian_polynomial(n)?;
    let (var, poly) = specialize(&j, &[(Var::B, b.clone())])?;
    if var != Var::L {
        bail!("J_{n} does not depend on λ² at this β");
    }
    let bound = poly.root_bound();
    let zero = Rat::default();
    let refine = |ivs: Vec<IsolatingInterval>| -> Vec<IsolatingInterval> {
        ivs.iter().map(|iv| refine_interval(&poly, iv, tol)).collect()
    };
    let physical = refine(isolate_real_roots(&poly, (&zero, &bound)));
    let negative = refine(isolate_real_roots(&poly, (&-bound.clone(), &zero)));
    let sq = poly.squarefree();
    let boundary = sq.eval(&zero) == zero;
    // roots in (0, bound]; the bound itself is never a root
    let sturm_count = SturmSequence::new(&sq).count(&zero, &bound);
    Ok(RootSplit { poly, physical, boundary, negative, sturm_count })
}

fn juddian(n: usize, beta: &Beta, tol: f64) -> Result<Document> {
    let (b, bp) = beta_sq(beta)?;
    let split = juddian_roots(n, &b, tol)?;
    let mut doc = Document::new("juddian", merge(&[json!({ "n": n, "tol": tol }), bp]));
    let mut non_physical: Vec<Value> = split
        .negative
        .iter()
        .map(|iv| json!({ "reason": "lambda2 < 0", "root": root_json(iv, n) }))
        .collect();
    if split.boundary {
        non_physical.push(json!({ "reason": "lambda2 = 0", "lambda2_exact": "0" }));
    }
    doc.results = json!({
        "polynomial": render_poly(&split.poly.to_mpoly(Var::L)),
        "beta2": rat_string(&b),
        "sturm_count": split.sturm_count,
        "certified": split.sturm_count == split.physical.len(),
        "roots": split.physical.iter().map(|iv| root_json(iv, n)).collect::<Vec<_>>(),
        "non_physical": non_physical,
    });
    doc.csv = String::from("n,beta2,root,lambda2_lo,lambda2_hi,lambda2_exact,lambda2,energy\n");
    for (k, iv) in split.physical.iter().enumerate() {
        let l = to_f64(&iv.estimate());
        doc.csv.push_str(&format!(
            "{n},{},{k},{},{},{},{},{}\n",
            rat_string(&b),
            rat_string(&iv.lo),
            rat_string(&iv.hi),
            iv.exact.as_ref().map(rat_string).unwrap_or_default(),
            float(l),
            float(n as f64 - l),
        ));
    }
    doc.text = format!(
        "J_{n}(L) at B = {} : {}\n{} positive root(s), Sturm count {}\n",
        rat_string(&b),
        render_poly(&split.poly.to_mpoly(Var::L)),
        split.physical.len(),
        split.sturm_count
    );
    for iv in &split.physical {
        let l = to_f64(&iv.estimate());
        let shown = match &iv.exact {
            Some(x) => rat_string(x),
            None => format!("[{}, {}]", float(to_f64(&iv.lo)), float(to_f64(&iv.hi))),
        };
        doc.text.push_str(&format!("  L = {shown}  (λ² ≈ {}, E = {})\n", float(l), float(n as f64 - l)));
    }
    if split.boundary {
        doc.text.push_str("  L = 0 is a root but not physical (λ > 0 required)\n");
    }
    if !split.negative.is_empty() {
        doc.text.push_str(&format!("  {} negative root(s) in L, not physical\n", split.negative.len()));
    }
    Ok(doc)
}

fn verify(level: Level, exec: Execution) -> Result<Document> {
    let ctx = Context::new(exec);
    let report: Report = match level {
        Level::Fixtures => verify::fixtures(&ctx),
        Level::Cross => verify::cross(&ctx),
        Level::Oracle => verify::oracle(exec),
        Level::All => verify::all(&ctx, exec),
    };
    let mut doc = Document::new("verify", json!({ "level": report.suite }));
    let passed = report.checks.iter().filter(|c| c.passed).count();
    doc.results = json!({
        "suite": report.suite,
        "passed": passed,
        "total": report.checks.len(),
        "checks": report.checks.iter().map(check_json).collect::<Vec<_>>(),
    });
    doc.csv = String::from("suite,id,passed,detail\n");
    for c in &report.checks {
        doc.csv.push_str(&format!(
            "{},{},{},{}\n",
            report.suite,
            csv_field(&c.id),
            c.passed,
            csv_field(&c.detail)
        ));
    }
    doc.text = format!("{report}\n");
    doc.failed = report.failures().map(|c| c.id.clone()).collect();
    Ok(doc)
}

fn norms(lambda: &LambdaList, n: usize, exec: Execution) -> Result<Document> {
    let (values, name, squared_input) = if lambda.lambda2.is_empty() {
        (&lambda.lambda, "lambda", false)
    } else {
        (&lambda.lambda2, "lambda2", true)
    };
    let ls = values
        .iter()
        .map(|s| {
            let x = exact(s, name)?;
            Ok(if squared_input { x } else { &x * &x })
        })
        .collect::<Result<Vec<Rat>>>()?;
    let seqs = norm_sweep(&ls, n, exec)?;
    let shown: Vec<String> = ls.iter().map(rat_string).collect();
    let mut doc = Document::new("norms", json!({ "n": n, "lambda2": shown }));
    doc.csv = String::from("lambda2,n,gamma_exact_num,gamma_exact_den,gamma_float,sign\n");
    let mut results = Vec::new();
    for seq in &seqs {
        let l = rat_string(&seq.lambda_sq);
        doc.text.push_str(&format!("λ² = {l}\n"));
        let mut rows = Vec::new();
        for (k, (g, s)) in seq.values.iter().zip(&seq.signs).enumerate() {
            doc.csv.push_str(&format!(
                "{l},{k},{},{},{},{s}\n",
                g.numer(),
                g.denom(),
                float(to_f64(g))
            ));
            doc.text.push_str(&format!("  γ_{k} = {} ({s})\n", rat_string(g)));
            rows.push(json!({
                "n": k,
                "gamma": rat_string(g),
                "gamma_float": to_f64(g),
                "sign": s.to_string(),
            }));
        }
        results.push(json!({ "lambda2": l, "gammas": rows }));
    }
    doc.results = Value::Array(results);
    Ok(doc)
}

fn cutoff_from_env(l: f64) -> Result<usize> {
    match std::env::var(NMAX_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("{NMAX_ENV} must be a positive integer, got {v:?}")),
        Err(_) => Ok(default_cutoff(l)),
    }
}

fn spectrum(beta: &Beta, lambda: &Lambda, nmax: Option<usize>, form: FormArg, count: usize) -> Result<Document> {
    let (b, bp) = beta_sq(beta)?;
    let (l, lp) = lambda_sq(lambda)?;
    let lf = to_f64(&l);
    let n_max = match nmax {
        Some(n) => n,
        None => cutoff_from_env(lf)?,
    };
    let form = match form {
        FormArg::Original => Form::Original,
        FormArg::Transformed => Form::Transformed,
    };
    let params = FloatParams::from_squares(lf, to_f64(&b));
    let s = oracle_spectrum(params, TruncationSpec::new(n_max, form));
    let shown = s.lowest(count);
    let form_name = match form {
        Form::Original => "original",
        Form::Transformed => "transformed",
    };
    let mut doc = Document::new(
        "spectrum",
        merge(&[bp, lp, json!({ "nmax": n_max, "form": form_name, "count": count })]),
    );
    doc.results = json!({ "dim": s.eigenvalues.len(), "eigenvalues": shown });
    doc.csv = String::from("k,energy\n");
    doc.text = format!("λ² = {}, β² = {}, n_max = {n_max}, {form_name} form\n", rat_string(&l), rat_string(&b));
    for (k, e) in shown.iter().enumerate() {
        doc.csv.push_str(&format!("{k},{}\n", float(*e)));
        doc.text.push_str(&format!("  E_{k} = {}\n", float(*e)));
    }
    Ok(doc)
}

fn wavefunction(n: usize, beta: &Beta, root: usize, points: usize) -> Result<Document> {
    let (b, bp) = beta_sq(beta)?;
    let split = juddian_roots(n, &b, 1e-18)?;
    let Some(iv) = split.physical.get(root) else {
        bail!(
            "J_{n} has {} positive root(s) in λ² at β² = {}; --root {root} is unavailable",
            split.physical.len(),
            rat_string(&b)
        );
    };
    let bf = to_f64(&b);
    let (l, coeffs, exact_chi) = match &iv.exact {
        Some(lx) => {
            let chi = qes_eigenfunction(n, lx, &b)?;
            let exact: Vec<Rat> = chi
                .coefficients_in(Var::X)
                .iter()
                .map(|c| c.constant_value().unwrap_or_default())
                .collect();
            (to_f64(lx), exact.iter().map(to_f64).collect(), Some((lx.clone(), exact, chi)))
        }
        None => {
            let l = to_f64(&iv.estimate());
            (l, qes_eigenfunction_f64(n, l, bf)?, None)
        }
    };
    let energy = n as f64 - l;
    let params = FloatParams::from_squares(l, bf);
    let psi = psi_pair_from_coeffs(coeffs.clone(), energy, params)?;
    let lam = params.lambda;
    let step = if points > 1 { 4.0 * lam / (points - 1) as f64 } else { 0.0 };
    let grid: Vec<f64> = (0..points).map(|k| -2.0 * lam + k as f64 * step).collect();
    let regular: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|x| (x.abs() - lam).abs() >= DEFAULT_SINGULAR_MARGIN)
        .collect();
    let residual = system_residual_with_margin(&psi, energy, params, &regular, DEFAULT_SINGULAR_MARGIN)?;
    let samples: Vec<(f64, f64, f64)> = grid.iter().map(|&x| (x, psi.psi1(x), psi.psi2(x))).collect();

    let mut doc = Document::new(
        "wavefunction",
        merge(&[json!({ "N": n, "root": root, "points": points }), bp]),
    );
    let (lambda2, energy_exact, chi_exact, chi_text) = match &exact_chi {
        Some((lx, ex, chi)) => (
            json!(rat_string(lx)),
            json!(rat_string(&(&Rat::from_integer((n as i64).into()) - lx))),
            json!(ex.iter().map(rat_string).collect::<Vec<_>>()),
            render_poly(chi).replace('X', "ξ"),
        ),
        None => {
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| match k {
                    0 => float(*c),
                    1 => format!("{}*ξ", float(*c)),
                    _ => format!("{}*ξ^{k}", float(*c)),
                })
                .collect();
            (json!(l), Value::Null, Value::Null, terms.join(" + "))
        }
    };
    doc.results = json!({
        "lambda2": lambda2,
        "lambda2_float": l,
        "energy": energy,
        "energy_exact": energy_exact,
        "chi": chi_exact,
        "chi_float": coeffs,
        "max_residual": residual,
        "samples": samples.iter().map(|(x, a, b)| json!({ "x": x, "psi1": a, "psi2": b })).collect::<Vec<_>>(),
    });
    doc.csv = String::from("x,psi1,psi2\n");
    for (x, a, c) in &samples {
        doc.csv.push_str(&format!("{},{},{}\n", float(*x), float(*a), float(*c)));
    }
    doc.text = format!(
        "N = {n}, β² = {}, λ² = {}, E = {}\nχ(ξ) = {chi_text}\nmax residual of the first-order system on the grid: {residual:.3e}\n",
        rat_string(&b),
        match &exact_chi {
            Some((lx, _, _)) => rat_string(lx),
            None => float(l),
        },
        float(energy),
    );
    for (x, a, c) in &samples {
        doc.text.push_str(&format!("  x = {:>10.6}  ψ₁ = {}  ψ₂ = {}\n", x, float(*a), float(*c)));
    }
    Ok(doc)
}
