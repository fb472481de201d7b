//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary so every criterion reports even when an earlier one
//! fails. The process exits non-zero unless every failing check is listed in
//! `RECORDED_TABLE_DEFECTS` and every listed check actually fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use qes_rabi::algebra::{rat, rat_int, to_f64, Rat, Var};
use qes_rabi::exec::Execution;
use qes_rabi::fock::{oracle_spectrum, verify_qes_enclosure, verify_qes_point, Form, TruncationSpec};
use qes_rabi::model::{
    ode_coefficients, psi_pair_from_chi, psi_pair_from_coeffs, system_residual, FloatParams,
    ModelParams,
};
use qes_rabi::norms::{gamma_closed_form, gamma_pochhammer, gamma_recursion};
use qes_rabi::numerics::{
    isolate_real_roots, refine_root, symmetric_eigen, SturmSequence, SymMatrix, UPoly,
};
use qes_rabi::series::{qes_eigenfunction, qes_eigenfunction_f64, qes_energy};
use qes_rabi::verify::{
    aim_table_checks, cross, juddian_roots, juddian_table_checks, y_checks, Context,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Published table entries that disagree with the computation, with the analysis in the notes.
const RECORDED_TABLE_DEFECTS: &[&str] = &["C_55"];

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
    elapsed: Duration,
    budget: Option<Duration>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.budget.is_none_or(|b| self.elapsed <= b)
    }
}

fn run(budget: Option<u64>, f: impl FnOnce(&mut Vec<String>, &mut Vec<String>)) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    f(&mut failures, &mut notes);
    Outcome {
        failures,
        notes,
        elapsed: start.elapsed(),
        budget: budget.map(Duration::from_secs),
    }
}

fn expect(failures: &mut Vec<String>, id: impl Into<String>, ok: bool) {
    if !ok {
        failures.push(id.into());
    }
}

fn grid(lambda: f64) -> Vec<f64> {
    (0..101)
        .map(|k| -2.0 * lambda + 0.005 + k as f64 * 4.0 * lambda / 100.0)
        .collect()
}

fn c1_aim_table(ctx: &Context) -> Outcome {
    run(Some(60), |fail, notes| {
        for c in aim_table_checks(ctx) {
            if !c.passed {
                notes.push(format!("{}: {}", c.id, c.detail));
            }
            expect(fail, c.id, c.passed);
        }
    })
}

fn c2_y_polynomials(ctx: &Context) -> Outcome {
    run(None, |fail, _| {
        for c in y_checks(ctx) {
            expect(fail, c.id, c.passed);
        }
    })
}

fn c3_juddian_table() -> Outcome {
    run(Some(10), |fail, _| {
        for c in juddian_table_checks() {
            expect(fail, c.id, c.passed);
        }
    })
}

fn c4_cross_engine(ctx: &Context) -> Outcome {
    run(None, |fail, notes| {
        for c in cross(ctx).checks {
            notes.push(c.detail.clone());
            expect(fail, c.id, c.passed);
        }
    })
}

fn c5_norms() -> Outcome {
    run(None, |fail, _| {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let l = rat(rng.gen_range(1..400), rng.gen_range(1..60));
            let seq = gamma_recursion(20, &l).unwrap();
            for n in 0..=20 {
                let ok = seq.values[n] == gamma_pochhammer(n, &l).unwrap();
                expect(fail, format!("pochhammer L={l} n={n}"), ok);
            }
        }
        for l in [rat(3, 10), rat(1, 2), rat(17, 10), rat(5, 2), rat(39, 10)] {
            let seq = gamma_recursion(20, &l).unwrap();
            for (n, g) in seq.values.iter().enumerate() {
                let exact = to_f64(g);
                let approx = gamma_closed_form(n, to_f64(&l)).unwrap();
                let ok = ((approx - exact) / exact).abs() <= 1e-10;
                expect(fail, format!("closed form L={l} n={n}"), ok);
            }
        }
        let g1 = &gamma_recursion(1, &rat(5, 2)).unwrap().values[1];
        expect(fail, "gamma_1 < 0 at L = 5/2", *g1 < Rat::zero());
        for m in 1..=5usize {
            let seq = gamma_recursion(20, &rat_int(m as i64)).unwrap();
            let ok = seq.values[m..].iter().all(|g| g.is_zero()) && seq.values[..m].iter().all(|g| !g.is_zero());
            expect(fail, format!("vanishing at L = {m}"), ok);
        }
    })
}

fn c6_oracle(exec: Execution) -> Outcome {
    run(Some(30), |fail, notes| {
        let b = rat(1, 4);
        let (_, roots) = juddian_roots(1, &b).unwrap();
        let exact = roots.first().and_then(|r| r.exact.clone());
        expect(fail, "J1 root = 3/16", roots.len() == 1 && exact == Some(rat(3, 16)));
        let c = verify_qes_point(1, &rat(3, 16), &b, 80, 1e-6).unwrap();
        notes.push(format!("N=1: distance {:.2e}", c.distance));
        expect(fail, "N=1 oracle", c.ok && (c.target - 0.8125).abs() < 1e-15);
        let jobs: Vec<_> = (2..=5usize)
            .map(|n| {
                let (_, roots) = juddian_roots(n, &b).unwrap();
                (n, roots)
            })
            .collect();
        let checks = exec.map(&jobs, |(n, roots)| {
            let r = roots.first().map(|iv| verify_qes_enclosure(*n, iv, &b, 150, 1e-5).unwrap());
            (*n, r)
        });
        for (n, c) in checks {
            match c {
                Some(c) => {
                    notes.push(format!("N={n}: distance {:.2e}", c.distance));
                    expect(fail, format!("N={n} oracle"), c.ok);
                }
                None => expect(fail, format!("N={n} has a positive root"), false),
            }
        }
    })
}

fn c7_eigenfunctions() -> Outcome {
    run(None, |fail, notes| {
        let ode = ode_coefficients();
        for (n, l, b) in [(1, rat(3, 16), rat(1, 4)), (2, rat(5, 8), Rat::one())] {
            let chi = qes_eigenfunction(n, &l, &b).unwrap();
            let e = qes_energy(n as i64, &Rat::zero(), &l);
            expect(fail, format!("N={n} degree"), chi.degree(Var::X) == Some(n as u32));
            expect(fail, format!("N={n} symbolic residual"), ode.at(&e, &l, &b).residual(&chi).is_zero());
            let params = ModelParams::new(l.clone(), b.clone()).unwrap();
            let psi = psi_pair_from_chi(&chi, &e, &params).unwrap();
            let fp = params.to_float();
            let r = system_residual(&psi, to_f64(&e), fp, &grid(fp.lambda)).unwrap();
            notes.push(format!("N={n} at (L, B) = ({l}, {b}): max residual {r:.2e}"));
            expect(fail, format!("N={n} first-order residual"), r < 1e-10);
        }
        // N = 2 at an irrational root of J2(L; 1/4).
        let (p, roots) = juddian_roots(2, &rat(1, 4)).unwrap();
        let l = to_f64(&refine_root(&p, &roots[0], 1e-18));
        let chi = qes_eigenfunction_f64(2, l, 0.25).unwrap();
        let fp = FloatParams::from_squares(l, 0.25);
        let psi = psi_pair_from_coeffs(chi, 2.0 - l, fp).unwrap();
        let r = system_residual(&psi, 2.0 - l, fp, &grid(fp.lambda)).unwrap();
        notes.push(format!("N=2 at (L, B) = ({l:.6}, 1/4): max residual {r:.2e}"));
        expect(fail, "N=2 float residual", r < 1e-10);
    })
}

fn c8_oracle_sanity() -> Outcome {
    run(None, |fail, notes| {
        let s = oracle_spectrum(FloatParams { lambda: 0.6, beta: 0.0 }, TruncationSpec::transformed(80));
        for (k, e) in s.lowest(6).iter().enumerate() {
            let want = (k / 2) as f64 - 0.36;
            expect(fail, format!("displaced level {k}"), (e - want).abs() < 1e-8);
        }
        for p in [FloatParams::from_squares(0.5, 0.25), FloatParams { lambda: 0.6, beta: 0.0 }] {
            let [t, o] = [Form::Transformed, Form::Original].map(|f| oracle_spectrum(p, TruncationSpec::new(120, f)));
            let dev = t.lowest(10).iter().zip(o.lowest(10)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            notes.push(format!("forms at (λ, β) = ({:.3}, {:.3}): {dev:.2e}", p.lambda, p.beta));
            expect(fail, "form equivalence", dev < 1e-6);
        }
    })
}

/// Product of distinct rational linear factors, one squared factor, and a root-free quadratic.
fn random_poly(rng: &mut ChaCha8Rng) -> (UPoly, BTreeSet<Rat>) {
    let mut roots = BTreeSet::new();
    let degree = rng.gen_range(1..=10);
    let linear = rng.gen_range(0..=degree.min(7));
    while roots.len() < linear {
        roots.insert(rat(rng.gen_range(-40..=40), 8));
    }
    let mut p = UPoly::constant(rat_int(rng.gen_range(1..=9)));
    for r in &roots {
        p = p.mul(&UPoly::linear_root(r));
    }
    let mut deg = linear;
    if let Some(r) = roots.iter().next().filter(|_| deg < degree) {
        p = p.mul(&UPoly::linear_root(r));
        deg += 1;
    }
    while deg + 2 <= degree {
        let c = rat(rng.gen_range(1..50), rng.gen_range(1..5));
        let s = rat(rng.gen_range(-20..20), 4);
        p = p.mul(&UPoly::new(vec![&s * &s + c, -rat_int(2) * s, Rat::one()]));
        deg += 2;
    }
    (p, roots)
}

fn c9_numerics() -> Outcome {
    run(None, |fail, _| {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let (lo, hi) = (rat(-11, 2), rat(11, 2));
        for case in 0..100 {
            let (p, roots) = random_poly(&mut rng);
            let ivs = isolate_real_roots(&p, (&lo, &hi));
            // Exhaustive scan of the squarefree part on a grid finer than the root spacing.
            let q = p.squarefree();
            let step = rat(1, 64);
            let mut x = &lo + rat(1, 1024);
            let mut last = q.sign_at(&x);
            let mut changes = 0;
            while x < hi {
                x += &step;
                let s = q.sign_at(&x);
                if s != 0 && s != last {
                    changes += 1;
                    last = s;
                }
            }
            let sturm = SturmSequence::new(&q).count(&lo, &hi);
            let covered = roots.iter().all(|r| ivs.iter().filter(|iv| iv.contains(r) || iv.exact.as_ref() == Some(r)).count() == 1);
            let ok = ivs.len() == roots.len() && changes == roots.len() && sturm == roots.len() && covered;
            expect(fail, format!("isolation case {case}"), ok);
        }
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            let m = SymMatrix::from_fn(50, |_, _| rng.gen_range(-1.0..1.0));
            let norm = m.frobenius_norm();
            let eig = symmetric_eigen(&m);
            let worst = eig
                .values
                .iter()
                .zip(&eig.vectors)
                .map(|(val, v)| {
                    let av = m.mul_vec(v);
                    av.iter().zip(v).map(|(a, x)| (a - val * x).powi(2)).sum::<f64>().sqrt()
                })
                .fold(0.0, f64::max);
            expect(fail, format!("eigen residual seed {seed}"), worst <= 1e-10 * norm);
        }
    })
}

fn c10_negative_control() -> Outcome {
    run(None, |fail, notes| {
        let c = verify_qes_point(1, &rat(1, 4), &rat(1, 4), 80, 1e-6).unwrap();
        notes.push(format!("distance {:.3e}", c.distance));
        expect(fail, "non-Juddian rejected", !c.ok && c.distance > 1e-3 && c.warning.is_some());
    })
}

fn main() -> ExitCode {
    let exec = Execution::default();
    let ctx = Context::new(exec);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 termination coefficients n=1..5", Box::new(|| c1_aim_table(&ctx))),
        ("2 Y0 and deg_E(Y_n) = 2n+2", Box::new(|| c2_y_polynomials(&ctx))),
        ("3 Juddian polynomials N=1..5", Box::new(c3_juddian_table)),
        ("4 Y_N(E=N-L) / J_N is c*B^m", Box::new(|| c4_cross_engine(&ctx))),
        ("5 norm forms agree", Box::new(c5_norms)),
        ("6 Juddian points confirmed by oracle", Box::new(move || c6_oracle(exec))),
        ("7 exact eigenfunctions", Box::new(c7_eigenfunctions)),
        ("8 oracle sanity", Box::new(c8_oracle_sanity)),
        ("9 root isolation and eigensolver", Box::new(c9_numerics)),
        ("10 negative control", Box::new(c10_negative_control)),
    ];
    let mut failing = BTreeSet::new();
    let mut passed = 0;
    println!("\nacceptance criteria");
    for (name, f) in &criteria {
        let out = f();
        let verdict = if out.passed() { "PASS" } else { "FAIL" };
        let budget = out.budget.map_or(String::new(), |b| format!(" / {}s budget", b.as_secs()));
        println!("criterion {name} ... {verdict} ({:.2?}{budget})", out.elapsed);
        for n in &out.notes {
            println!("    {n}");
        }
        for id in &out.failures {
            println!("    failed: {id}");
        }
        if out.passed() {
            passed += 1;
        } else {
            if out.failures.is_empty() {
                failing.insert(format!("{name}: over time budget"));
            }
            failing.extend(out.failures);
        }
    }
    let recorded: BTreeSet<String> = RECORDED_TABLE_DEFECTS.iter().map(|s| s.to_string()).collect();
    println!("{passed}/{} criteria passed", criteria.len());
    if failing == recorded {
        println!("remaining failures are the recorded table defects: {RECORDED_TABLE_DEFECTS:?}");
        ExitCode::SUCCESS
    } else {
        println!("unexpected failure set: {failing:?} (recorded: {RECORDED_TABLE_DEFECTS:?})");
        ExitCode::FAILURE
    }
}

