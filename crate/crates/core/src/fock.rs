//! Truncated Fock-space matrices of the Rabi Hamiltonian.
//!
//! Basis `|n⟩ ⊗ |s⟩` for `n = 0..=n_max`, `s ∈ {↑, ↓}`, flattened as
//! index `2n + s` with `↑ = 0`. Pauli conventions: `σ₀ = diag(+1, −1)` on
//! `(↑, ↓)` and `σ₊ + σ₋` is the spin flip. With `ħ = ω = 1` and `Ω = 2β`:
//!
//! - original form: `H = a†a + β σ₀ + λ (σ₊ + σ₋)(a† + a)`;
//! - transformed form: `𝓗 = a†a + β (σ₊ + σ₋) + λ σ₀ (a† + a)`.
//!
//! The two are unitarily equivalent with no constant offset; their truncated
//! spectra agree in the low-lying part once `n_max` is large enough.

use crate::algebra::{to_f64, Rat, Var};
use crate::error::Result;
use crate::exec::Execution;
use crate::model::FloatParams;
use crate::numerics::{refine_interval, specialize, symmetric_eigenvalues, IsolatingInterval, SymMatrix, UPoly};
use crate::series::juddian_polynomial;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Form {
    Original,
    #[default]
    Transformed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationSpec {
    pub n_max: usize,
    pub form: Form,
}

impl TruncationSpec {
    pub fn new(n_max: usize, form: Form) -> TruncationSpec {
        TruncationSpec { n_max, form }
    }

    pub fn transformed(n_max: usize) -> TruncationSpec {
        TruncationSpec::new(n_max, Form::Transformed)
    }

    pub fn dim(&self) -> usize {
        2 * (self.n_max + 1)
    }
}

/// `n_max ≥ 40 + 40 λ²`.
pub fn default_cutoff(lambda_sq: f64) -> usize {
    (40.0 + 40.0 * lambda_sq.max(0.0)).ceil() as usize
}

pub fn build_hamiltonian(params: FloatParams, spec: TruncationSpec) -> SymMatrix {
    let FloatParams { lambda, beta } = params;
    let mut h = SymMatrix::zeros(spec.dim());
    for n in 0..=spec.n_max {
        let (up, down) = (2 * n, 2 * n + 1);
        let boson = n as f64;
        let hop = lambda * ((n + 1) as f64).sqrt();
        let has_next = n < spec.n_max;
        match spec.form {
            Form::Transformed => {
                h.set(up, up, boson);
                h.set(down, down, boson);
                h.set(up, down, beta);
                if has_next {
                    h.set(up, up + 2, hop);
                    h.set(down, down + 2, -hop);
                }
            }
            Form::Original => {
                h.set(up, up, boson + beta);
                h.set(down, down, boson - beta);
                if has_next {
                    h.set(up, down + 2, hop);
                    h.set(down, up + 2, hop);
                }
            }
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub spec: TruncationSpec,
    pub params: FloatParams,
}

impl Spectrum {
    /// Smallest `|eᵢ − target|`.
    pub fn distance_to(&self, target: f64) -> (f64, f64) {
        self.eigenvalues
            .iter()
            .map(|&e| ((e - target).abs(), e))
            .fold((f64::INFINITY, f64::NAN), |a, b| if b.0 < a.0 { b } else { a })
    }

    pub fn lowest(&self, k: usize) -> &[f64] {
        &self.eigenvalues[..k.min(self.eigenvalues.len())]
    }
}

pub fn oracle_spectrum(params: FloatParams, spec: TruncationSpec) -> Spectrum {
    Spectrum {
        eigenvalues: symmetric_eigenvalues(&build_hamiltonian(params, spec)),
        spec,
        params,
    }
}

/// Spectra for many parameter points, in input order.
pub fn oracle_sweep(points: &[(FloatParams, TruncationSpec)], exec: Execution) -> Vec<Spectrum> {
    exec.map(points, |&(p, s)| oracle_spectrum(p, s))
}

#[derive(Clone, Debug, PartialEq)]
pub enum JuddianStatus {
    /// `J_N(L, B) = 0` exactly.
    Exact,
    /// The root in L lies in `(lo, hi)`, certified by a sign change of `J_N`.
    Enclosed { lo: f64, hi: f64 },
    /// `J_N(L, B) ≠ 0`; the value is attached.
    NotJuddian { value: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QesCheck {
    pub ok: bool,
    pub distance: f64,
    pub target: f64,
    pub nearest: f64,
    pub status: JuddianStatus,
    pub warning: Option<String>,
}

fn check_energy(
    n: usize,
    l: f64,
    b: f64,
    n_max: usize,
    tol: f64,
    status: JuddianStatus,
) -> QesCheck {
    let params = FloatParams::from_squares(l, b);
    let spectrum = oracle_spectrum(params, TruncationSpec::transformed(n_max));
    let target = n as f64 - l;
    let (distance, nearest) = spectrum.distance_to(target);
    let warning = match &status {
        JuddianStatus::NotJuddian { value } => Some(format!(
            "(λ², β²) = ({l}, {b}) is not a Juddian point of order {n}: J_{n} = {value}"
        )),
        _ => None,
    };
    QesCheck {
        ok: distance <= tol,
        distance,
        target,
        nearest,
        status,
        warning,
    }
}

/// Compares `E = N − L` with the oracle spectrum at exact `(L, B)`.
pub fn verify_qes_point(n: usize, l: &Rat, b: &Rat, n_max: usize, tol: f64) -> Result<QesCheck> {
    let j = juddian_polynomial(n)?;
    let value = j.eval_rat([&Rat::default(), l, b, &Rat::default()]);
    let status = if value == Rat::default() {
        JuddianStatus::Exact
    } else {
        JuddianStatus::NotJuddian { value: to_f64(&value) }
    };
    Ok(check_energy(n, to_f64(l), to_f64(b), n_max, tol, status))
}

/// Same check at a root of `J_N(·, B)` given by an isolating interval in L.
pub fn verify_qes_enclosure(
    n: usize,
    root: &IsolatingInterval,
    b: &Rat,
    n_max: usize,
    tol: f64,
) -> Result<QesCheck> {
    let (_, jl): (Var, UPoly) = specialize(&juddian_polynomial(n)?, &[(Var::B, b.clone())])?;
    let fine = refine_interval(&jl, root, 1e-18);
    let status = match &fine.exact {
        Some(_) => JuddianStatus::Exact,
        None if fine.sign_lo * fine.sign_hi < 0 => JuddianStatus::Enclosed {
            lo: to_f64(&fine.lo),
            hi: to_f64(&fine.hi),
        },
        None => JuddianStatus::NotJuddian {
            value: jl.eval_f64(to_f64(&fine.midpoint())),
        },
    };
    Ok(check_energy(n, to_f64(&fine.estimate()), to_f64(b), n_max, tol, status))
}
