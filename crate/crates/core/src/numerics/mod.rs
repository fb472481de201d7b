//! Exact root isolation, a dense symmetric eigensolver and log-Gamma.

mod eigen;
mod special;
mod sturm;
mod upoly;

pub use eigen::{symmetric_eigen, symmetric_eigenvalues, Eigen, SymMatrix};
pub use special::{gamma, ln_gamma};
pub use sturm::{
    default_domain, enclosure_f64, isolate_batch, isolate_real_roots, refine_interval,
    refine_root, IsolatingInterval, SturmSequence,
};
pub use upoly::{specialize, UPoly};

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}
