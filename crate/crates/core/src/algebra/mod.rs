//! Exact rational and sparse multivariate polynomial arithmetic.

mod mpoly;
mod peel;
mod rat;
mod ratfn;
mod text;

pub use mpoly::{energy_shift_factor, MPoly, Monomial, Var};
pub use peel::{peel_structure, Peeled};
pub use rat::{denominator_lcm, parse_rat, rat, rat_int, rat_string, signum, to_f64, Rat};
pub use ratfn::{divide_by_x_minus_one, RatFn};
pub use text::{parse_poly, render_poly};
