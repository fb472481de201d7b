//! Exact symbolic–numeric toolkit for the quasi-exactly-solvable sector of the
//! Rabi Hamiltonian.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: rationals, sparse polynomials in `E, L = λ², B = β², X = ξ`,
//!   rational functions over `X^a (X-1)^b`, canonical text format.
//! - [`model`]: the transformed eigenproblem in the Bargmann variable ξ, the
//!   seed pair for the asymptotic iteration, and ψ-pair reconstruction.
//! - [`aim`]: the symbolic asymptotic iteration and its termination polynomials.
//! - [`series`]: the Frobenius three-term relation, the energy polynomials
//!   `P_n(E)`, Juddian constraint polynomials and exact QES eigenfunctions.
//! - [`norms`]: squared norms of the polynomial family in three forms.
//! - [`numerics`]: Sturm root isolation over exact rationals, a dense
//!   symmetric eigensolver, and log-Gamma.
//! - [`fock`]: truncated Fock-space matrices used as an independent oracle.
//! - [`verify`]: the fixture, cross-engine and oracle check suites.
//!
//! Data-parallel loops (parameter sweeps, batches of root isolations,
//! iteration depths) go through [`exec`], which uses rayon when the
//! `parallel` feature is enabled and falls back to plain iteration otherwise.

pub mod aim;
pub mod algebra;
mod error;
pub mod exec;
pub mod fixtures;
pub mod fock;
pub mod model;
pub mod norms;
pub mod numerics;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
