use thiserror::Error;

use crate::algebra::Var;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("grid point x = {x} lies within {margin} of a singular point x = ±λ")]
    SingularGridPoint { x: f64, margin: f64 },
    #[error("β = 0 decouples the spin; ψ₂ cannot be reconstructed from ψ₁")]
    DecoupledSpin,
    #[error("λ² must be positive (got {0})")]
    NonPositiveCoupling(String),
    #[error("Pochhammer pole: factor (k − λ²) vanishes at k = {k}")]
    Pole { k: u32 },
    #[error("recursion row {row} has a vanishing leading coefficient; use the QES eigenfunction path")]
    QesRow { row: usize },
    #[error("(λ², β²) is not a Juddian point of order N = {n}")]
    NotJuddian { n: usize },
    #[error("truncation at N = {n} is degenerate: middle coefficient M(N) vanishes")]
    DegenerateTruncation { n: usize },
    #[error("specialization must leave exactly one free variable (free: {free:?})")]
    WrongArity { free: Vec<Var> },
    #[error("closed-form norm is singular at integer λ² = {0}; use the exact forms")]
    IntegerLambdaSquared(i64),
    #[error("ODE coefficients do not yield a three-term relation (shift {shift})")]
    NotThreeTerm { shift: i64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
