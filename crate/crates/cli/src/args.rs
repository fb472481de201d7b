use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qes_rabi::aim::DEFAULT_MAX_ITERATION;
use qes_rabi::series::DEFAULT_MAX_ORDER;

#[derive(Parser, Debug)]
#[command(name = "qes-rabi", version, about = "Exact QES sector of the Rabi Hamiltonian")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Omit the `meta` block (version, timestamp) from JSON output.
    #[arg(long, global = true)]
    pub no_meta: bool,

    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Termination coefficients C_nd in factored form, and Y_n.
    Aim {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=DEFAULT_MAX_ITERATION as u64))]
        n: u64,
        /// Compare against the reference table (n ≤ 5).
        #[arg(long)]
        fixture: bool,
    },
    /// Certified roots in λ² of the Juddian polynomial J_N at fixed β.
    Juddian {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=DEFAULT_MAX_ORDER as u64))]
        n: u64,
        #[command(flatten)]
        beta: Beta,
        /// Width of the reported enclosures.
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
    },
    /// Run check suites; exits 2 on any failed check.
    Verify {
        #[arg(value_enum, default_value_t = Level::All)]
        level: Level,
    },
    /// Squared norms γ_n of the energy polynomials.
    Norms {
        #[command(flatten)]
        lambda: LambdaList,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Eigenvalues of the truncated Fock-space Hamiltonian.
    Spectrum {
        #[command(flatten)]
        beta: Beta,
        #[command(flatten)]
        lambda: Lambda,
        /// Boson cutoff; defaults to $QES_RABI_NMAX_DEFAULT or a λ-dependent value.
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormArg::Transformed)]
        form: FormArg,
        /// Number of lowest eigenvalues to print.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Exact eigenfunction at a Juddian point: χ coefficients and sampled ψ₁, ψ₂.
    Wavefunction {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..=DEFAULT_MAX_ORDER as u64))]
        order: u64,
        #[command(flatten)]
        beta: Beta,
        /// Which positive root of J_N in λ², counted from the smallest.
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = 41)]
        points: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Beta {
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub beta2: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Lambda {
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub lambda2: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct LambdaList {
    /// One or more values of λ (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<String>,
    /// One or more values of λ² (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub lambda2: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fixtures,
    Cross,
    Oracle,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Original,
    Transformed,
}
