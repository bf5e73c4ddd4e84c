use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfock_core::suite::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "qfock", version, about = "q-deformed Fock space and Bargmann transform toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Run parameters; unset flags fall back to the JSON file named by
/// `QFOCK_CONFIG`, then to built-in defaults.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Deformation parameter, 0 < q < 1.
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// Number of Hermite modes kept by the Bargmann transform.
    #[arg(long, global = true)]
    pub modes: Option<usize>,
    /// Jackson node depth.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Override every verification tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed of the randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single quantity.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Emit a Gram matrix or kernel table.
    Table {
        #[command(subcommand)]
        name: TableName,
    },
    /// Generate (q, 1/q)-grid points from seeds.
    Grid(GridArgs),
    /// Check every identity; exit 1 if any fails.
    Verify {
        /// Only run entries whose name starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EvalTarget {
    /// q-number [alpha]_q.
    Qnum {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// q-factorial [n]_q!.
    Qfact {
        #[arg(long)]
        n: usize,
    },
    /// Gaussian binomial [n k]_q.
    Qbinom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Big q-exponential E_q(x), |x| < 1/(1-q).
    #[command(name = "Eq")]
    BigE {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Small q-exponential e_q(x).
    #[command(name = "eq")]
    SmallE {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// q-Gamma function, t > 0.
    Gamma {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// q-analytic monomial z_q^n at a point given as `x,y` or `a+bi`.
    Zq {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// q-Hermite polynomial H_k: coefficients, or the value at --t.
    Hermite {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
    },
    /// Reproducing kernel K_q(z, w).
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableName {
    /// Weighted Gram matrix of H_0 .. H_kmax.
    HermiteGram {
        #[arg(long, default_value_t = 6)]
        kmax: usize,
    },
    /// Gaussian Gram matrix of z_q^k zbar_q^h, k + h <= N.
    MixedGram {
        #[arg(long = "N", default_value_t = 3)]
        n: u32,
    },
    /// Fischer Gram matrix of the Bargmann images of H~_0 .. H~_(M-1).
    BargmannGram {
        #[arg(long = "M")]
        m: Option<usize>,
    },
    /// K_q(z, w) on a square grid of z, columns x,y,re,im,abs.
    KernelGrid {
        #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 1.0)]
        extent: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
    },
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Seeds as `x,y;x,y;...`.
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    /// File with one `x,y` seed per line.
    #[arg(long)]
    pub seed_file: Option<PathBuf>,
    /// Add the nine reference seeds; q defaults to 0.6 and iterations to 6.
    #[arg(long)]
    pub reference_seeds: bool,
    /// Number of dilation steps in each direction.
    #[arg(long)]
    pub iterations: Option<u32>,
}
