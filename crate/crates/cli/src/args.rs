use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "gfwigner", version, about = "Discrete Wigner functions on the GF(2^n) phase space of n qubits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Flags win over the config file.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Number of qubits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Primitive polynomial as coefficients low to high, e.g. 1011 for x^3 + x^2 + 1.
    #[arg(long)]
    pub poly: Option<String>,
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Where the quantum net comes from; at most one may be given.
#[derive(Args, Debug, Clone, Default)]
pub struct NetArgs {
    /// Named net (default, covariant, qec, meanking) or a path to a net JSON file.
    #[arg(long)]
    pub net: Option<String>,
    /// Covariant net with all-(+1) signs.
    #[arg(long)]
    pub covariant: bool,
    /// Net JSON file with per-striation sign strings.
    #[arg(long)]
    pub signs: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Ascii,
    Csv,
    Json,
}

impl From<ReportFormat> for gfwigner::export::GridFormat {
    fn from(f: ReportFormat) -> Self {
        match f {
            ReportFormat::Ascii => gfwigner::export::GridFormat::Ascii,
            ReportFormat::Csv => gfwigner::export::GridFormat::Csv,
            ReportFormat::Json => gfwigner::export::GridFormat::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field data; with --table, the canonical and dual power orderings.
    Field {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Rays of every striation with their generators and signs.
    Rays {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// All N + 1 line-state bases as JSON, with an overlap report.
    Mub {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        net: NetArgs,
    },
    /// The squeezing circuit and its action on translations.
    Uomega {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Wigner function of a state.
    Wigner {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        net: NetArgs,
        /// State preset (ket_<bits>, bell_phi_plus, qec_logical_0, meanking_phi1, mixed, ...) or JSON file.
        #[arg(long)]
        state: Option<String>,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
        /// Print decimals even for exact grids.
        #[arg(long)]
        decimal: bool,
    },
    /// Bell-state grids; --all classifies every two-qubit net.
    Bell {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        net: NetArgs,
        #[arg(long)]
        state: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
        /// Also run the invariant suite.
        #[arg(long)]
        verify: bool,
    },
    /// Three-qubit phase code: encoded-state grids and the solution family.
    Qec {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        net: NetArgs,
        /// Logical amplitude of |0_L> as re,im.
        #[arg(long, default_value = "1,0")]
        alpha: String,
        /// Logical amplitude of |1_L> as re,im.
        #[arg(long, default_value = "0,0")]
        beta: String,
        /// List the parameter solutions and their covariance.
        #[arg(long)]
        family: bool,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
        #[arg(long)]
        verify: bool,
    },
    /// Mean king basis, its Wigner function and the retrodiction check.
    Meanking {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
        #[arg(long)]
        verify: bool,
    },
    /// Run the invariant suite for one size.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}
