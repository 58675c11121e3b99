//! Command-line surface.

use std::path::PathBuf;

use advrisk::{MatchingMode, Metric, Strategy};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "advrisk", version, about = "Optimal adversarial risk for balanced binary classification")]
pub struct Cli {
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, env = "ADVRISK_JOBS", default_value_t = 0)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact D_ε and optimal risk between two finite samples.
    Exact(ExactArgs),
    /// Closed-form D_ε, risk and classifier for parametric class pairs.
    Analytic(AnalyticArgs),
    /// Lower bound on the optimal risk of two Gaussian mixtures.
    Mixture(MixtureArgs),
    /// W_p distance and the risk lower bound it implies.
    Wp(WpArgs),
    /// Risk bounds for continuous losses.
    Lossbounds(LossArgs),
    /// Adversarial risk of a given interval classifier.
    Riskof(RiskofArgs),
    /// Cross-check every solver against the brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct EpsArgs {
    /// Budget, or a comma-separated list of budgets.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "eps_sweep", required_unless_present = "eps_sweep")]
    pub eps: Option<String>,

    /// Inclusive linear sweep `start:stop:steps`.
    #[arg(long, value_name = "START:STOP:STEPS")]
    pub eps_sweep: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// Two classes, from two feature-only files or from one labeled dataset.
#[derive(Debug, Args)]
pub struct DataArgs {
    /// Feature-only file holding class A (one point per row).
    #[arg(long, requires = "class_b", conflicts_with_all = ["data", "idx_images"])]
    pub class_a: Option<PathBuf>,

    #[arg(long, requires = "class_a")]
    pub class_b: Option<PathBuf>,

    /// Labeled delimited file.
    #[arg(long, requires = "classes", conflicts_with = "idx_images")]
    pub data: Option<PathBuf>,

    /// IDX image file (labels from --idx-labels).
    #[arg(long, requires_all = ["idx_labels", "classes"])]
    pub idx_images: Option<PathBuf>,

    #[arg(long)]
    pub idx_labels: Option<PathBuf>,

    /// The two labels to compare, `A,B`.
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub classes: Option<String>,

    /// Zero-based label column of --data.
    #[arg(long, default_value_t = 0)]
    pub label_column: usize,

    /// Skip the first row of delimited inputs.
    #[arg(long)]
    pub header: bool,

    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    /// Keep this many points per class, chosen by a seeded shuffle.
    #[arg(long)]
    pub n_per_class: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[command(flatten)]
    pub eps: EpsArgs,

    #[arg(long, default_value_t = Metric::Euclidean)]
    pub metric: Metric,

    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,

    /// Attach couplings and witnesses (JSON output only).
    #[arg(long)]
    pub certificates: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Flow,
    Matching,
    Line,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Flow => Strategy::Flow,
            StrategyArg::Matching => Strategy::Matching,
            StrategyArg::Line => Strategy::Line,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub eps: EpsArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// N(mu0, σ²) vs N(mu1, σ²).
    GaussianEqualVar {
        #[arg(long, allow_hyphen_values = true)]
        mu0: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long)]
        sigma: f64,
        #[command(flatten)]
        common: Common,
    },
    /// N(mu0, σ²I) vs N(mu1, σ²I); means as comma-separated coordinates.
    GaussianIso {
        #[arg(long, allow_hyphen_values = true)]
        mu0: String,
        #[arg(long, allow_hyphen_values = true)]
        mu1: String,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = Metric::Euclidean)]
        metric: Metric,
        #[command(flatten)]
        common: Common,
    },
    /// N(0, σ0²) vs N(0, σ1²).
    GaussianSameMean {
        #[arg(long)]
        sigma0: f64,
        #[arg(long)]
        sigma1: f64,
        #[command(flatten)]
        common: Common,
    },
    /// N(mu0, σ0²) vs N(mu1, σ1²).
    GaussianGeneral {
        #[arg(long, allow_hyphen_values = true)]
        mu0: f64,
        #[arg(long)]
        sigma0: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long)]
        sigma1: f64,
        #[command(flatten)]
        common: Common,
    },
    /// U[a0, b0] vs U[a1, b1].
    Uniform {
        #[arg(long, allow_hyphen_values = true)]
        a0: f64,
        #[arg(long, allow_hyphen_values = true)]
        b0: f64,
        #[arg(long, allow_hyphen_values = true)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        b1: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Symmetric triangles with centers c0, c1 and halfwidths w0, w1.
    Triangular {
        #[arg(long, allow_hyphen_values = true)]
        c0: f64,
        #[arg(long)]
        w0: f64,
        #[arg(long, allow_hyphen_values = true)]
        c1: f64,
        #[arg(long)]
        w1: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct MixtureArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[command(flatten)]
    pub eps: EpsArgs,

    /// Component scales, comma-separated.
    #[arg(long, value_name = "SIGMA[,SIGMA...]", required_unless_present = "sigma_star")]
    pub sigma: Option<String>,

    /// Component scales as multiples of σ*, half the mean W1-matched
    /// distance between the classes.
    #[arg(long, value_name = "K[,K...]")]
    pub sigma_star: Option<String>,

    #[arg(long, default_value_t = Metric::Euclidean)]
    pub metric: Metric,

    #[arg(long, default_value_t = MatchingMode::Tight)]
    pub mode: MatchingMode,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WpArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[command(flatten)]
    pub eps: EpsArgs,

    #[arg(long, default_value_t = 1.0)]
    pub p: f64,

    #[arg(long, default_value_t = Metric::Euclidean)]
    pub metric: Metric,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LossArgs {
    /// Use the built-in quadratic-loss toy and report its exact risks.
    #[arg(long, conflicts_with_all = ["r0", "grad_exp", "lipschitz", "hessian_min_eig"])]
    pub toy: bool,

    /// Optimal risk without an adversary.
    #[arg(long, required_unless_present = "toy")]
    pub r0: Option<f64>,

    /// inf_w E||∇_x loss||_* (enables the convex lower bound).
    #[arg(long)]
    pub grad_exp: Option<f64>,

    /// Lipschitz constant in x at the clean optimum (enables the upper bound).
    #[arg(long)]
    pub lipschitz: Option<f64>,

    /// Smallest Hessian eigenvalue at the clean optimum (enables the
    /// deviation bound together with --lipschitz).
    #[arg(long)]
    pub hessian_min_eig: Option<f64>,

    #[command(flatten)]
    pub eps: EpsArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RiskofArgs {
    /// Class 0: `gaussian:MU,SIGMA`, `uniform:A,B`, `triangular:C,W` or
    /// `file:PATH` (one value per row).
    #[arg(long, allow_hyphen_values = true)]
    pub class0: String,

    #[arg(long, allow_hyphen_values = true)]
    pub class1: String,

    /// Region deciding class 1, as `lo..hi[,lo..hi...]` or `empty`.
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,

    #[command(flatten)]
    pub eps: EpsArgs,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Scale every random instance count by this factor.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,

    /// Directory of `NAME_a.csv` / `NAME_b.csv` sample pairs to check.
    #[arg(long)]
    pub corpus: Option<PathBuf>,

    /// Budgets for corpus checks.
    #[arg(long, default_value = "0:2:9")]
    pub corpus_eps: String,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
