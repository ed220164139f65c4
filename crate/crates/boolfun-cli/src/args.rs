use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "boolfun",
    version,
    about = "Spectral experiments on bounded functions over the Boolean hypercube"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the enumeration-vs-closed-form verification suites.
    Verify(VerifyArgs),
    /// Estimate how often a random restriction is close to a small junta.
    JuntaExp(JuntaArgs),
    /// Estimate surviving max-influence and variance under random restrictions.
    AaExp(AaArgs),
    /// Print degree, variance, influences, and spectrum of a function.
    Analyze(AnalyzeArgs),
    /// Fit a greedy influence-guided decision tree and print it with its error.
    Tree(TreeArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Transform,
    Restrict,
    Identities,
    Numeric,
    Partition,
    Nodes,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Limit the run to named suites; repeatable. Default: everything.
    #[arg(long, value_enum)]
    pub scope: Vec<Scope>,
    /// Corrupt one transform buffer to prove breaches are caught (test hook).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    /// Wins over the BOOLFUN_SEED environment variable; 0 when neither is set
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct JuntaArgs {
    /// Family spec such as `tribes:w=2,t=2`.
    #[arg(long)]
    pub family: String,
    /// Degree parameter; defaults to the family's declared degree.
    #[arg(long)]
    pub d: Option<usize>,
    /// Survival probability is log(d) / (survival_c * d).
    #[arg(long, default_value_t = 1.0)]
    pub survival_c: f64,
    /// Influence cutoff defining the candidate junta coordinates.
    #[arg(long, default_value_t = 1e-3)]
    pub theta: f64,
    /// Distance threshold counted as "is a junta".
    #[arg(long, default_value_t = 1e-2)]
    pub eps: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Wins over the BOOLFUN_SEED environment variable; 0 when neither is set
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    pub out: OutFormat,
    /// Worker threads; 0 uses the default pool.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Echo each sampled restriction to stderr.
    #[arg(long)]
    pub log_restrictions: bool,
}

#[derive(Args)]
pub struct AaArgs {
    /// Family spec such as `tribes:w=2,t=2`.
    #[arg(long)]
    pub family: String,
    /// Degree parameter; defaults to the family's declared degree.
    #[arg(long)]
    pub d: Option<usize>,
    /// Survival probability is log(d) / (survival_c * d).
    #[arg(long, default_value_t = 1.0)]
    pub survival_c: f64,
    /// Influence threshold; defaults to variance^2 / d^4.
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Wins over the BOOLFUN_SEED environment variable; 0 when neither is set
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    pub out: OutFormat,
    /// Worker threads; 0 uses the default pool.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Echo each sampled restriction to stderr.
    #[arg(long)]
    pub log_restrictions: bool,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Family spec to generate; exclusive with --input.
    #[arg(long)]
    pub family: Option<String>,
    /// File with one `truthtable ...` or `fourier ...` line; exclusive with --family.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Wins over the BOOLFUN_SEED environment variable; 0 when neither is set
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct TreeArgs {
    /// Family spec to generate; exclusive with --input.
    #[arg(long)]
    pub family: Option<String>,
    /// File with one `truthtable ...` or `fourier ...` line; exclusive with --family.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Wins over the BOOLFUN_SEED environment variable; 0 when neither is set
    #[arg(long)]
    pub seed: Option<u64>,
    /// Stop splitting once the branch variance is at or below this.
    #[arg(long, default_value_t = 1e-6)]
    pub var_threshold: f64,
    /// Maximum tree depth.
    #[arg(long, default_value_t = 8)]
    pub depth_budget: usize,
    /// Clamp leaf values into [0, 1].
    #[arg(long)]
    pub clamp: bool,
}

/// Command-line seed wins; otherwise BOOLFUN_SEED; otherwise 0.
pub fn resolve_seed(cli_seed: Option<u64>) -> anyhow::Result<u64> {
    if let Some(seed) = cli_seed {
        return Ok(seed);
    }
    match std::env::var("BOOLFUN_SEED") {
        Ok(raw) => raw
            .trim()
            .parse()
            .with_context(|| format!("BOOLFUN_SEED must be an unsigned integer, got {raw:?}")),
        Err(_) => Ok(0),
    }
}
