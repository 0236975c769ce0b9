use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use leeyang::Normalization;
use leeyang_cli::{error_json, parse_model, run, RunConfig, Stage};

/// Lee–Yang zeros, IDS, gaps and gap labels for Ising chains with
/// dynamically defined couplings.
///
/// Fibonacci sizes count substitution steps: `--n 10` means the word
/// `u_10 = S^10(a)`, of length F_12 = 144.
#[derive(Parser, Debug)]
#[command(name = "leeyang", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Coefficient (and coupling) CSVs.
    Coeffs,
    /// Zeros on the unit circle.
    Zeros,
    /// Integrated density of states at every jump.
    Ids,
    /// Detected gaps with labels.
    Gaps,
    /// Gap labels matched against the model's label group, as JSON.
    Labels,
    /// Histogram of spacings between consecutive zeros.
    Hist,
    /// Sparsity of the Floquet matrix before and after the band permutation.
    Bandwidth,
    /// Identity and oracle checks; exits 1 unless all pass.
    Verify,
}

impl Command {
    fn stage(self) -> Stage {
        match self {
            Command::Coeffs => Stage::Coeffs,
            Command::Zeros => Stage::Zeros,
            Command::Ids => Stage::Ids,
            Command::Gaps => Stage::Gaps,
            Command::Labels => Stage::Labels,
            Command::Hist => Stage::Hist,
            Command::Bandwidth => Stage::Bandwidth,
            Command::Verify => Stage::Verify,
        }
    }
}

#[derive(Args, Debug)]
struct Opts {
    /// Model kind (fibonacci, cat-map, skew-shift, uamo) or a JSON description.
    #[arg(long, global = true)]
    model: Option<String>,
    /// JSON run configuration; other flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Model size: substitution steps for fibonacci, sequence length otherwise.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Quasi-momentum for `bandwidth`.
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Precision floor in bits for torus orbits.
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[arg(long, global = true, value_parser = ["paper", "operator"])]
    normalization: Option<String>,
    #[arg(long, global = true)]
    gap_mult: Option<f64>,
    #[arg(long, global = true)]
    m_max: Option<u32>,
    #[arg(long, global = true)]
    bins: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

fn build_config(opts: &Opts) -> Result<RunConfig> {
    let mut config = match &opts.config {
        Some(path) => RunConfig::from_json_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(arg) = &opts.model {
        config.model = Some(parse_model(arg, opts.n)?);
    } else if let (Some(n), Some(spec)) = (opts.n, config.model.take()) {
        config.model = Some(spec.with_size(n)?);
    }
    if opts.precision_bits.is_some() {
        config.model = config.model.map(|m| m.with_precision(opts.precision_bits));
    }
    if let Some(t) = opts.theta {
        config.theta = t;
    }
    if let Some(n) = &opts.normalization {
        config.normalization = if n == "operator" { Normalization::Operator } else { Normalization::Source };
    }
    if let Some(g) = opts.gap_mult {
        config.gap_multiplier = g;
    }
    if let Some(m) = opts.m_max {
        config.m_max = m;
    }
    if let Some(b) = opts.bins {
        config.bins = b;
    }
    if let Some(out) = &opts.out {
        config.out = out.clone();
    }
    if let Some(s) = opts.seed {
        config.seed = s;
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(&cli.opts).and_then(|config| run(cli.command.stage(), &config));
    match result {
        Ok(written) => {
            println!("{}", serde_json::to_string(&written).expect("paths serialize"));
            if written.all_passed == Some(false) {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("{}", error_json(&err));
            ExitCode::FAILURE
        }
    }
}
