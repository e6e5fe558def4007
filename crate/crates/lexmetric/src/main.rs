//! `lexmetric`: config ingestion, command dispatch and report emission for
//! the legal-games library. Exit codes: 0 success, 1 domain error, 2 usage
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lexmetric::config::{parse_config, Analysis, AnalysisConfig, LogBase};
use lexmetric::divergence::Variant;
use lexmetric::error::Error;
use lexmetric::report::{self, Rendered, COMMUNAL_CONFIG};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Human,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Directed,
    Plus,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogBaseArg {
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Parser)]
#[command(
    name = "lexmetric",
    about = "Distances, paths and deals over legal games",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config file; the bundled communal instance when omitted
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Report format (dot applies to `graph` only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Distance variant, overriding the config
    #[arg(long, global = true, value_enum)]
    variant: Option<VariantArg>,

    /// Log base for entropy/divergence reporting, overriding the config
    #[arg(long, global = true, value_enum)]
    log_base: Option<LogBaseArg>,

    /// Source regulation as a comma-separated member list ("{}" for empty)
    #[arg(long, global = true)]
    from: Option<String>,

    /// Target regulation as a comma-separated member list
    #[arg(long, global = true)]
    to: Option<String>,

    /// Number of paths to report
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Restrict `path` to one-rule-per-step paths
    #[arg(long, global = true)]
    incremental: bool,

    /// Signer threshold
    #[arg(long, global = true)]
    r: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the config, summarizing the instance
    Validate,
    /// Expected severity of each regulation (or of --from)
    Severity,
    /// Entropy of each regulation's breach distribution (or of --from)
    Entropy,
    /// KL social divergence between each player and the mean over --from
    Divergence,
    /// Premetric between --from and --to: both directions, D+ and Ds
    Distance,
    /// The full game-of-games edge table (or DOT with --format dot)
    Graph,
    /// Shortest path --from --to; all monotone paths with --incremental
    Path,
    /// Distance linear orders, Pareto deals and the closest Pareto deal
    Pareto,
    /// Minimum consensus radius and its witnesses
    Radius,
    /// Classify signer thresholds (--r or the configured ones)
    Signers,
    /// Reproduce the bundled communal analysis against published figures
    Reproduce,
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("usage error: {message}");
    ExitCode::from(2)
}

fn domain_error(error: &Error) -> ExitCode {
    eprintln!("error: {error}");
    ExitCode::from(1)
}

fn load(cli: &Cli) -> Result<(AnalysisConfig, Analysis), Error> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?,
        None => COMMUNAL_CONFIG.to_string(),
    };
    let config = parse_config(&text)?;
    let mut analysis = config.to_domain()?;
    if let Some(v) = cli.variant {
        analysis.variant = match v {
            VariantArg::Directed => Variant::Directed,
            VariantArg::Plus => Variant::Plus,
            VariantArg::Max => Variant::Max,
        };
    }
    if let Some(b) = cli.log_base {
        analysis.log_base = match b {
            LogBaseArg::E => LogBase::E,
            LogBaseArg::Two => LogBase::Two,
        };
    }
    Ok((config, analysis))
}

fn emit(rendered: Rendered, format: Format) -> ExitCode {
    match format {
        Format::Human => print!("{}", rendered.human),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&rendered.json).expect("json rendering")
        ),
        Format::Dot => match rendered.dot {
            Some(dot) => print!("{dot}"),
            None => return usage_error("--format dot is only available for `graph`"),
        },
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if matches!(cli.command, Command::Reproduce) {
        return match report::reproduce() {
            Ok(rendered) => emit(rendered, cli.format),
            Err(e) => domain_error(&e),
        };
    }

    let (config, analysis) = match load(&cli) {
        Ok(pair) => pair,
        Err(e) => return domain_error(&e),
    };
    let parse_set = |text: &Option<String>, flag: &str| -> Result<Option<u32>, ExitCode> {
        match text {
            None => Ok(None),
            Some(t) => match analysis.parse_set(t) {
                Ok(mask) => Ok(Some(mask)),
                Err(e) => Err(usage_error(&format!("{flag}: {e}"))),
            },
        }
    };
    let from = match parse_set(&cli.from, "--from") {
        Ok(v) => v,
        Err(code) => return code,
    };
    let to = match parse_set(&cli.to, "--to") {
        Ok(v) => v,
        Err(code) => return code,
    };
    let require = |value: Option<u32>, flag: &str| -> Result<u32, ExitCode> {
        value.ok_or_else(|| usage_error(&format!("{flag} is required for this command")))
    };

    let result = match cli.command {
        Command::Validate => report::validate(&analysis, &config),
        Command::Severity => report::severity(&analysis, from),
        Command::Entropy => report::entropy(&analysis, from),
        Command::Divergence => match require(from, "--from") {
            Ok(mask) => report::divergence(&analysis, mask),
            Err(code) => return code,
        },
        Command::Distance => match (require(from, "--from"), require(to, "--to")) {
            (Ok(f), Ok(t)) => report::distance(&analysis, f, t),
            (Err(code), _) | (_, Err(code)) => return code,
        },
        Command::Graph => report::graph(&analysis),
        Command::Path => match (require(from, "--from"), require(to, "--to")) {
            (Ok(f), Ok(t)) => {
                report::path(&analysis, f, t, cli.incremental, cli.k.unwrap_or(usize::MAX))
            }
            (Err(code), _) | (_, Err(code)) => return code,
        },
        Command::Pareto => report::pareto(&analysis),
        Command::Radius => report::radius(&analysis),
        Command::Signers => report::signers(&analysis, cli.r),
        Command::Reproduce => unreachable!("handled above"),
    };
    match result {
        Ok(rendered) => emit(rendered, cli.format),
        Err(e) => domain_error(&e),
    }
}
