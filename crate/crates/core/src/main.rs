use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use silence_core::cli::{self, parse_threshold, Command, DataSource, RunConfig};
use silence_core::{ColumnConfig, Error, SigmaSource, SurrogateParams};

/// Low-variability periods and the silence-breaking probability p(n).
#[derive(Debug, Parser)]
#[command(name = "silence", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Knot table, silence curve and summary for a price CSV.
    Analyze(Opts),
    /// One summary row per threshold (repeat --delta).
    Sweep(Opts),
    /// Analyze a synthetic power-law interval set.
    Surrogate(Opts),
    /// Fit the scaling exponent of R(n).
    Fit(Opts),
    /// Silence-breaking probability at chosen lengths (--n) or the whole curve.
    Probability(Opts),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SigmaArg {
    Signal,
    Returns,
}

#[derive(Debug, Args)]
struct Opts {
    /// Price CSV with a header row.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "date")]
    date_col: String,
    #[arg(long, default_value = "close")]
    close_col: String,
    /// Sliding window width in trading days.
    #[arg(long, default_value_t = 1)]
    window: usize,
    /// Threshold in units of sigma, e.g. 2 or 3/4. Repeatable for sweep.
    #[arg(long = "delta", value_parser = parse_threshold)]
    deltas: Vec<f64>,
    /// Scale used to normalize thresholds.
    #[arg(long, value_enum, default_value = "signal")]
    sigma_source: SigmaArg,
    /// Report p(n) up to this fraction of the longest period.
    #[arg(long, default_value_t = 0.25)]
    cutoff_fraction: f64,
    #[arg(long)]
    fit_min: Option<u64>,
    #[arg(long)]
    fit_max: Option<u64>,
    /// Smallest n included in the plateau estimate.
    #[arg(long, default_value_t = 20)]
    plateau_lower: u64,
    #[arg(long, default_value_t = 1000)]
    surrogate_count: u64,
    #[arg(long)]
    surrogate_alpha: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lengths at which to report p(n) (probability only). Repeatable.
    #[arg(long = "n")]
    query: Vec<u64>,
    /// Worker threads for sweep.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

fn into_config(command: Command, o: Opts) -> Result<RunConfig, Error> {
    let source = match (command, o.input, o.surrogate_alpha) {
        (Command::Surrogate, _, Some(alpha)) | (_, None, Some(alpha)) => {
            DataSource::Surrogate(SurrogateParams::new(o.surrogate_count, alpha, o.seed)?)
        }
        (_, Some(path), _) => DataSource::Csv {
            path,
            columns: ColumnConfig {
                date: o.date_col,
                close: o.close_col,
            },
        },
        (_, None, None) => {
            return Err(Error::InvalidParameter(
                "give --input or --surrogate-alpha".into(),
            ))
        }
    };
    let mut config = RunConfig::new(command, source, o.out_dir);
    config.window = o.window;
    if !o.deltas.is_empty() {
        config.deltas = o.deltas;
    }
    config.sigma_source = match o.sigma_source {
        SigmaArg::Signal => SigmaSource::Signal,
        SigmaArg::Returns => SigmaSource::Returns,
    };
    config.cutoff_fraction = o.cutoff_fraction;
    config.fit_min = o.fit_min;
    config.fit_max = o.fit_max;
    config.plateau_lower = o.plateau_lower;
    config.query = o.query;
    config.jobs = o.jobs;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, opts) = match cli.command {
        Sub::Analyze(o) => (Command::Analyze, o),
        Sub::Sweep(o) => (Command::Sweep, o),
        Sub::Surrogate(o) => (Command::Surrogate, o),
        Sub::Fit(o) => (Command::Fit, o),
        Sub::Probability(o) => (Command::Probability, o),
    };

    let result = into_config(command, opts).and_then(|config| cli::run(&config));
    match result {
        Ok(report) => {
            for f in &report.files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("silence {command}: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
