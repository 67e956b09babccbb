//! Batch commands behind the `silence` binary.
//!
//! Each command reads a price CSV or draws a surrogate, runs the analysis and
//! writes its tables into the output directory in one atomic step.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::distribution::{
    build_cumulative, default_fit_range, fit_alpha, fit_exponential, CumulativeDistribution,
    ScalingFit,
};
use crate::error::{Error, Result};
use crate::ingest::{load_price_csv, to_log_prices, ColumnConfig};
use crate::output::{self, fmt_opt, OutputSet, Table};
use crate::silence::{
    plateau_estimate, silence_curve, silence_probability, SilenceCurve, DEFAULT_CUTOFF_FRACTION,
    DEFAULT_PLATEAU_LOWER,
};
use crate::surrogate::{generate_power_law_intervals, SurrogateParams, GENERATOR};
use crate::variability::{
    compute_variability_with, extract_intervals, IntervalSet, SigmaSource, VariabilityParams,
    VariabilitySignal,
};

pub const KNOTS_FILE: &str = "knots.tsv";
pub const SILENCE_FILE: &str = "silence.tsv";
pub const SUMMARY_FILE: &str = "summary.tsv";
pub const SWEEP_FILE: &str = "sweep.tsv";
pub const INTERVALS_FILE: &str = "intervals.tsv";
pub const FIT_FILE: &str = "fit.tsv";
pub const PROBABILITY_FILE: &str = "probability.tsv";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Sweep,
    Surrogate,
    Fit,
    Probability,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Csv {
        path: PathBuf,
        columns: ColumnConfig,
    },
    Surrogate(SurrogateParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub source: DataSource,
    pub window: usize,
    /// Thresholds in sigma units; exactly one except for `sweep`.
    pub deltas: Vec<f64>,
    pub sigma_source: SigmaSource,
    pub cutoff_fraction: f64,
    pub fit_min: Option<u64>,
    pub fit_max: Option<u64>,
    pub plateau_lower: u64,
    /// Lengths to report for `probability`; empty means the whole curve.
    pub query: Vec<u64>,
    /// Worker threads for `sweep`; `None` uses every core.
    pub jobs: Option<usize>,
    pub out_dir: PathBuf,
}

impl RunConfig {
    /// Defaults: `w = 1`, `delta = 2 sigma`, cutoff `N/4`, fit range `[2, N/4]`.
    pub fn new(command: Command, source: DataSource, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            command,
            source,
            window: 1,
            deltas: vec![2.0],
            sigma_source: SigmaSource::Signal,
            cutoff_fraction: DEFAULT_CUTOFF_FRACTION,
            fit_min: None,
            fit_max: None,
            plateau_lower: DEFAULT_PLATEAU_LOWER,
            query: Vec::new(),
            jobs: None,
            out_dir: out_dir.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.deltas.is_empty() {
            return Err(Error::InvalidParameter("no threshold given".into()));
        }
        if self.command != Command::Sweep && self.deltas.len() > 1 {
            return Err(Error::InvalidParameter(
                "several thresholds are only accepted by `sweep`".into(),
            ));
        }
        for &d in &self.deltas {
            VariabilityParams::new(self.window, d)?;
        }
        if !(self.cutoff_fraction > 0.0 && self.cutoff_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "cutoff fraction must lie in (0, 1], got {}",
                self.cutoff_fraction
            )));
        }
        if let (Some(lo), Some(hi)) = (self.fit_min, self.fit_max) {
            if lo >= hi {
                return Err(Error::InvalidParameter(format!(
                    "fit range [{lo}, {hi}] is empty"
                )));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidParameter("jobs must be at least 1".into()));
        }
        if self.query.contains(&0) {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        match (&self.command, &self.source) {
            (Command::Analyze | Command::Sweep, DataSource::Surrogate(_)) => Err(
                Error::InvalidParameter("this command needs an --input price file".into()),
            ),
            (Command::Surrogate, DataSource::Csv { .. }) => Err(Error::InvalidParameter(
                "surrogate needs --surrogate-alpha".into(),
            )),
            _ => Ok(()),
        }
    }

    fn fit_range(&self, dist: &CumulativeDistribution) -> (u64, u64) {
        let (lo, hi) = default_fit_range(dist);
        (self.fit_min.unwrap_or(lo), self.fit_max.unwrap_or(hi))
    }
}

/// Files written by a successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
}

/// 1 for bad input or parameters, 2 when the analysis itself fails.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_validation() {
        1
    } else {
        2
    }
}

pub fn run(config: &RunConfig) -> Result<RunReport> {
    match config.command {
        Command::Analyze => cmd_analyze(config),
        Command::Sweep => cmd_sweep(config),
        Command::Surrogate => cmd_surrogate(config),
        Command::Fit => cmd_fit(config),
        Command::Probability => cmd_probability(config),
    }
}

struct Prepared {
    meta: Vec<String>,
    signal: Option<VariabilitySignal>,
    intervals: IntervalSet,
}

fn sigma_source_name(s: SigmaSource) -> &'static str {
    match s {
        SigmaSource::Signal => "signal",
        SigmaSource::Returns => "returns",
    }
}

fn load_signal(
    config: &RunConfig,
    path: &Path,
    columns: &ColumnConfig,
) -> Result<(Vec<String>, VariabilitySignal)> {
    let series = load_price_csv(path, columns)?;
    let x = to_log_prices(&series);
    let signal = compute_variability_with(&x, config.window, config.sigma_source)?;
    let meta = vec![format!(
        "source=csv symbol={} observations={} first={} last={} window={} sigma_source={}",
        series.symbol(),
        series.len(),
        series.first_date(),
        series.last_date(),
        config.window,
        sigma_source_name(config.sigma_source),
    )];
    Ok((meta, signal))
}

fn surrogate_meta(p: &SurrogateParams) -> String {
    format!(
        "source=surrogate count={} alpha={} seed={} generator={}",
        p.count(),
        p.alpha(),
        p.seed(),
        GENERATOR
    )
}

fn prepare(config: &RunConfig) -> Result<Prepared> {
    config.validate()?;
    match &config.source {
        DataSource::Csv { path, columns } => {
            let (mut meta, signal) = load_signal(config, path, columns)?;
            let delta = config.deltas[0];
            let intervals = extract_intervals(&signal, delta)?;
            meta.push(format!(
                "delta_sigma={delta} sigma={} threshold={}",
                signal.sigma(),
                delta * signal.sigma()
            ));
            Ok(Prepared {
                meta,
                signal: Some(signal),
                intervals,
            })
        }
        DataSource::Surrogate(p) => Ok(Prepared {
            meta: vec![surrogate_meta(p)],
            signal: None,
            intervals: generate_power_law_intervals(p),
        }),
    }
}

struct Analysis {
    dist: CumulativeDistribution,
    fit_range: (u64, u64),
    fit: Option<ScalingFit>,
    curve: Option<SilenceCurve>,
    plateau: Option<f64>,
}

fn analyze(config: &RunConfig, intervals: &IntervalSet) -> Result<Analysis> {
    let dist = build_cumulative(intervals)?;
    let fit_range = config.fit_range(&dist);
    let fit = fit_alpha(&dist, fit_range.0, fit_range.1).ok();
    let curve = silence_curve(&dist, config.cutoff_fraction).ok();
    let plateau = curve
        .as_ref()
        .and_then(|c| plateau_estimate(c, config.plateau_lower).ok());
    Ok(Analysis {
        dist,
        fit_range,
        fit,
        curve,
        plateau,
    })
}

fn silence_output(curve: Option<&SilenceCurve>, meta: &[String]) -> String {
    match curve {
        Some(c) => output::silence_table(c, meta),
        None => {
            let mut t = Table::new();
            t.meta("silence-breaking probability p(n) on the smoothed distribution");
            for m in meta {
                t.meta(m);
            }
            t.meta("cutoff=0, no samples");
            t.row(["n", "p", "pn"]);
            t.into_string()
        }
    }
}

fn common_entries(
    config: &RunConfig,
    prepared: &Prepared,
    a: &Analysis,
) -> Vec<(&'static str, String)> {
    let sigma = prepared.signal.as_ref().map(|s| s.sigma());
    let delta = config.deltas[0];
    let mut e = Vec::new();
    if prepared.signal.is_some() {
        e.push(("window", config.window.to_string()));
        e.push(("delta_sigma", delta.to_string()));
        e.push(("sigma", fmt_opt(sigma)));
        e.push(("delta", fmt_opt(sigma.map(|s| s * delta))));
    }
    e.push(("intervals", a.dist.total().to_string()));
    e.push(("r1", a.dist.count_at(1).to_string()));
    e.push(("r10", a.dist.count_at(10).to_string()));
    e.push(("longest", a.dist.longest().to_string()));
    e.push(("fit_min", a.fit_range.0.to_string()));
    e.push(("fit_max", a.fit_range.1.to_string()));
    e.push(("alpha", fmt_opt(a.fit.map(|f| f.alpha))));
    e.push(("r0", fmt_opt(a.fit.map(|f| f.r0))));
    e.push(("fit_residual", fmt_opt(a.fit.map(|f| f.residual))));
    e.push((
        "cutoff",
        a.curve.as_ref().map_or(0, |c| c.cutoff()).to_string(),
    ));
    e.push(("plateau_lower", config.plateau_lower.to_string()));
    e.push(("plateau", fmt_opt(a.plateau)));
    e
}

/// Knot table, silence curve and summary for one price series.
pub fn cmd_analyze(config: &RunConfig) -> Result<RunReport> {
    let prepared = prepare(config)?;
    let a = analyze(config, &prepared.intervals)?;
    let entries = common_entries(config, &prepared, &a);

    let mut out = OutputSet::new();
    out.add(KNOTS_FILE, output::knot_table(&a.dist, &prepared.meta))
        .add(
            SILENCE_FILE,
            silence_output(a.curve.as_ref(), &prepared.meta),
        )
        .add(
            SUMMARY_FILE,
            output::summary_table("analysis summary", &prepared.meta, &entries),
        );
    Ok(RunReport {
        files: out.commit(&config.out_dir)?,
    })
}

/// One row of a threshold sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub delta_sigma: f64,
    pub r1: u64,
    pub r10: u64,
    pub longest: u64,
    pub alpha: Option<f64>,
    pub status: String,
}

fn sweep_cell(config: &RunConfig, signal: &VariabilitySignal, delta: f64) -> SweepRow {
    let failed = |status: String| SweepRow {
        delta_sigma: delta,
        r1: 0,
        r10: 0,
        longest: 0,
        alpha: None,
        status,
    };
    let intervals = match extract_intervals(signal, delta) {
        Ok(i) => i,
        Err(e) => return failed(e.to_string()),
    };
    let dist = match build_cumulative(&intervals) {
        Ok(d) => d,
        Err(e) => return failed(e.to_string()),
    };
    let (lo, hi) = config.fit_range(&dist);
    let (alpha, status) = match fit_alpha(&dist, lo, hi) {
        Ok(f) => (Some(f.alpha), "ok".to_owned()),
        Err(e) => (None, format!("fit: {e}")),
    };
    SweepRow {
        delta_sigma: delta,
        r1: dist.count_at(1),
        r10: dist.count_at(10),
        longest: dist.longest(),
        alpha,
        status,
    }
}

/// Computes one row per threshold, in the order given. Cells run on a pool of
/// `config.jobs` threads.
pub fn sweep_rows(config: &RunConfig, signal: &VariabilitySignal) -> Result<Vec<SweepRow>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        config
            .deltas
            .par_iter()
            .map(|&d| sweep_cell(config, signal, d))
            .collect()
    }))
}

/// `R(1)`, `R(10)`, `N` and the fitted exponent for each threshold.
pub fn cmd_sweep(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let DataSource::Csv { path, columns } = &config.source else {
        unreachable!("validated");
    };
    let (meta, signal) = load_signal(config, path, columns)?;
    let rows = sweep_rows(config, &signal)?;

    let mut t = Table::new();
    t.meta("threshold sweep");
    for m in &meta {
        t.meta(m);
    }
    t.meta(format!("sigma={}", signal.sigma()));
    t.row(["delta_sigma", "R1", "R10", "N", "alpha", "status"]);
    for r in &rows {
        t.row([
            r.delta_sigma.to_string(),
            r.r1.to_string(),
            r.r10.to_string(),
            r.longest.to_string(),
            fmt_opt(r.alpha),
            r.status.clone(),
        ]);
    }
    let mut out = OutputSet::new();
    out.add(SWEEP_FILE, t.into_string());
    Ok(RunReport {
        files: out.commit(&config.out_dir)?,
    })
}

/// Intervals, knots, silence curve and a plateau-versus-exponent summary for
/// a power-law surrogate.
pub fn cmd_surrogate(config: &RunConfig) -> Result<RunReport> {
    let prepared = prepare(config)?;
    let DataSource::Surrogate(params) = &config.source else {
        unreachable!("validated");
    };
    let a = analyze(config, &prepared.intervals)?;
    let curve = a.curve.clone().map(|c| c.with_reference(params.alpha()));

    let mut entries = vec![
        ("alpha_target", params.alpha().to_string()),
        ("count", params.count().to_string()),
        ("seed", params.seed().to_string()),
    ];
    entries.extend(common_entries(config, &prepared, &a));
    entries.push((
        "plateau_rel_error",
        fmt_opt(a.plateau.map(|p| (p - params.alpha()) / params.alpha())),
    ));

    let mut out = OutputSet::new();
    out.add(
        INTERVALS_FILE,
        output::interval_table(&prepared.intervals, &prepared.meta),
    )
    .add(KNOTS_FILE, output::knot_table(&a.dist, &prepared.meta))
    .add(SILENCE_FILE, silence_output(curve.as_ref(), &prepared.meta))
    .add(
        SUMMARY_FILE,
        output::summary_table("surrogate summary", &prepared.meta, &entries),
    );
    Ok(RunReport {
        files: out.commit(&config.out_dir)?,
    })
}

/// Power-law and exponential fits over the same knots.
pub fn cmd_fit(config: &RunConfig) -> Result<RunReport> {
    let prepared = prepare(config)?;
    let dist = build_cumulative(&prepared.intervals)?;
    let (lo, hi) = config.fit_range(&dist);
    let fit = fit_alpha(&dist, lo, hi)?;
    let exp = fit_exponential(&dist, lo, hi).ok();

    let entries = vec![
        ("intervals", dist.total().to_string()),
        ("longest", dist.longest().to_string()),
        ("fit_min", lo.to_string()),
        ("fit_max", hi.to_string()),
        ("knots_used", fit.knots_used.to_string()),
        ("alpha", fit.alpha.to_string()),
        ("r0", fit.r0.to_string()),
        ("residual", fit.residual.to_string()),
        ("exp_rate", fmt_opt(exp.map(|e| e.rate))),
        ("exp_residual", fmt_opt(exp.map(|e| e.residual))),
    ];
    let mut out = OutputSet::new();
    out.add(
        FIT_FILE,
        output::summary_table("scaling fit of R(n)", &prepared.meta, &entries),
    );
    Ok(RunReport {
        files: out.commit(&config.out_dir)?,
    })
}

/// `p(n)` for the requested lengths, or the whole curve up to the cutoff.
pub fn cmd_probability(config: &RunConfig) -> Result<RunReport> {
    let prepared = prepare(config)?;
    let dist = build_cumulative(&prepared.intervals)?;
    let contents = if config.query.is_empty() {
        let curve = silence_curve(&dist, config.cutoff_fraction)?;
        output::silence_table(&curve, &prepared.meta)
    } else {
        let mut t = Table::new();
        t.meta("silence-breaking probability p(n) on the smoothed distribution");
        for m in &prepared.meta {
            t.meta(m);
        }
        t.meta(format!("longest={}", dist.longest()));
        t.row(["n", "p", "pn"]);
        for &n in &config.query {
            let p = silence_probability(&dist, n)?;
            t.row([n.to_string(), p.to_string(), (p * n as f64).to_string()]);
        }
        t.into_string()
    };
    let mut out = OutputSet::new();
    out.add(PROBABILITY_FILE, contents);
    Ok(RunReport {
        files: out.commit(&config.out_dir)?,
    })
}

/// Parses a threshold such as `2`, `0.75` or `3/4`.
pub fn parse_threshold(s: &str) -> std::result::Result<f64, String> {
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad threshold `{s}`"))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad threshold `{s}`"))?;
            num / den
        }
        None => s
            .trim()
            .parse()
            .map_err(|_| format!("bad threshold `{s}`"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("threshold `{s}` must be positive"))
    }
}

impl std::fmt::Display for Command {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Command::Analyze => "analyze",
            Command::Sweep => "sweep",
            Command::Surrogate => "surrogate",
            Command::Fit => "fit",
            Command::Probability => "probability",
        })
    }
}
