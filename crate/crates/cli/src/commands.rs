use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use belief_markov::classical_dtmc::DtmcModel;
use belief_markov::{
    bpa_series, forecast_with_steps, sweep_last_with_steps, transition_belief_matrix,
    DistanceVariant, Frame, ProbabilityVector, Proposition, TransitionBeliefMatrix,
};
use clap::{Args, Parser, Subcommand};

use crate::config::{parse_config, RunConfig};
use crate::error::CliError;
use crate::format::number;
use crate::series::{parse_series, SeriesFile};

#[derive(Debug, Parser)]
#[command(name = "bmc", version, about = "Belief Markov chain forecasting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mass function of every period.
    GenBpa(CommonArgs),
    /// Transition belief matrix.
    Fit(CommonArgs),
    /// Next-period masses, pignistic probabilities and predicted state.
    Predict {
        #[command(flatten)]
        common: CommonArgs,
        /// Forecast horizon in periods.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
    },
    /// Refit with the final observation replaced by each value of a grid.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Grid as `lo:hi:step`.
        #[arg(long)]
        vary_last: VaryLast,
        /// Forecast horizon in periods.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
    },
    /// Classical Markov chain over the configured bins.
    Dtmc {
        #[command(flatten)]
        common: CommonArgs,
        /// Forecast horizon in periods.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// State space configuration file.
    #[arg(long)]
    pub config: PathBuf,
    /// Observation series CSV with header `t,lo,hi`.
    #[arg(long)]
    pub series: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the configured distance variant.
    #[arg(long)]
    pub variant: Option<DistanceVariant>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaryLast {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl FromStr for VaryLast {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(format!("expected `lo:hi:step`, got `{s}`"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{t}` is not a finite number"))
        };
        Ok(Self {
            lo: num(lo)?,
            hi: num(hi)?,
            step: num(step)?,
        })
    }
}

/// What a successful command produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
}

/// Exit status and both streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load(common: &CommonArgs) -> Result<(RunConfig, SeriesFile), CliError> {
    let config = parse_config(&read(&common.config)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", common.config.display())))?;
    let config = match common.variant {
        Some(v) => config.with_variant(v),
        None => config,
    };
    let series = parse_series(&read(&common.series)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", common.series.display())))?;
    Ok((config, series))
}

fn csv_text(rows: Vec<Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn proposition_header(frame: &Frame, props: &[Proposition]) -> Vec<String> {
    props.iter().map(|&p| frame.display(p)).collect()
}

fn fallback_warnings(frame: &Frame, matrix: &TransitionBeliefMatrix<f64>) -> Vec<String> {
    matrix
        .fallback_rows()
        .iter()
        .map(|&i| {
            format!(
                "proposition {} carries no mass before the final period; its transition row is uniform",
                frame.display(matrix.propositions()[i])
            )
        })
        .collect()
}

fn dtmc_values(series: &SeriesFile) -> Vec<f64> {
    series
        .records
        .iter()
        .map(|r| r.interval.midpoint())
        .collect()
}

fn bins_of(config: &RunConfig) -> Result<&belief_markov::BinSpec<f64>, CliError> {
    config
        .bins
        .as_ref()
        .ok_or_else(|| CliError::Config("config has no `bins` directive; `dtmc` needs one".into()))
}

fn gen_bpa(config: &RunConfig, series: &SeriesFile) -> Result<Output, CliError> {
    let bpas = bpa_series(&series.intervals(), &config.space)?;
    let mut rows = vec![std::iter::once("t".to_string())
        .chain(proposition_header(config.frame(), bpas.propositions()))
        .collect()];
    for (record, masses) in series.records.iter().zip(bpas.rows()) {
        rows.push(
            std::iter::once(record.period.to_string())
                .chain(masses.iter().map(|&m| number(m)))
                .collect(),
        );
    }
    Ok(Output {
        text: csv_text(rows),
        warnings: Vec::new(),
    })
}

fn fit(config: &RunConfig, series: &SeriesFile) -> Result<Output, CliError> {
    let bpas = bpa_series(&series.intervals(), &config.space)?;
    let matrix = transition_belief_matrix(&bpas);
    let header = proposition_header(config.frame(), matrix.propositions());
    let mut rows = vec![std::iter::once("from".to_string())
        .chain(header.iter().cloned())
        .collect()];
    for (label, row) in header.iter().zip(matrix.rows()) {
        rows.push(
            std::iter::once(label.clone())
                .chain(row.iter().map(|&x| number(x)))
                .collect(),
        );
    }
    Ok(Output {
        text: csv_text(rows),
        warnings: fallback_warnings(config.frame(), &matrix),
    })
}

fn predict(config: &RunConfig, series: &SeriesFile, steps: u32) -> Result<Output, CliError> {
    let result = forecast_with_steps(&series.intervals(), &config.space, steps)?;
    let frame = config.frame();
    let mut rows = vec![vec!["section".into(), "key".into(), "value".into()]];
    for (&p, &m) in result
        .next_bpa
        .propositions()
        .iter()
        .zip(result.next_bpa.masses())
    {
        rows.push(vec!["bpa".into(), frame.display(p), number(m)]);
    }
    for (label, &p) in result.next_probs.iter() {
        rows.push(vec!["betp".into(), label.to_string(), number(p)]);
    }
    rows.push(vec![
        "predicted".into(),
        result.predicted.clone(),
        number(result.confidence),
    ]);
    Ok(Output {
        text: csv_text(rows),
        warnings: fallback_warnings(frame, &result.matrix),
    })
}

fn argmax(p: &ProbabilityVector<f64>) -> (String, f64) {
    let (label, value) = belief_markov::argmax_state(p);
    (label.to_string(), value)
}

fn sweep(
    config: &RunConfig,
    series: &SeriesFile,
    grid: VaryLast,
    steps: u32,
) -> Result<Output, CliError> {
    let points = sweep_last_with_steps(
        &series.intervals(),
        &config.space,
        grid.lo,
        grid.hi,
        grid.step,
        steps,
    )?;
    let frame = config.frame();
    let mut header: Vec<String> = vec!["value".into(), "predicted".into(), "confidence".into()];
    header.extend(frame.labels().iter().map(|l| format!("betp_{l}")));
    if config.bins.is_some() {
        header.extend(["dtmc_predicted".to_string(), "dtmc_confidence".to_string()]);
    }
    let mut rows = vec![header];
    let mut warnings = Vec::new();
    let base_values = dtmc_values(series);
    for point in &points {
        let mut row = vec![
            point.value.to_string(),
            point.result.predicted.clone(),
            number(point.result.confidence),
        ];
        row.extend(
            point
                .result
                .next_probs
                .probabilities()
                .iter()
                .map(|&p| number(p)),
        );
        if let Some(bins) = &config.bins {
            let mut values = base_values.clone();
            *values.last_mut().expect("series has records") = point.value;
            let baseline = DtmcModel::fit(&values, bins)?.forecast(steps)?;
            let (label, prob) = argmax(&baseline);
            row.extend([label, number(prob)]);
        }
        rows.push(row);
        for w in fallback_warnings(frame, &point.result.matrix) {
            warnings.push(format!("at {}: {w}", point.value));
        }
    }
    Ok(Output {
        text: csv_text(rows),
        warnings,
    })
}

fn dtmc(config: &RunConfig, series: &SeriesFile, steps: u32) -> Result<Output, CliError> {
    let bins = bins_of(config)?;
    let model = DtmcModel::fit(&dtmc_values(series), bins)?;
    let labels = bins.frame().labels();
    let mut rows = vec![vec![
        "section".into(),
        "from".into(),
        "to".into(),
        "value".into(),
    ]];
    for (record, &state) in series.records.iter().zip(&model.states) {
        rows.push(vec![
            "state".into(),
            record.period.to_string(),
            String::new(),
            labels[state].clone(),
        ]);
    }
    for (i, from) in labels.iter().enumerate() {
        for (j, to) in labels.iter().enumerate() {
            rows.push(vec![
                "count".into(),
                from.clone(),
                to.clone(),
                model.counts.get(i, j).to_string(),
            ]);
        }
    }
    for (i, from) in labels.iter().enumerate() {
        for (j, to) in labels.iter().enumerate() {
            rows.push(vec![
                "matrix".into(),
                from.clone(),
                to.clone(),
                number(*model.matrix.get(i, j)),
            ]);
        }
    }
    let next = model.forecast(steps)?;
    let current = labels[model.last_state()].clone();
    for (label, &p) in next.iter() {
        rows.push(vec![
            "next".into(),
            current.clone(),
            label.to_string(),
            number(p),
        ]);
    }
    let (label, prob) = argmax(&next);
    rows.push(vec!["predicted".into(), current, label, number(prob)]);
    let warnings = model
        .matrix
        .fallback_rows()
        .iter()
        .map(|&i| {
            format!(
                "state {} has no outgoing transitions; its row is uniform",
                labels[i]
            )
        })
        .collect();
    Ok(Output {
        text: csv_text(rows),
        warnings,
    })
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::GenBpa(c) | Command::Fit(c) => c,
            Command::Predict { common, .. }
            | Command::Sweep { common, .. }
            | Command::Dtmc { common, .. } => common,
        }
    }
}

/// Runs a parsed command. Nothing is written anywhere on failure.
pub fn execute(command: &Command) -> Result<Output, CliError> {
    let common = command.common();
    let (config, series) = load(common)?;
    let output = match command {
        Command::GenBpa(_) => gen_bpa(&config, &series)?,
        Command::Fit(_) => fit(&config, &series)?,
        Command::Predict { steps, .. } => predict(&config, &series, *steps)?,
        Command::Sweep {
            vary_last, steps, ..
        } => sweep(&config, &series, *vary_last, *steps)?,
        Command::Dtmc { steps, .. } => dtmc(&config, &series, *steps)?,
    };
    match &common.out {
        Some(path) => {
            fs::write(path, &output.text)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            Ok(Output {
                text: String::new(),
                warnings: output.warnings,
            })
        }
        None => Ok(output),
    }
}

fn one_line(message: &str) -> String {
    message.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses arguments, runs, and returns what should reach each stream.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Invocation {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered
                .lines()
                .find(|l| l.starts_with("error"))
                .map(one_line)
                .unwrap_or_else(|| "error: a subcommand is required; see `bmc --help`".into());
            return Invocation {
                code: 1,
                stdout: String::new(),
                stderr: format!("{first}\n"),
            };
        }
    };
    match execute(&cli.command) {
        Ok(output) => Invocation {
            code: 0,
            stdout: output.text,
            stderr: output
                .warnings
                .iter()
                .map(|w| format!("warning: {w}\n"))
                .collect(),
        },
        Err(e) => Invocation {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", one_line(&e.to_string())),
        },
    }
}
