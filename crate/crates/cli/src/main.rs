use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zenga::gof::{self, GofTestResult};
use zenga::power::{self, PowerEntry, PowerStudyFile};
use zenga::{empirical, ingest, DistributionSpec, RngStream, Sample};

mod error;

use error::{CliError, CliResult};

/// Zenga inequality curve and Pareto goodness-of-fit tools.
#[derive(Debug, Parser)]
#[command(name = "zenga", version)]
struct Cli {
    /// Maximum worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate the inequality curve of a data set.
    Lambda(LambdaArgs),
    /// Bootstrap goodness-of-fit test of the Pareto hypothesis.
    Test(TestArgs),
    /// Draw a sample from a distribution.
    Sample(SampleArgs),
    /// Run a Monte Carlo size/power study.
    Power(PowerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Data file, one value per line (`#` starts a comment). Reads stdin when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,

    /// Read this named column of a CSV file instead.
    #[arg(long)]
    csv_column: Option<String>,
}

impl InputArgs {
    fn load(&self) -> CliResult<Sample> {
        Ok(match &self.input {
            Some(path) => ingest::read_path(path, self.csv_column.as_deref())?,
            None => {
                let stdin = io::stdin().lock();
                match &self.csv_column {
                    Some(column) => ingest::read_csv_column(stdin, "<stdin>", column)?,
                    None => ingest::read_values(stdin, "<stdin>")?,
                }
            }
        })
    }
}

#[derive(Debug, Args)]
struct LambdaArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Output file (default: stdout).
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Add a constant reference column 1/ALPHA.
    #[arg(long, value_name = "ALPHA")]
    reference: Option<f64>,
}

#[derive(Debug, Args)]
struct TestArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Bootstrap replicate count M.
    #[arg(long, short = 'M', default_value_t = 500)]
    bootstrap: usize,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Test level; repeat for several.
    #[arg(long = "level", default_values_t = vec![0.05])]
    levels: Vec<f64>,

    /// Also write the bootstrap slopes as a one-column CSV.
    #[arg(long, value_name = "FILE")]
    replicates: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Distribution: pareto:ALPHA[:X0], lognormal:SIGMA, exp, gamma:SHAPE, logweibull:THETA.
    distribution: String,

    /// Number of values.
    #[arg(long, short)]
    n: usize,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PowerArgs {
    /// Study description (TOML).
    #[arg(long, short)]
    config: PathBuf,

    /// Output stem: writes STEM.csv and STEM.json. Without it the table goes
    /// to stdout in `--format`.
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Report each finished cell on stderr.
    #[arg(long)]
    progress: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Lambda(args) => cmd_lambda(&args),
        Command::Test(args) => cmd_test(&args),
        Command::Sample(args) => cmd_sample(&args),
        Command::Power(args) => cmd_power(&args),
    }
}

fn write_output(path: Option<&Path>, contents: &[u8]) -> CliResult<()> {
    match path {
        Some(path) => fs::write(path, contents).map_err(|e| CliError::io(path, e)),
        None => io::stdout().write_all(contents).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[derive(Serialize)]
struct CurvePoint {
    p: f64,
    lambda_hat: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<f64>,
}

#[derive(Serialize)]
struct CurveReport {
    n: usize,
    m: usize,
    points: Vec<CurvePoint>,
}

fn cmd_lambda(args: &LambdaArgs) -> CliResult<()> {
    let reference = args
        .reference
        .map(zenga::distributions::pareto_lambda_theoretical)
        .transpose()?;
    let sample = args.input.load()?;
    let curve = empirical::lambda_curve(&sample)?;
    let bytes = match args.format {
        Format::Csv => {
            let mut out = String::from(if reference.is_some() { "p,lambda_hat,reference\n" } else { "p,lambda_hat\n" });
            for (p, l) in curve.points() {
                match reference {
                    Some(r) => out.push_str(&format!("{p},{l},{r}\n")),
                    None => out.push_str(&format!("{p},{l}\n")),
                }
            }
            out.into_bytes()
        }
        Format::Json => json_bytes(&CurveReport {
            n: curve.n(),
            m: curve.m(),
            points: curve
                .points()
                .map(|(p, lambda_hat)| CurvePoint { p, lambda_hat, reference })
                .collect(),
        })?,
    };
    write_output(args.output.as_deref(), &bytes)
}

fn test_csv(result: &GofTestResult) -> Vec<u8> {
    let mut header = vec!["n", "m", "alpha_hat", "beta0_hat", "beta1_observed", "M", "p_value", "seed"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    let mut row = vec![
        result.n.to_string(),
        result.m.to_string(),
        result.alpha_hat.to_string(),
        result.beta0_hat.to_string(),
        result.beta1_observed.to_string(),
        result.bootstrap_size.to_string(),
        result.p_value.to_string(),
        result.seed.to_string(),
    ];
    for d in &result.reject_at {
        header.push(format!("reject_{}", d.level));
        row.push(d.reject.to_string());
    }
    format!("{}\n{}\n", header.join(","), row.join(",")).into_bytes()
}

fn cmd_test(args: &TestArgs) -> CliResult<()> {
    let sample = args.input.load()?;
    let result = gof::bootstrap_test(&sample, args.bootstrap, &RngStream::from_seed(args.seed), &args.levels)?;
    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    if let Some(path) = &args.replicates {
        let mut out = String::from("beta1_star\n");
        for b in &result.replicates {
            out.push_str(&format!("{b}\n"));
        }
        write_output(Some(path), out.as_bytes())?;
    }
    let bytes = match args.format {
        Format::Json => json_bytes(&result)?,
        Format::Csv => test_csv(&result),
    };
    write_output(args.output.as_deref(), &bytes)
}

fn cmd_sample(args: &SampleArgs) -> CliResult<()> {
    let spec: DistributionSpec = args.distribution.parse()?;
    if args.n == 0 {
        return Err(zenga::Error::SampleSize { n: 0, min: 1 }.into());
    }
    // Draw order, not sorted; reading the file back gives the same sample as
    // `spec.sample(n, &RngStream::from_seed(seed))`.
    let mut values = vec![0.0; args.n];
    spec.fill(&mut RngStream::from_seed(args.seed).generator(), &mut values);
    let mut out = String::with_capacity(values.len() * 20);
    for v in values {
        out.push_str(&format!("{v}\n"));
    }
    write_output(args.output.as_deref(), out.as_bytes())
}

fn cmd_power(args: &PowerArgs) -> CliResult<()> {
    let text = fs::read_to_string(&args.config).map_err(|e| CliError::io(&args.config, e))?;
    let file: PowerStudyFile = toml::from_str(&text).map_err(|e| CliError::Config {
        path: args.config.clone(),
        reason: e.to_string(),
    })?;
    let config = file.into_config().map_err(|e| CliError::Config {
        path: args.config.clone(),
        reason: e.to_string(),
    })?;

    let started = Instant::now();
    let report = |entry: &PowerEntry| {
        eprintln!(
            "cell {} n={} done: {} (se {:.4}, {} errors)",
            entry.label, entry.n, entry.proportion, entry.mc_se, entry.errors
        );
    };
    let progress: Option<&(dyn Fn(&PowerEntry) + Sync)> = if args.progress { Some(&report) } else { None };
    let table = power::power_table(&config, progress)?;

    let mut csv = Vec::new();
    table.write_csv(&mut csv)?;
    let json = json_bytes(&table)?;
    match &args.output {
        Some(stem) => {
            write_output(Some(&stem.with_extension("csv")), &csv)?;
            write_output(Some(&stem.with_extension("json")), &json)?;
        }
        None => write_output(None, if args.format == Format::Csv { &csv } else { &json })?,
    }
    eprintln!(
        "{} cells in {:.2} s",
        table.cells.len(),
        started.elapsed().as_secs_f64()
    );
    Ok(())
}
