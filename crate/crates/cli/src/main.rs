mod error;
mod input;
mod report;
mod svg;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depthscope::datasets::{brain_weight_data_with, brain_weight_raw, LogBase, Matrix2, Scenario, IDENTITY};
use depthscope::polytope::DEFAULT_CHUNK_WIDTH;
use depthscope::{DataSet, DepthError, DepthModel, Point, Violation};
use log::info;

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "depthscope",
    version,
    about = "Exact bivariate projection depth: depth values, medians and depth contours"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Depth and outlyingness of query points.
    Depth(DepthArgs),
    /// Maximal depth and the set attaining it.
    Median(MedianArgs),
    /// Depth regions at one or more levels.
    Contours(ContourArgs),
    /// Generate a named simulation scenario as CSV.
    Simulate(SimulateArgs),
    /// Export a builtin dataset as CSV.
    Dataset(DatasetArgs),
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Headerless two-column CSV.
    #[arg(long, conflicts_with = "dataset")]
    input: Option<PathBuf>,
    /// Builtin data: diamond, brain, or a scenario name.
    #[arg(long)]
    dataset: Option<String>,
    /// Accept collinear triples in --input data as long as every projection keeps a positive MAD.
    #[arg(long)]
    allow_collinear: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Sample size for generated scenarios.
    #[arg(long)]
    n: Option<usize>,
    /// Logarithm applied to the brain-weight table.
    #[arg(long, value_enum, default_value_t = Base::Ten)]
    log_base: Base,
    #[arg(long, default_value_t = DEFAULT_CHUNK_WIDTH)]
    chunk_width: usize,
    /// Size of a brute-force angular grid to audit exact values against; 0 turns it off.
    #[arg(long, default_value_t = 0)]
    oracle_grid: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    Ten,
    E,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> Self {
        match b {
            Base::Ten => LogBase::Ten,
            Base::E => LogBase::Natural,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DepthArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Query point as x,y; repeatable. Defaults to the sample itself.
    #[arg(long, allow_hyphen_values = true)]
    query: Vec<String>,
    /// CSV file of query points.
    #[arg(long)]
    queries: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MedianArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ContourArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Comma-separated depth levels in (0, 1].
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    /// Draw the depth contours of a normal population instead of a sample.
    #[arg(long)]
    population: bool,
    /// Population covariance as s11,s12,s21,s22.
    #[arg(long, value_delimiter = ',', num_args = 4, allow_hyphen_values = true)]
    sigma: Option<Vec<f64>>,
    /// Boundary points per population ellipse.
    #[arg(long, default_value_t = 256)]
    resolution: usize,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// example1, example2, triangle, square, normal or mixture.
    #[arg(long)]
    scenario: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    /// CSV destination; a `.provenance.json` sidecar is written next to it.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DatasetArgs {
    /// diamond, brain, or a scenario name.
    name: String,
    /// Untransformed body/brain weights (brain only).
    #[arg(long)]
    raw: bool,
    #[arg(long, value_enum, default_value_t = Base::Ten)]
    log_base: Base,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

pub const DIAMOND: [Point; 4] =
    [Point::new(1.0, 0.0), Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];

/// Where the sample came from, echoed in every report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Source {
    kind: &'static str,
    name: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn builtin(name: &str, seed: u64, n: Option<usize>, base: LogBase) -> CliResult<(DataSet, Option<u64>)> {
    match name.to_ascii_lowercase().as_str() {
        "diamond" => Ok((DataSet::new(DIAMOND.to_vec())?, None)),
        "brain" => Ok((brain_weight_data_with(base), None)),
        other => {
            let scenario: Scenario = other.parse().map_err(|_| {
                CliError::Usage(format!(
                    "unknown dataset '{name}' (expected diamond, brain, example1, example2, triangle, square, normal or mixture)"
                ))
            })?;
            Ok((scenario.generate(n, seed)?, Some(seed)))
        }
    }
}

fn load(args: &DataArgs) -> CliResult<(DataSet, Source)> {
    match (&args.input, &args.dataset) {
        (Some(path), None) => {
            let pts = input::read_points(path)?;
            let data = if args.allow_collinear { DataSet::with_positive_mad(pts) } else { DataSet::new(pts) };
            let data = data.map_err(|e| match e {
                DepthError::GeneralPosition(v @ Violation::Collinear { .. }) => CliError::Degenerate(format!(
                    "general position violated: {v} (--allow-collinear accepts this when every projection keeps a positive MAD)"
                )),
                e => e.into(),
            })?;
            let src = Source { kind: "file", name: path.display().to_string(), n: data.len(), seed: None };
            Ok((data, src))
        }
        (None, Some(name)) => {
            let (data, seed) = builtin(name, args.seed, args.n, args.log_base.into())?;
            let src = Source { kind: "builtin", name: name.to_ascii_lowercase(), n: data.len(), seed };
            Ok((data, src))
        }
        _ => Err(CliError::Usage("one of --input or --dataset is required".into())),
    }
}

fn fit(args: &DataArgs) -> CliResult<(DepthModel, Source)> {
    let (data, src) = load(args)?;
    let model = DepthModel::fit_with_chunk_width(data, args.chunk_width)?;
    info!("fitted {} observations, {} directions", src.n, model.directions().len());
    Ok((model, src))
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|err| CliError::Io { path: path.to_path_buf(), err }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|err| CliError::Io { path: "<stdout>".into(), err })
        }
    }
}

fn sigma_arg(values: Option<&[f64]>) -> CliResult<Matrix2> {
    match values {
        None => Ok(IDENTITY),
        Some([a, b, c, d]) => Ok([[*a, *b], [*c, *d]]),
        Some(v) => Err(CliError::Usage(format!("--sigma needs 4 values, got {}", v.len()))),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Depth(a) => {
            let (model, src) = fit(&a.data)?;
            let mut queries = a.query.iter().map(|s| input::parse_pair(s)).collect::<CliResult<Vec<_>>>()?;
            if let Some(path) = &a.queries {
                queries.extend(input::read_points(path)?);
            }
            if queries.is_empty() {
                queries = model.data().points().to_vec();
            }
            let text = report::depth(&model, src, &queries, a.data.oracle_grid, a.out.format)?;
            emit(&text, a.out.output.as_deref())
        }
        Command::Median(a) => {
            let (model, src) = fit(&a.data)?;
            let text = report::median(&model, src, a.data.oracle_grid, a.out.format)?;
            emit(&text, a.out.output.as_deref())
        }
        Command::Contours(a) => {
            let text = if a.population {
                let alphas = if a.alpha.is_empty() { (1..=9).map(|k| k as f64 / 10.0).collect() } else { a.alpha };
                let sigma = sigma_arg(a.sigma.as_deref())?;
                report::population(sigma, &alphas, a.resolution, a.out.format)?
            } else {
                let alphas = if a.alpha.is_empty() { depthscope::FIGURE_ALPHAS.to_vec() } else { a.alpha };
                let (model, src) = fit(&a.data)?;
                report::contours(&model, src, &alphas, a.data.oracle_grid, a.out.format)?
            };
            emit(&text, a.out.output.as_deref())
        }
        Command::Simulate(a) => {
            let scenario: Scenario =
                a.scenario.parse().map_err(|_| CliError::Usage(format!("unknown scenario '{}'", a.scenario)))?;
            let data = scenario.generate(a.n, a.seed)?;
            let provenance = report::provenance(scenario, data.len(), a.seed);
            let compact = serde_json::to_string(&provenance).expect("provenance serializes");
            let text = format!("# provenance {compact}\n{}", report::points_csv(data.points()));
            emit(&text, a.output.as_deref())?;
            if let Some(path) = &a.output {
                let mut side = path.clone().into_os_string();
                side.push(".provenance.json");
                let pretty = serde_json::to_string_pretty(&provenance).expect("provenance serializes") + "\n";
                emit(&pretty, Some(Path::new(&side)))?;
            }
            Ok(())
        }
        Command::Dataset(a) => {
            let pts = if a.raw {
                if !a.name.eq_ignore_ascii_case("brain") {
                    return Err(CliError::Usage("--raw only applies to the brain dataset".into()));
                }
                brain_weight_raw()
            } else {
                builtin(&a.name, a.seed, a.n, a.log_base.into())?.0.into_points()
            };
            emit(&report::points_csv(&pts), a.output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DEPTHSCOPE_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
