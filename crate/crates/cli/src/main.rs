use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codea::metrics::{normalized_hv, normalized_hv_from_bounds, DEFAULT_MC_SAMPLES};
use codea::{AlgoConfig, InnerAngleOrder, Layer, ProblemDef, RankingVariant, ReferenceSet};
use codea_cli::config::ExperimentSpec;
use codea_cli::persist::{read_objectives_csv, RunRecord};
use codea_cli::{plotdata, resolve_output_dir, runner, CliError};

#[derive(Parser)]
#[command(
    name = "codea",
    version,
    about = "Many-objective optimization with collaborative decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one optimization and write its record and final population
    Run(RunArgs),
    /// Run every cell of an experiment file and summarize the results
    Experiment(ExperimentArgs),
    /// Score an objectives CSV with a problem's hypervolume protocol
    Hv(HvArgs),
    /// Print the reference point set used for an objective count
    Refpoints(RefpointsArgs),
    /// Convert an objectives CSV into plot-ready columns
    Plotdata(PlotdataArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Problem id: dtlz1..dtlz4, cdtlz1..cdtlz4 or wfg1..wfg9
    #[arg(long)]
    problem: String,
    /// Number of objectives (3, 5, 8, 10 or 15)
    #[arg(long)]
    m: usize,
    /// Ranking variant: codea, codea-star, codea-pbi or codea-nbi
    #[arg(long, default_value_t = RankingVariant::Cod)]
    variant: RankingVariant,
    /// Number of generations
    #[arg(long)]
    gens: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Center-angle ordering inside inner-layer niches: min or max
    #[arg(long, default_value_t = InnerAngleOrder::Max)]
    inner_angle_order: InnerAngleOrder,
    /// Record hypervolume every N generations; 0 disables (default: gens/50)
    #[arg(long)]
    hv_every: Option<usize>,
    /// Output directory (default: $CODEA_OUT, then ./results)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment TOML file
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the experiment file and $CODEA_OUT)
    #[arg(long)]
    out: Option<String>,
    /// Worker threads for the run pool (default: one per CPU)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct HvArgs {
    /// Objectives CSV (header f_1..f_m)
    #[arg(long, alias = "in")]
    input: PathBuf,
    /// Problem id providing the normalization bounds
    #[arg(long)]
    problem: String,
    /// Number of objectives
    #[arg(long)]
    m: usize,
    /// Monte Carlo sample count for m > 3
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct RefpointsArgs {
    /// Number of objectives (3, 5, 8, 10 or 15)
    #[arg(long)]
    m: usize,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PlotdataArgs {
    /// Objectives CSV (header f_1..f_m)
    #[arg(long, alias = "in")]
    input: PathBuf,
    /// Cross-check the number of objectives in the file
    #[arg(long)]
    m: Option<usize>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: &Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Hv(args) => cmd_hv(args),
        Command::Refpoints(args) => cmd_refpoints(args),
        Command::Plotdata(args) => cmd_plotdata(args),
    }
}

fn cmd_run(args: &RunArgs) -> Result<ExitCode, CliError> {
    let def = ProblemDef::by_id(&args.problem, args.m)?;
    let mut config = AlgoConfig::for_problem(&def, args.gens, args.seed);
    config.variant = args.variant;
    config.inner_angle_order = args.inner_angle_order;
    config.hv_every = match args.hv_every {
        Some(0) => None,
        Some(every) => Some(every),
        None => Some((args.gens / 50).max(1)),
    };
    let result = codea::run(&def, &config)?;
    let hv = normalized_hv(&result.final_population, &def)?;
    let objectives: Vec<Vec<f64>> = result
        .final_population
        .iter()
        .map(|ind| ind.objectives.clone())
        .collect();
    let record = RunRecord::new(&args.problem, args.m, &result, hv);
    let dir = resolve_output_dir(args.out.as_deref(), None);
    let path = record.write(&dir, &objectives)?;
    println!(
        "{} m={} {} seed={}: hv {:.6} after {} evaluations ({:.2}s)",
        args.problem, args.m, config.variant, config.seed, hv, record.evaluations,
        record.elapsed_secs
    );
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<ExitCode, CliError> {
    let spec = ExperimentSpec::load(&args.config)?;
    let dir = resolve_output_dir(args.out.as_deref(), spec.output_dir.as_deref());
    eprintln!("running {} cells into {}", spec.num_cells(), dir.display());
    let report = runner::run_experiment(&spec, &dir, args.workers)?;
    print!("{}", report.summary_table);
    println!("summary: {}", report.summary_csv.display());
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "{} of {} cells failed; see {}",
            report.failures.len(),
            spec.num_cells(),
            dir.join("errors.log").display()
        );
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_hv(args: &HvArgs) -> Result<ExitCode, CliError> {
    let def = ProblemDef::by_id(&args.problem, args.m)?;
    let objectives = read_objectives_csv(&args.input)?;
    if objectives[0].len() != args.m {
        return Err(CliError::Config {
            path: args.input.display().to_string(),
            message: format!(
                "file has {} objectives, but --m {} was given",
                objectives[0].len(),
                args.m
            ),
        });
    }
    let (ideal, nadir) = def.known_hv_bounds();
    let samples = args.samples.unwrap_or(DEFAULT_MC_SAMPLES);
    let hv = normalized_hv_from_bounds(&objectives, ideal, nadir, samples)?;
    println!("{hv:.16e}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_refpoints(args: &RefpointsArgs) -> Result<ExitCode, CliError> {
    let refset = ReferenceSet::for_objectives(args.m)?;
    let mut out = String::new();
    for j in 1..=args.m {
        if j > 1 {
            out.push(',');
        }
        let _ = write!(out, "w_{j}");
    }
    out.push_str(",layer,r\n");
    for point in &refset.points {
        for w in &point.w {
            let _ = write!(out, "{w:.16e},");
        }
        let (layer, r) = match point.layer {
            Layer::Boundary => (
                "boundary",
                format!("{:.16e}", point.r.expect("boundary points carry r")),
            ),
            Layer::Inner => ("inner", String::new()),
        };
        let _ = writeln!(out, "{layer},{r}");
    }
    emit(&out, args.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_plotdata(args: &PlotdataArgs) -> Result<ExitCode, CliError> {
    let csv = plotdata::convert(&args.input, args.m)?;
    emit(&csv, args.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn emit(text: &str, output: Option<&std::path::Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
