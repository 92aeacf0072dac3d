//! Thin command-line front end over the library harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use glmsel::estimation::{fit, Dataset, SolverOptions};
use glmsel::family::FamilyModel;
use glmsel::harness::{
    run_asymptotics, run_experiment, write_asymptotics_csv, write_summary_json, write_table_csv,
    AsymptoticsConfig, ExperimentConfig, ModelPreset, ScenarioKind,
};

#[derive(Parser)]
#[command(
    name = "glmsel",
    about = "GLM best-subset selection studies and strong-convergence diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a replicated selection study and write one CSV row per criterion.
    Table1(Table1Args),
    /// Run trajectory/gap diagnostics and write per-rep CSV plus summary JSON.
    Asymptotics(AsymptoticsArgs),
    /// Fit one GLM on a CSV file (header `y,x1,...,xp`) and print the result.
    Fit(FitArgs),
}

#[derive(Args)]
struct Table1Args {
    /// Model preset: nbr | probit | dep-lm-mr2 | dep-lm-mr3.
    #[arg(long, default_value = "nbr")]
    model: String,
    /// Sample size per replication [default: 300].
    #[arg(long)]
    n: Option<usize>,
    /// Number of replications [default: 500].
    #[arg(long)]
    reps: Option<usize>,
    /// Criterion name (aic | bic | scc); repeat for several.
    #[arg(long = "criterion")]
    criteria: Vec<String>,
    /// Base seed (overridden by GLMSEL_SEED) [default: 42].
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = default pool).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Negative-binomial dispersion [default: 10].
    #[arg(long)]
    theta: Option<f64>,
    /// Flat key=value config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long, default_value = "rows.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct AsymptoticsArgs {
    /// Scenario: gaussian-iid | gaussian-ar1 | gaussian-ma2.
    #[arg(long, default_value = "gaussian-iid")]
    scenario: String,
    /// Comma-separated increasing sample-size grid.
    #[arg(long, default_value = "200,500,1000,2000,5000")]
    grid: String,
    #[arg(long, default_value_t = 50)]
    reps: usize,
    /// Base seed (overridden by GLMSEL_SEED).
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker threads (0 = default pool).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Per-replication rows CSV path.
    #[arg(long, default_value = "asymptotics.csv")]
    out_csv: PathBuf,
    /// Summary JSON path.
    #[arg(long, default_value = "asymptotics_summary.json")]
    out_json: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    /// Family tag: gaussian | logit | probit | poisson | negbin.
    #[arg(long)]
    family: String,
    /// Negative-binomial dispersion (required for negbin).
    #[arg(long)]
    theta: Option<f64>,
    /// CSV data file with header row `y,x1,...,xp`.
    #[arg(long)]
    data: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table1(args) => cmd_table1(args),
        Command::Asymptotics(args) => cmd_asymptotics(args),
        Command::Fit(args) => cmd_fit(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_table1(args: Table1Args) -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => {
            let model = ModelPreset::from_tag(&args.model, args.theta.or(Some(10.0)))?;
            ExperimentConfig::preset(
                model,
                args.n.unwrap_or(300),
                args.reps.unwrap_or(500),
                args.seed.unwrap_or(42),
            )?
        }
    };
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(reps) = args.reps {
        cfg.reps = reps;
    }
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    if let Some(theta) = args.theta {
        cfg.theta = theta;
    }
    cfg.workers = args.workers;
    if !args.criteria.is_empty() {
        cfg.criteria = args
            .criteria
            .iter()
            .map(|name| glmsel::harness::criterion_for_model(&cfg.model, name))
            .collect::<glmsel::Result<_>>()?;
    }
    cfg.apply_env_seed()?;

    let report = run_experiment(&cfg)?;
    write_table_csv(&report.rows, &args.out)?;
    for row in &report.rows {
        println!(
            "{} {} n={}: correct={:.4} overfit={:.4} underfit={:.4} mse={:.4}",
            row.model,
            row.method,
            row.sample_size,
            row.correct_rate,
            row.overfit_rate,
            row.underfit_rate,
            row.mse
        );
    }
    if report.nonconverged_fits > 0 {
        eprintln!(
            "note: {} candidate fits did not converge across {} reps (scored +inf)",
            report.nonconverged_fits, report.reps
        );
    }
    println!("wrote {}", args.out.display());
    Ok(())
}

fn cmd_asymptotics(args: AsymptoticsArgs) -> Result<(), Box<dyn std::error::Error>> {
    let grid: Result<Vec<usize>, _> = args
        .grid
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect();
    let grid = grid.map_err(|_| glmsel::Error::InvalidConfig(format!("bad grid '{}'", args.grid)))?;
    let mut base_seed = args.seed;
    if let Ok(raw) = std::env::var(glmsel::harness::SEED_ENV_VAR) {
        base_seed = raw.parse().map_err(|_| {
            glmsel::Error::InvalidConfig(format!("GLMSEL_SEED must be a u64, got '{raw}'"))
        })?;
    }
    let cfg = AsymptoticsConfig {
        scenario: ScenarioKind::from_tag(&args.scenario)?,
        grid,
        reps: args.reps,
        base_seed,
        workers: args.workers,
    };
    let report = run_asymptotics(&cfg)?;
    write_asymptotics_csv(&report.rows, &args.out_csv)?;
    write_summary_json(&report.summary, &args.out_json)?;
    let s = &report.summary;
    println!(
        "{}: boundedness {:.3} (>=0.95: {}), median ratio {:.3} (> {}: {}), \
         gap-correct {:.3}, gap-wrong-negative {:.3}",
        s.scenario,
        s.boundedness_pass_rate,
        s.boundedness_ok,
        s.median_ratio_at_max_n,
        s.median_floor,
        s.floor_ok,
        s.gap_correct_pass_rate,
        s.gap_wrong_negative_rate
    );
    println!("wrote {} and {}", args.out_csv.display(), args.out_json.display());
    Ok(())
}

fn cmd_fit(args: FitArgs) -> Result<(), Box<dyn std::error::Error>> {
    let fam = FamilyModel::from_tag(&args.family, args.theta)?;
    let (ds, names) = read_csv_dataset(&args.data)?;
    let result = fit(&ds, &fam, &SolverOptions::default())?;
    println!(
        "family={} n={} p={} converged={} iterations={} separation={}",
        fam.name(),
        ds.n(),
        ds.p(),
        result.converged,
        result.iterations,
        result.separation_flag
    );
    println!("loglik={:.6} score_sup_norm={:.3e}", result.loglik, result.score_norm);
    for (name, b) in names.iter().zip(&result.beta_hat) {
        println!("{name} = {b:.6}");
    }
    Ok(())
}

fn read_csv_dataset(path: &PathBuf) -> Result<(Dataset, Vec<String>), Box<dyn std::error::Error>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let headers = reader.headers()?.clone();
    if headers.is_empty() || headers.get(0) != Some("y") {
        return Err(format!(
            "{}: first CSV column must be named 'y', got {:?}",
            path.display(),
            headers.get(0)
        )
        .into());
    }
    let names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let p = names.len();
    if p == 0 {
        return Err(format!("{}: no covariate columns after 'y'", path.display()).into());
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != p + 1 {
            return Err(format!(
                "{}: row {} has {} fields, expected {}",
                path.display(),
                i + 2,
                record.len(),
                p + 1
            )
            .into());
        }
        let parse = |s: &str| -> Result<f64, Box<dyn std::error::Error>> {
            Ok(s.parse::<f64>()
                .map_err(|_| format!("{}: row {}: bad number '{s}'", path.display(), i + 2))?)
        };
        y.push(parse(record.get(0).unwrap())?);
        for j in 0..p {
            x.push(parse(record.get(j + 1).unwrap())?);
        }
    }
    Ok((Dataset::new(x, y, p)?, names))
}
