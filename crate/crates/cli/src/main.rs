use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use dimer_core::config::RunConfig;
use dimer_core::quiver::QuiverWithPotential;
use dimer_core::relator::run_pipeline;
use dimer_core::replab::{run_verification, Lab};
use dimer_core::report::{add_verification, pipeline_report};
use dimer_core::tiling::{RotationSystem, TilingError};

const ASSERTION: u8 = 1;
const INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "dimer", version, about = "Surface-group relators from brane tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tiling file and print its genus.
    Validate { file: PathBuf },
    /// Print the dual quiver with potential.
    Dualize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the relator pipeline and emit its report.
    Relator(RunArgs),
    /// Run the relator pipeline, then the numerical checks.
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Tiling file; overrides `tiling:` in the config.
    file: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Cut arrows, or `auto`.
    #[arg(long)]
    cut: Option<String>,
    /// Spanning tree arrows, or `auto`.
    #[arg(long)]
    tree: Option<String>,
    /// Tiling edges completing the dimer to a spanning tree, or `auto`.
    #[arg(long)]
    complement: Option<String>,
    /// Cut arrow left unpaired, or `auto`.
    #[arg(long)]
    root: Option<String>,
    /// Power of the standard relator to reach: plus, minus or either.
    #[arg(long)]
    sign: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    /// Block sizes such as `1x1,2x2`.
    #[arg(long)]
    block_sizes: Option<String>,
    /// Sets every tolerance at once.
    #[arg(long)]
    tolerance: Option<String>,
    #[arg(long)]
    tol_arithmetic: Option<String>,
    #[arg(long)]
    tol_solve: Option<String>,
    #[arg(long)]
    tol_composite: Option<String>,
    #[arg(long)]
    tol_long: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Error carrying the exit code.
struct Failure(u8, String);

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(INPUT, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(INPUT, format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(INPUT, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_tiling(path: &Path) -> Result<RotationSystem, Failure> {
    let text = read(path)?;
    RotationSystem::parse(&text).map_err(|e| Failure(INPUT, format!("{}: {e}", path.display())))
}

fn validate(file: &Path) -> Result<(), Failure> {
    let tiling = load_tiling(file)?;
    let diagnostics = tiling.validate();
    if !diagnostics.is_empty() {
        let lines: Vec<String> = diagnostics.iter().map(|d| d.to_string()).collect();
        return Err(Failure(ASSERTION, lines.join("\n")));
    }
    match tiling.genus() {
        Ok(g) => {
            println!("genus: {g}");
            Ok(())
        }
        Err(e @ (TilingError::BadEuler(_) | TilingError::GenusMismatch { .. })) => {
            Err(Failure(ASSERTION, e.to_string()))
        }
        Err(e) => Err(input(e)),
    }
}

fn dualize(file: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let tiling = load_tiling(file)?;
    let qp = QuiverWithPotential::dual_of(&tiling).map_err(input)?;
    emit(&qp.render(), out)
}

fn build_config(args: &RunArgs) -> Result<(RunConfig, PathBuf), Failure> {
    let mut config = match &args.config {
        Some(p) => {
            let mut c = RunConfig::parse(&read(p)?)
                .map_err(|e| Failure(INPUT, format!("{}: {e}", p.display())))?;
            if let (Some(t), Some(dir)) = (&c.tiling, p.parent()) {
                if t.is_relative() {
                    c.tiling = Some(dir.join(t));
                }
            }
            c
        }
        None => RunConfig::default(),
    };
    let flags = [
        ("cut", &args.cut),
        ("tree", &args.tree),
        ("complement", &args.complement),
        ("root", &args.root),
        ("sign", &args.sign),
        ("seed", &args.seed),
        ("samples", &args.samples),
        ("block-sizes", &args.block_sizes),
        ("tolerance", &args.tolerance),
        ("tol-arithmetic", &args.tol_arithmetic),
        ("tol-solve", &args.tol_solve),
        ("tol-composite", &args.tol_composite),
        ("tol-long", &args.tol_long),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            config.set(key, v).map_err(|e| Failure(INPUT, format!("--{key}: {e}")))?;
        }
    }
    if let Some(f) = &args.file {
        config.tiling = Some(f.clone());
    }
    let tiling = config
        .tiling
        .clone()
        .ok_or_else(|| Failure(INPUT, "no tiling file given".into()))?;
    Ok((config, tiling))
}

fn relator(args: &RunArgs, verify: bool) -> Result<(), Failure> {
    let (config, path) = build_config(args)?;
    let tiling = load_tiling(&path)?;
    let run = run_pipeline(&tiling, &config.pipeline).map_err(input)?;
    info!("relator {}", run.relator.relator.render());
    let mut report = pipeline_report(&run);
    if verify && run.normalization.is_some() {
        let lab = Lab::from_run(&run).map_err(|e| Failure(ASSERTION, e.to_string()))?;
        let v = run_verification::<f64>(&lab, &config.verify)
            .map_err(|e| Failure(ASSERTION, e.to_string()))?;
        add_verification(&mut report, &v);
    }
    emit(&report.render(), args.out.as_deref())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure(ASSERTION, "some assertions failed; see the report".into()))
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Dualize { file, out } => dualize(file, out.as_deref()),
        Command::Relator(args) => relator(args, false),
        Command::Verify(args) => relator(args, true),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
