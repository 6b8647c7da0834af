//! Thin command-line front end: loads a TOML run configuration, dispatches
//! to the library, and writes CSV/JSONL sweep tables.
//!
//! Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical
//! failure (any unconverged sweep point).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use casimir_lorentz::config::{parse_config, run_sweep, Mode, RunConfig, UnitsChoice};
use casimir_lorentz::validate;

#[derive(Parser)]
#[command(
    name = "casimir-lorentz",
    version,
    about = "Vacuum Lorentz-force Casimir forces in material planar cavities",
    after_help = "Runs are driven by a TOML config file; see the repository README for the schema."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to the TOML run configuration (required except for `validate`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path; overrides the config's `output.path` (default: stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Override the quadrature relative tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    /// Output unit selection.
    #[arg(long, global = true, value_enum)]
    units: Option<UnitsArg>,

    /// Worker threads for sweep evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Force on the slab, split into screened and medium-assisted parts.
    SlabForce,
    /// Closed-form ideal conductive/permeable configurations.
    Ideal,
    /// Force density on the cavity medium vs distance from a mirror.
    Density,
    /// Atom-mirror force (full, nonretarded, or far regime).
    AtomForce,
    /// Side-by-side comparison with the Zhou-Spruch forms.
    ZsCompare,
    /// Run the built-in oracle suite and report pass/fail per criterion.
    Validate,
}

impl Command {
    fn mode(&self) -> Mode {
        match self {
            Command::SlabForce => Mode::SlabForce,
            Command::Ideal => Mode::Ideal,
            Command::Density => Mode::Density,
            Command::AtomForce => Mode::AtomForce,
            Command::ZsCompare => Mode::ZsCompare,
            Command::Validate => Mode::Validate,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitsArg {
    Si,
    Coef,
    Both,
}

impl From<UnitsArg> for UnitsChoice {
    fn from(u: UnitsArg) -> Self {
        match u {
            UnitsArg::Si => UnitsChoice::Si,
            UnitsArg::Coef => UnitsChoice::Coef,
            UnitsArg::Both => UnitsChoice::Both,
        }
    }
}

const EXIT_VALIDATION_FAILURE: u8 = 1;
const EXIT_CONFIG_ERROR: u8 = 2;
const EXIT_NUMERICAL_FAILURE: u8 = 3;

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG_ERROR)
}

fn run_validate() -> ExitCode {
    let report = validate::run_all();
    for criterion in &report.criteria {
        println!("{}", criterion.summary());
    }
    let passed = report.criteria.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} criteria passed", report.criteria.len());
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VALIDATION_FAILURE)
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, ExitCode> {
    let Some(path) = &cli.config else {
        return Err(config_error(
            "--config <path> is required for this subcommand",
        ));
    };
    let text = fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
    let mut config = parse_config(&text).map_err(config_error)?;

    if config.mode != cli.command.mode() {
        return Err(config_error(format!(
            "config mode `{}` does not match the `{}` subcommand",
            config.mode,
            cli.command.mode()
        )));
    }
    if let Some(rel_tol) = cli.rel_tol {
        config.quadrature.rel_tol = rel_tol;
    }
    if let Some(units) = cli.units {
        config.output.units = units.into();
    }
    if let Some(path) = &cli.output {
        config.output.path = Some(path.display().to_string());
    }
    config.validate().map_err(config_error)?;
    Ok(config)
}

fn run_sweep_command(cli: &Cli) -> ExitCode {
    let config = match load_config(cli) {
        Ok(c) => c,
        Err(code) => return code,
    };

    let sweep = || run_sweep(&config);
    let table = if let Some(threads) = cli.threads {
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool,
            Err(e) => return config_error(format!("cannot build thread pool: {e}")),
        };
        pool.install(sweep)
    } else {
        sweep()
    };
    let table = match table {
        Ok(t) => t,
        Err(e) => return config_error(e),
    };

    let write_result = match &config.output.path {
        Some(path) => fs::File::create(path)
            .and_then(|mut f| table.write(&mut f, config.output.format))
            .map(|_| eprintln!("wrote {} rows to {path}", table.rows.len())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table
                .write(&mut lock, config.output.format)
                .and_then(|_| lock.flush())
        }
    };
    if let Err(e) = write_result {
        return config_error(format!("cannot write output: {e}"));
    }

    if table.unconverged_points > 0 {
        eprintln!(
            "warning: {} of {} sweep points did not converge within max_evaluations",
            table.unconverged_points,
            table.rows.len()
        );
        return ExitCode::from(EXIT_NUMERICAL_FAILURE);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate => run_validate(),
        _ => run_sweep_command(&cli),
    }
}
