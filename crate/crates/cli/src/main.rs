use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hbl_cli::{builtin, run, Algebra, Budget, CliError, RMatrixFile, Task};
use hbl_core::exactnum::parse_rational;
use hbl_core::qalg::DEFAULT_LATTICE_CAP;

#[derive(Parser)]
#[command(
    name = "hbl",
    version,
    about = "Exact checks for Hecke operators and their quadratic algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Builtin operator: dj:<d>, flip:<d> or superflip:<r>|<s>
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    builtin: Option<String>,
    /// JSON R-matrix file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Substitute a rational value for p, e.g. p=3/2
    #[arg(long, value_name = "p=<rational>")]
    specialize: Option<String>,
    /// Largest tensor-power dimension any step may use (HBL_MAX_AMBIENT overrides)
    #[arg(long)]
    max_dim: Option<usize>,
    /// Write the JSON report here instead of stdout
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    #[value(name = "S")]
    S,
    #[value(name = "Lambda")]
    Lambda,
    #[value(name = "E")]
    E,
    #[value(name = "Edual")]
    Edual,
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::S => Algebra::S,
            AlgebraArg::Lambda => Algebra::Lambda,
            AlgebraArg::E => Algebra::E,
            AlgebraArg::Edual => Algebra::Edual,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hecke relation, braid relation, invertibility and nonvanishing q-factorials
    Axioms {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', long = "max-degree", default_value_t = 4)]
        max_degree: usize,
    },
    /// Graded dimensions of one algebra by every available route
    Dims {
        #[command(flatten)]
        common: Common,
        #[arg(short, long, value_enum)]
        algebra: AlgebraArg,
        #[arg(short = 'N', long = "max-degree", default_value_t = 4)]
        max_degree: usize,
    },
    /// Series formulas for E and its dual against direct ranks, and the character recursion
    Poincare {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', long = "max-degree", default_value_t = 4)]
        max_degree: usize,
    },
    /// Lattice distributivity and the Koszul series identity
    Koszul {
        #[command(flatten)]
        common: Common,
        #[arg(short, long, value_enum)]
        algebra: AlgebraArg,
        #[arg(short = 'n', long = "degree", default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
    /// Multiplicities, centralizer and double-centralizer dimensions
    Schur {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long = "degree", default_value_t = 3)]
        degree: usize,
    },
    /// Write the operator as a JSON R-matrix file
    Export {
        #[command(flatten)]
        common: Common,
    },
    /// Everything above through degree N in one report
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', long = "max-degree", default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
}

fn split(command: Command) -> (Common, Option<Task>) {
    let (common, task) = match command {
        Command::Export { common } => return (common, None),
        Command::Axioms { common, max_degree } => (common, Task::Axioms { max_degree }),
        Command::Dims {
            common,
            algebra,
            max_degree,
        } => (
            common,
            Task::Dims {
                algebra: algebra.into(),
                max_degree,
            },
        ),
        Command::Poincare { common, max_degree } => (common, Task::Poincare { max_degree }),
        Command::Koszul {
            common,
            algebra,
            degree,
            cap,
        } => (
            common,
            Task::Koszul {
                algebra: algebra.into(),
                degree,
                cap,
            },
        ),
        Command::Schur { common, degree } => (common, Task::Schur { degree }),
        Command::Report {
            common,
            max_degree,
            cap,
        } => (common, Task::Report { max_degree, cap }),
    };
    (common, Some(task))
}

fn emit(out: &Option<PathBuf>, json: String) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => writeln!(std::io::stdout(), "{json}").map_err(|e| CliError::Io(e.to_string())),
    }
}

fn execute(common: Common, task: Option<Task>) -> Result<bool, CliError> {
    let mut op = match (&common.builtin, &common.file) {
        (Some(name), _) => builtin(name)?,
        (None, Some(path)) => RMatrixFile::read(path)?.to_operator()?,
        (None, None) => return Err(CliError::Usage("give --builtin or --file".to_string())),
    };
    if let Some(spec) = &common.specialize {
        let value = spec
            .strip_prefix("p=")
            .and_then(parse_rational)
            .ok_or_else(|| {
                CliError::Usage(format!("--specialize expects p=<rational>, got `{spec}`"))
            })?;
        op = op.specialize(&value)?;
    }
    let Some(task) = task else {
        emit(&common.out, op.to_file().to_json())?;
        return Ok(true);
    };
    let budget = Budget::from_env(common.max_dim)?;
    let report = run(&task, &op, &budget)?;
    emit(&common.out, report.to_json())?;
    for c in report.failures() {
        let degree = c.degree.map(|n| format!(" (n = {n})")).unwrap_or_default();
        eprintln!("FAIL {}{degree}: computed {}", c.name, c.computed);
    }
    Ok(report.all_passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, task) = split(cli.command);
    match execute(common, task) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hbl: {e}");
            ExitCode::from(2)
        }
    }
}
