use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use uniserial::algebra::{is_faithful, socle_series, verify_representation, JordanSpec, Representation, Violation};
use uniserial::classify::{classify_single_block, existence_check, restriction_profile};
use uniserial::constructions::{build_extension, construct_R, extension_space, BuiltExtension, ClassLabel, ExtensionSpace, SlotValue};
use uniserial::sl2::cg_elementary_divisors;
use uniserial::{Error, Matrix, Rational};

const DEFAULT_SEED: u64 = 17;

#[derive(Parser)]
#[command(name = "uniserial", version, about = "Uniserial representations of <x> ⋉ V over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the representation named by a class label.
    Construct {
        #[arg(long)]
        label: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Check relations, faithfulness and the socle series of a representation.
    Verify {
        rep: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Canonical label of a faithful uniserial representation. For several
    /// Jordan blocks, the restriction to the top block is classified.
    Classify {
        rep: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Whether a faithful uniserial representation exists.
    Exists {
        spec: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Elementary divisors of theta on M_{p,q}.
    Cg {
        #[arg(short = 'p')]
        p: usize,
        #[arg(short = 'q')]
        q: usize,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Parameter space of extensions of R_{alpha,k,X}, optionally built.
    Extensions {
        spec: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Rational,
        /// Slot assignments; slots not listed are zero.
        #[arg(long)]
        params: Option<PathBuf>,
        /// The matrix X; zero when omitted.
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    violations: Vec<Violation>,
    faithful: bool,
    /// Absent when the socle series is undefined for this input.
    uniserial: Option<bool>,
    socle_factor_dims: Option<Vec<usize>>,
    socle_error: Option<String>,
}

#[derive(Serialize)]
struct ExtensionsReport {
    space: ExtensionSpace,
    extension: Option<BuiltExtension>,
}

enum Failure {
    Parse(String),
    Lib(Box<Error>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(msg) => Failure::Parse(msg),
            other => Failure::Lib(Box::new(other)),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { label, output } => {
            let label: ClassLabel = read_json(&label)?;
            emit(&construct_R(&label)?, output.as_deref())
        }
        Command::Verify { rep, output } => {
            let rep: Representation = read_json(&rep)?;
            let verdict = verify_representation(&rep);
            let (uniserial, socle_factor_dims, socle_error) = match socle_series(&rep) {
                Ok(s) => (Some(s.factor_dims.iter().all(|&f| f == 1)), Some(s.factor_dims), None),
                Err(e) => (None, None, Some(e.to_string())),
            };
            let report = VerifyReport {
                ok: verdict.ok,
                violations: verdict.violations,
                faithful: is_faithful(&rep),
                uniserial,
                socle_factor_dims,
                socle_error,
            };
            emit(&report, output.as_deref())
        }
        Command::Classify { rep, seed, output } => {
            let rep: Representation = read_json(&rep)?;
            if rep.spec().len() == 1 {
                emit(&classify_single_block(&rep, seed)?, output.as_deref())
            } else {
                emit(&restriction_profile(&rep, seed)?, output.as_deref())
            }
        }
        Command::Exists { spec, output } => {
            let spec: JordanSpec = read_json(&spec)?;
            emit(&existence_check(&spec)?, output.as_deref())
        }
        Command::Cg { p, q, output } => {
            if p == 0 || q == 0 {
                return Err(Failure::Parse("p and q must be positive".into()));
            }
            emit(&cg_elementary_divisors(p, q), output.as_deref())
        }
        Command::Extensions { spec, k, alpha, params, x, output } => {
            let spec: JordanSpec = read_json(&spec)?;
            let n = spec.max_size();
            let x: Matrix = match x {
                Some(path) => read_json(&path)?,
                None if 1 < k && k < n => Matrix::zeros(k - 1, n - k),
                None => Matrix::zeros(1, 1),
            };
            let space = extension_space(&spec, &alpha, k, &x)?;
            let extension = match params {
                Some(path) => {
                    let values: Vec<SlotValue> = read_json(&path)?;
                    Some(build_extension(&space, &values)?)
                }
                None => None,
            };
            emit(&ExtensionsReport { space, extension }, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if let Error::Refused(r) = e.as_ref() {
                eprintln!("{}", serde_json::to_string(r).expect("serializable"));
            }
            ExitCode::from(match *e {
                Error::Inconsistency(_) => 4,
                _ => 3,
            })
        }
    }
}
