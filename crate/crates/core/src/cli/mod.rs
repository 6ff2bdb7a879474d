//! Command-line front end: argument parsing, run configuration, report
//! emission and exit codes.
//!
//! Every subcommand produces a [`Report`]. With `--json` the report is
//! printed as one JSON document whose header carries the schema version;
//! otherwise a short human-readable summary is printed. Exit codes are
//! [`EXIT_OK`], [`EXIT_VERIFICATION`] and [`EXIT_INPUT`].

mod commands;
pub mod examples;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::json::SCHEMA_VERSION;

pub use examples::{paper_examples, CheckStatus, ExampleCheck, ExamplesReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const DEFAULT_PRIME_BOUND: u64 = 100;
pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 53;

/// Environment variable overriding the seed of `twists synth`.
pub const SEED_ENV: &str = "TWISTKIT_SEED";

#[derive(Debug, Parser)]
#[command(name = "twistkit", version, about = "Inner twists, Yoshida lifts and symplectic checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest prime used from the eigenvalue data.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_BOUND)]
    pub bound: u64,
    /// Working precision in bits for complex embeddings.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Search characters of every modulus dividing a multiple of the level.
    #[arg(long, global = true)]
    pub wide_moduli: bool,
    /// Accept weight pairs (k1, k2) with both k_i even and at least 2.
    #[arg(long, global = true)]
    pub relaxed_weights: bool,
    /// Assert discrete series at this prime for both factors.
    #[arg(long, global = true, value_name = "P")]
    pub assert_discrete_series: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Polynomial factorization and number-field data.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Dirichlet characters and the twist hypotheses on (g, k, N).
    #[command(subcommand)]
    Char(CharCmd),
    /// Symplectic similitude checks.
    #[command(subcommand)]
    Gsp(GspCmd),
    /// Siegel Fourier expansions.
    #[command(subcommand)]
    Siegel(SiegelCmd),
    /// Eigen-system consistency checks.
    #[command(subcommand)]
    Newform(NewformCmd),
    /// Inner-twist detection and synthetic systems.
    #[command(subcommand)]
    Twists(TwistsCmd),
    /// Yoshida lifts: construction, twists and Hecke fields.
    #[command(subcommand)]
    Yoshida(YoshidaCmd),
    /// Reproduces the two worked examples on the bundled fixtures.
    #[command(name = "verify-paper-examples", alias = "verify-examples")]
    VerifyPaperExamples,
}

/// A polynomial given as ascending coefficients, either comma separated
/// (`1,0,0,0,1`) or as a JSON array (`["1/2", 0, 1]`).
#[derive(Debug, Clone, Args)]
pub struct PolyArg {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum AlgebraCmd {
    /// Factors a rational polynomial into irreducibles.
    Factor(PolyArg),
    /// Degree, automorphisms, roots of unity and complex conjugation.
    Field(PolyArg),
}

#[derive(Debug, Clone, Subcommand)]
pub enum CharCmd {
    /// Conductor, order and parity of a character document.
    Info {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// All characters of a modulus with values in a field (default Q).
    List {
        #[arg(long)]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Parity of g - k and a unit of order 2g modulo N.
    Hypotheses {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        weight: u64,
        #[arg(long)]
        level: u64,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum GspCmd {
    /// Similitude factor and congruence-subgroup membership of a matrix.
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        modulus: Option<u64>,
        /// full, principal, gamma0 or gamma1.
        #[arg(long, default_value = "gamma0")]
        kind: String,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum SiegelCmd {
    /// Applies the Siegel Φ operator.
    Phi {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum NewformCmd {
    /// Hecke relations at prime squares and the Ramanujan bound.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum TwistsCmd {
    /// Detects the inner twists of an eigen-system.
    Detect {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Generates a system with a prescribed twist group.
    Synth {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides both the spec file and the environment.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum YoshidaCmd {
    /// Builds the lift of two eigen-systems.
    Build {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twists of a lift and of its two factors.
    Twists {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Trace and full Hecke fields of a lift.
    Fields {
        #[arg(long = "in")]
        input: PathBuf,
        /// Reference field to compare against.
        #[arg(long, allow_hyphen_values = true)]
        reference: Option<String>,
    },
}

/// Validated configuration of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub prime_bound: u64,
    pub precision: u32,
    pub json: bool,
    pub wide_moduli: bool,
    pub relaxed_weights: bool,
    pub assert_discrete_series: Option<u64>,
    /// Value of [`SEED_ENV`] when set.
    pub env_seed: Option<u64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            prime_bound: DEFAULT_PRIME_BOUND,
            precision: DEFAULT_PRECISION,
            json: false,
            wide_moduli: false,
            relaxed_weights: false,
            assert_discrete_series: None,
            env_seed: None,
        }
    }

    /// Reads [`SEED_ENV`] from the process environment.
    pub fn from_cli(cli: Cli) -> Result<Self, Error> {
        let env_seed = match std::env::var(SEED_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{SEED_ENV}={s:?} is not an unsigned integer")))?,
            ),
            Err(_) => None,
        };
        let cfg = RunConfig {
            command: cli.command,
            prime_bound: cli.bound,
            precision: cli.precision,
            json: cli.json,
            wide_moduli: cli.wide_moduli,
            relaxed_weights: cli.relaxed_weights,
            assert_discrete_series: cli.assert_discrete_series,
            env_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.prime_bound < 2 {
            return Err(Error::Domain(format!("--bound must be at least 2, got {}", self.prime_bound)));
        }
        if self.precision < MIN_PRECISION {
            return Err(Error::Domain(format!(
                "--precision must be at least {MIN_PRECISION} bits, got {}",
                self.precision
            )));
        }
        Ok(())
    }
}

/// Result of one subcommand before emission.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    /// False when a verification failed.
    pub ok: bool,
    pub body: Value,
    pub summary: Vec<String>,
}

impl Report {
    fn new(command: &str, ok: bool, body: Value, summary: Vec<String>) -> Self {
        Report { command: command.to_string(), ok, body, summary }
    }
}

/// What the process prints and returns.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    /// Full JSON document, header included.
    pub document: Value,
    /// Human-readable summary, one line per entry.
    pub summary: Vec<String>,
    /// Lines for the error stream.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    /// Text for standard output in the chosen mode.
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.document).expect("report serializes");
            s.push('\n');
            s
        } else {
            self.summary.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Algebra(AlgebraCmd::Factor(_)) => "algebra factor",
        Command::Algebra(AlgebraCmd::Field(_)) => "algebra field",
        Command::Char(CharCmd::Info { .. }) => "char info",
        Command::Char(CharCmd::List { .. }) => "char list",
        Command::Char(CharCmd::Hypotheses { .. }) => "char hypotheses",
        Command::Gsp(_) => "gsp check",
        Command::Siegel(_) => "siegel phi",
        Command::Newform(_) => "newform check",
        Command::Twists(TwistsCmd::Detect { .. }) => "twists detect",
        Command::Twists(TwistsCmd::Synth { .. }) => "twists synth",
        Command::Yoshida(YoshidaCmd::Build { .. }) => "yoshida build",
        Command::Yoshida(YoshidaCmd::Twists { .. }) => "yoshida twists",
        Command::Yoshida(YoshidaCmd::Fields { .. }) => "yoshida fields",
        Command::VerifyPaperExamples => "verify-paper-examples",
    }
}

/// Exit code for an error raised while running a command: malformed or
/// unreadable input is an input error, a failed precondition or a
/// non-similitude is a verification failure.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Domain(_) | Error::Json(_) | Error::Io(_) => EXIT_INPUT,
        Error::Precondition(_) | Error::NotSimilitude(_) | Error::Numeric(_) => EXIT_VERIFICATION,
    }
}

fn header(command: &str, status: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("status".into(), json!(status));
    m
}

/// Runs one configured command.
pub fn run(cfg: &RunConfig) -> Outcome {
    let name = command_name(&cfg.command);
    match commands::dispatch(cfg) {
        Ok(r) => {
            let status = if r.ok { "ok" } else { "failed" };
            let mut doc = header(&r.command, status);
            doc.insert("report".into(), r.body);
            let diagnostics = if r.ok { vec![] } else { vec![format!("{name}: verification failed")] };
            Outcome {
                exit_code: if r.ok { EXIT_OK } else { EXIT_VERIFICATION },
                document: Value::Object(doc),
                summary: r.summary,
                diagnostics,
            }
        }
        Err(e) => {
            let mut doc = header(name, "error");
            doc.insert("error".into(), json!(e.to_string()));
            Outcome {
                exit_code: exit_code_for(&e),
                document: Value::Object(doc),
                summary: vec![],
                diagnostics: vec![format!("error: {e}")],
            }
        }
    }
}

/// Parses `args` (program name first), runs, prints, and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let json = cli.json;
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let out = run(&cfg);
    print!("{}", out.render(json));
    for d in &out.diagnostics {
        eprintln!("{d}");
    }
    out.exit_code
}
