//! `bosonorder` command line: normal ordering, exact tables and the
//! numerical series, each emitted as one structured record.

mod commands;
pub mod input;
pub mod record;

use std::ffi::OsString;
use std::path::PathBuf;

use bosonorder::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use record::{Mode, Record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 2;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "bosonorder",
    version,
    about = "Normal ordering of boson operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the record to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal order an operator expression.
    Order(Params),
    /// Exact Stirling, Bell and generalized tables.
    Tables {
        #[arg(value_enum)]
        kind: TableKind,
        #[command(flatten)]
        params: Params,
    },
    /// Numerical series and generating functions.
    Numeric {
        #[arg(value_enum)]
        kind: NumericKind,
        /// For `egf`: closed, truncated or d0.
        #[arg(value_enum)]
        variant: Option<EgfVariant>,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Stirling,
    Bell,
    Genstirling,
    Genbell,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum NumericKind {
    Dobinski,
    Egf,
    Coherent,
    Pade,
    Sheffer,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EgfVariant {
    Closed,
    Truncated,
    D0,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Params {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// `k:coeff,...` (with --d) or an operator expression.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub expr: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long = "pade-n")]
    pub pade_n: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub trunc: Option<usize>,
    /// Coherent-state label `re[,im]`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
}

impl Params {
    /// Flags that were given, in a fixed order, as strings.
    fn echo(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push((k.to_string(), v));
            }
        };
        put("n", self.n.map(|v| v.to_string()));
        put("k", self.k.map(|v| v.to_string()));
        put("x", self.x.clone());
        put("lambda", self.lambda.clone());
        put("alpha", self.alpha.clone());
        put("d", self.d.map(|v| v.to_string()));
        put("expr", self.expr.clone());
        put("order", self.order.map(|v| v.to_string()));
        put("m", self.m.map(|v| v.to_string()));
        put("pade-n", self.pade_n.map(|v| v.to_string()));
        put("eps", self.eps.map(|v| v.to_string()));
        put("trunc", self.trunc.map(|v| v.to_string()));
        put("z", self.z.clone());
        out
    }
}

/// What one invocation printed and how it exited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_USER
    }
}

pub fn execute(cli: &Cli) -> bosonorder::Result<Record> {
    match &cli.command {
        Command::Order(p) => commands::order(p),
        Command::Tables { kind, params } => commands::tables(*kind, params),
        Command::Numeric {
            kind,
            variant,
            params,
        } => commands::numeric(*kind, *variant, params),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USER,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    let record = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: exit_code(&e),
            }
        }
    };
    let text = match cli.format {
        Format::Json => record.to_json(),
        Format::Table => record.to_table(),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                stdout: String::new(),
                stderr: String::new(),
                code: EXIT_OK,
            },
            Err(e) => Outcome {
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
                code: EXIT_USER,
            },
        },
        None => Outcome {
            stdout: text,
            stderr: String::new(),
            code: EXIT_OK,
        },
    }
}
