//! Command-line front end: every subcommand renders a library result as
//! JSON (sorted keys, versioned) or TSV.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spalperin::caps::{Caps, NO_CAPS_ENV};

mod commands;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_ASSERTION: i32 = 4;
pub const EXIT_IO: i32 = 5;

/// Largest truncation for the identity suite.
pub const MAX_TRUNCATION: usize = 4096;
/// Largest n for the enumerated count table.
pub const MAX_COUNT_N: u32 = 30;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LabelKind {
    Brauer,
    Weight,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "spalperin", version, about = "Blocks, Brauer labels and weights of Sp(2n, q) at l = 2")]
#[command(after_help = format!("Set {NO_CAPS_ENV}=1 to lift the size caps (unsafe: may be very slow)."))]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Check the Jacobi identities and the generating-function equalities.
    Identities {
        #[arg(long, default_value_t = 512)]
        max_degree: usize,
    },
    /// Count table of scU, scU1, scT, scT'1 for n = 0..=N by enumeration.
    Counts {
        #[arg(long)]
        n: u32,
    },
    /// Classified elementary divisors over F_q.
    Divisors {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        odd_order_only: bool,
    },
    /// The 2-blocks of Sp(2n, q) with their label counts.
    Blocks {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
    },
    /// Brauer or weight labels of one block.
    Labels {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        block: usize,
        #[arg(long, value_enum)]
        kind: LabelKind,
    },
    /// Orbits of the diagonal and field automorphisms on the labels of one block.
    Orbits {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        block: usize,
    },
    /// The equivariant bijection with its verification report.
    Bijection {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        block: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Identities { .. } => "identities",
            Command::Counts { .. } => "counts",
            Command::Divisors { .. } => "divisors",
            Command::Blocks { .. } => "blocks",
            Command::Labels { .. } => "labels",
            Command::Orbits { .. } => "orbits",
            Command::Bijection { .. } => "bijection",
        }
    }
}

/// The result of one invocation: exit code and the text for stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

/// A failed invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn cap(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CAP,
            kind: "cap",
            message: message.into(),
        }
    }

    pub fn assertion(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_ASSERTION,
            kind: "assertion",
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            kind: "io",
            message: message.into(),
        }
    }

    fn render(&self, command: Option<&str>) -> String {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "error": {"kind": self.kind, "message": self.message, "exit_code": self.code},
        });
        pretty(&v)
    }
}

/// A table for TSV output: header and rows.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// What a subcommand produces: the JSON document, the TSV table, and
/// whether an internal check failed.
pub struct Report {
    pub json: Value,
    pub table: Table,
    pub assertion_failure: Option<String>,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

/// Cell text for TSV: strings bare, everything else as compact JSON.
pub(crate) fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn run(config: &RunConfig) -> Output {
    run_with_caps(config, Caps::from_env())
}

pub fn run_with_caps(config: &RunConfig, caps: Caps) -> Output {
    let name = config.command.name();
    match commands::execute(&config.command, caps) {
        Ok(report) => {
            let stdout = match config.format {
                Format::Json => {
                    let mut doc = report.json;
                    if let Value::Object(map) = &mut doc {
                        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
                        map.insert("command".into(), json!(name));
                        if let Some(msg) = &report.assertion_failure {
                            let f = Failure::assertion(msg.clone());
                            map.insert("error".into(), json!({"kind": f.kind, "message": f.message, "exit_code": f.code}));
                        }
                    }
                    pretty(&doc)
                }
                Format::Tsv => report.table.render(),
            };
            let code = if report.assertion_failure.is_some() { EXIT_ASSERTION } else { EXIT_OK };
            Output { code, stdout }
        }
        Err(f) => Output {
            code: f.code,
            stdout: f.render(Some(name)),
        },
    }
}

/// Parses `args` (including the program name) and runs. Help and version
/// requests print their text with exit code 0; parse errors become usage
/// failures.
pub fn run_args<I, T>(args: I) -> (Output, Option<String>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => (run(&config), None),
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => (
                    Output {
                        code: EXIT_OK,
                        stdout: text,
                    },
                    None,
                ),
                _ => {
                    let f = Failure::usage(text.lines().next().unwrap_or("invalid arguments").to_string());
                    (
                        Output {
                            code: f.code,
                            stdout: f.render(None),
                        },
                        Some(text),
                    )
                }
            }
        }
    }
}
