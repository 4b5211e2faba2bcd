//! Command-line front end for `trunckit`.
//!
//! Every invocation loads one groupoid document, runs a single subcommand
//! and produces a [`Report`]. The exit code depends on the report status
//! alone: `0` for ok, `1` when a checked property does not hold and `2` for
//! malformed input or usage errors.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use trunckit::groupoid::DEFAULT_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    /// Parse and validate the document.
    Validate,
    /// Connected components of a groupoid.
    Pi0,
    /// Split a groupoid into its components.
    Decompose,
    /// Loop groups at one or every object.
    Loops,
    /// Whether a functor sends every loop to an identity.
    Null,
    /// Factor a functor through a truncation (`--n 0` or `--n -1`).
    Factor,
    /// Build the collapsed higher inductive groupoid.
    Hit,
    /// Check that the collapsed groupoid is a set with the expected maps out.
    HitCheck,
    /// Descent data of a functor along the collapsed groupoid.
    Descent,
    /// Whether every loop group is abelian.
    Braided,
    /// Set-based representation of a braided groupoid.
    Represent,
    /// Exhaustive enumeration counts.
    Oracle,
}

impl CommandKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandKind::Validate => "validate",
            CommandKind::Pi0 => "pi0",
            CommandKind::Decompose => "decompose",
            CommandKind::Loops => "loops",
            CommandKind::Null => "null",
            CommandKind::Factor => "factor",
            CommandKind::Hit => "hit",
            CommandKind::HitCheck => "hit-check",
            CommandKind::Descent => "descent",
            CommandKind::Braided => "braided",
            CommandKind::Represent => "represent",
            CommandKind::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "trunckit", version, about = "Truncation elimination on finite groupoids")]
pub struct Cli {
    /// Subcommand to run.
    #[arg(value_enum)]
    pub command: CommandKind,

    /// Groupoid document to load.
    pub file: PathBuf,

    /// Groupoid declared in the document.
    #[arg(long, value_name = "NAME")]
    pub groupoid: Option<String>,

    /// Functor declared in the document.
    #[arg(long, value_name = "NAME")]
    pub functor: Option<String>,

    /// Object of the selected groupoid.
    #[arg(long, value_name = "NAME")]
    pub object: Option<String>,

    /// Truncation level for `factor`: 0 or -1.
    #[arg(long, value_name = "INT", allow_negative_numbers = true, default_value_t = 0)]
    pub n: i64,

    /// Print one JSON object instead of text.
    #[arg(long)]
    pub json: bool,

    /// Largest search space an enumeration may visit.
    #[arg(long, value_name = "INT", default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    PropertyFailed,
    InvalidInput,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PropertyFailed => 1,
            Status::InvalidInput => 2,
        }
    }
}

/// Result of one invocation. Only `command`, `status` and `payload` are
/// serialized; `text` is the human rendering and `diagnostic` goes to
/// standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub diagnostic: Option<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Result<Report, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv).map(|cli| execute(&cli))
}

pub fn execute(cli: &Cli) -> Report {
    commands::execute(cli)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_levels_parse() {
        let cli = Cli::try_parse_from(["trunckit", "factor", "f.gd", "--functor", "F", "--n", "-1"]).unwrap();
        assert_eq!((cli.command, cli.n, cli.cap), (CommandKind::Factor, -1, DEFAULT_CAP));
    }

    #[test]
    fn command_tokens_match_clap_names() {
        for kind in CommandKind::value_variants() {
            let name = kind.to_possible_value().unwrap().get_name().to_string();
            assert_eq!(kind.as_str(), name);
        }
    }

    #[test]
    fn status_serializes_in_kebab_case() {
        let r = Report {
            command: "null".into(),
            status: Status::PropertyFailed,
            payload: Value::Null,
            text: vec!["ignored".into()],
            diagnostic: None,
        };
        assert_eq!(r.to_json(), r#"{"command":"null","status":"property-failed","payload":null}"#);
        assert_eq!(r.exit_code(), 1);
        assert_eq!((Status::Ok.exit_code(), Status::InvalidInput.exit_code()), (0, 2));
    }
}
