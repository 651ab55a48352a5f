//! Command-line front end. Exit status 0 when every check passes, 1 when a
//! check fails, 2 on bad input or unreadable data.

pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::data::DataSource;
use crate::error::{Error, Result};
use crate::groups::Family;
use report::{emit_jsonl, emit_text, Report};

#[derive(Parser, Debug)]
#[command(name = "crepant", version, about = "Exact checks of the crepant resolution correspondence for ADE surface singularities")]
pub struct Cli {
    /// Directory holding groups/, graphs/ and tables/; overrides CREPANT_DATA_DIR.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Record wall-clock time per report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Print stored or derived data for one group.
    Dump {
        /// Group name, e.g. A4, D6, E8.
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        what: DumpTarget,
    },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Degree-zero invariants of the resolution by torus localization.
    Localization {
        /// Group name, e.g. A4, D6, E8.
        #[arg(long)]
        group: String,
    },
    /// One-point genus-one Hurwitz-Hodge integrals and the untwisted sector.
    HurwitzHodge {
        #[arg(long)]
        group: String,
    },
    /// Three-point correlators against counting and stored tables.
    ThreePoint {
        #[arg(long)]
        group: String,
    },
    /// Change of variables from class to representation coordinates.
    ChangeOfVars {
        #[arg(long)]
        group: String,
    },
    /// J-function of the resolution of C^2/Z_2 against the I-function.
    Jfunction {
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Hypergeometric Wronskian identities over symbolic parameters.
    Wronskian {
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Every suite over A1..A12, D4..D12, E6, E7, E8.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpTarget {
    Chartable,
    Graph,
    CovMatrix,
}

impl DumpTarget {
    fn name(self) -> &'static str {
        match self {
            DumpTarget::Chartable => "chartable",
            DumpTarget::Graph => "graph",
            DumpTarget::CovMatrix => "cov-matrix",
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, bool)> {
    let src = DataSource::resolve(cli.data_dir.as_deref());
    let t = cli.timing;
    let reports: Vec<Report> = match &cli.command {
        Command::Dump { group, what } => {
            let f = Family::parse(group)?;
            return Ok((suites::dump(f, what.name(), &src)?, true));
        }
        Command::Verify { suite } => match suite {
            Suite::Localization { group } => vec![suites::localization(Family::parse(group)?, &src, t)?],
            Suite::HurwitzHodge { group } => vec![suites::hurwitz_hodge(Family::parse(group)?, &src, t)?],
            Suite::ThreePoint { group } => vec![suites::three_point(Family::parse(group)?, &src, t)?],
            Suite::ChangeOfVars { group } => vec![suites::change_of_vars(Family::parse(group)?, &src, t)?],
            Suite::Jfunction { order } => vec![suites::jfunction(*order, t)?],
            Suite::Wronskian { order } => vec![suites::wronskian(*order, t)?],
            Suite::All => suites::all(&src, t)?,
        },
    };
    let ok = reports.iter().all(Report::passed);
    let text = match cli.format {
        Format::Text => emit_text(&reports),
        Format::Jsonl => emit_jsonl(&reports),
    };
    Ok((text, ok))
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (text, ok) = match execute(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("crepant: {e}");
            return 2;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("crepant: {e}");
        return 2;
    }
    if ok {
        0
    } else {
        1
    }
}
