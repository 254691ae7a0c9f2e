//! The `gentle` command-line tool.
//!
//! Exit codes: 0 on success (and for an inconclusive screening), 1 when a
//! screening distinguishes the inputs or a self-check fails, 2 on bad input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cartan::{oracle_checks, CartanData};
use crate::error::Error;
use crate::invariants::InvariantBundle;
use crate::presentation::GentleOrder;
use crate::randgen::{generate, GenConfig};
use crate::screen::screen;
use crate::selftest;
use crate::surface::{dictionary_row_check, surface_profiles};

/// Largest random system used by `selftest`.
const SELFTEST_MAX_HALF_EDGES: usize = 40;

#[derive(Debug, Parser)]
#[command(name = "gentle", version, about = "Combinatorial derived invariants of gentle orders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a .gq or .hep file describes a gentle order.
    Validate { file: PathBuf },
    /// AG-invariants, permitted cycles, bicolorability and class.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Incidence and Cartan matrices with rank and determinant.
    Cartan {
        file: PathBuf,
        /// Also run exact elimination and the path-count oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Genus and face counts of the associated surface.
    Surface {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare two orders; exit 1 if they are not derived equivalent.
    Screen {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print a random half-edge system in .hep format.
    Gen {
        #[arg(long)]
        half_edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 0.25)]
        transition_fraction: f64,
    },
    /// Convert between quiver and half-edge formats.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Format,
    },
    /// Run every property check on random instances.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Gq,
    Hep,
}

/// Input failure, reported with exit code 2.
#[derive(Debug)]
enum Failure {
    Io(PathBuf, io::Error),
    Input(PathBuf, Error),
    Other(Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Input(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Other(e) => write!(f, "{e}"),
        }
    }
}

fn read_order(path: &Path) -> Result<GentleOrder, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(path.into(), e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))?
    };
    GentleOrder::parse_any(&text).map_err(|e| Failure::Input(path.into(), e))
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Failure(f)) => {
            let _ = writeln!(err, "error: {f}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum CliError {
    Failure(Failure),
    Io(io::Error),
}

impl From<Failure> for CliError {
    fn from(f: Failure) -> Self {
        CliError::Failure(f)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Validate { file } => {
            let order = read_order(&file)?;
            let p = order.presentation();
            let t = order.classes().transition_vertices().len();
            writeln!(
                out,
                "valid gentle order: {} vertices ({} transition, {} crossing), {} arrows, {} relations, {} component(s)",
                p.vertex_count(),
                t,
                p.vertex_count() - t,
                p.arrow_count(),
                p.relations().len(),
                order.component_count()
            )?;
            Ok(0)
        }
        Command::Invariants { file, json } => {
            let order = read_order(&file)?;
            let bundle = InvariantBundle::compute(&order);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&bundle)?)?;
            } else {
                writeln!(out, "{bundle}")?;
                if bundle.components > 1 {
                    writeln!(out, "components={} (bc and class need a connected order)", bundle.components)?;
                }
            }
            Ok(0)
        }
        Command::Cartan { file, oracle, json } => {
            let order = read_order(&file)?;
            let data = CartanData::compute(&order);
            let checks = if oracle {
                oracle_checks(&order, &data)
            } else {
                Vec::new()
            };
            let ok = checks.iter().all(|c| c.pass);
            if json {
                let mut v = serde_json::to_value(&data)?;
                if oracle {
                    v["oracle"] = serde_json::to_value(&checks)?;
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "B ({}x{}):", data.incidence.rows(), data.incidence.cols())?;
                writeln!(out, "{}", data.incidence)?;
                writeln!(out, "C ({}x{}):", data.cartan.rows(), data.cartan.cols())?;
                writeln!(out, "{}", data.cartan)?;
                writeln!(out, "rank={} det={} bc(Gr)={}", data.rank, data.det, data.graph_bc)?;
                let cases: Vec<String> = data.det_cases.iter().map(ToString::to_string).collect();
                writeln!(out, "det case: {}", cases.join("; "))?;
                for c in &checks {
                    writeln!(
                        out,
                        "oracle {:<20} formula={} exact={} {}",
                        c.name,
                        c.formula,
                        c.oracle,
                        if c.pass { "ok" } else { "FAIL" }
                    )?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Surface { file, json } => {
            let order = read_order(&file)?;
            let profiles = surface_profiles(order.system()).map_err(Failure::Other)?;
            let dict = dictionary_row_check(&order);
            if json {
                let v = if profiles.len() == 1 {
                    serde_json::to_value(profiles[0])?
                } else {
                    serde_json::to_value(&profiles)?
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                for (i, s) in profiles.iter().enumerate() {
                    if profiles.len() > 1 {
                        write!(out, "component {}: ", i + 1)?;
                    }
                    writeln!(out, "{s}")?;
                }
                writeln!(out, "{dict}")?;
            }
            Ok(if dict.all_pass() { 0 } else { 1 })
        }
        Command::Screen { a, b, json } => {
            let oa = read_order(&a)?;
            let ob = read_order(&b)?;
            let report = screen(&oa, &ob).map_err(Failure::Other)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(out, "{report}")?;
            }
            Ok(report.verdict.exit_code())
        }
        Command::Gen {
            half_edges,
            seed,
            connected,
            transition_fraction,
        } => {
            let cfg = GenConfig {
                half_edges,
                seed,
                connected,
                transition_fraction,
            };
            let h = generate(&cfg).map_err(Failure::Other)?;
            write!(out, "{}", h.to_hep())?;
            Ok(0)
        }
        Command::Convert { file, to } => {
            let order = read_order(&file)?;
            match to {
                Format::Gq => write!(out, "{}", order.presentation().to_gq())?,
                Format::Hep => write!(out, "{}", order.system().to_hep())?,
            }
            Ok(0)
        }
        Command::Selftest { cases, seed } => {
            let summary = selftest::run(cases, seed, SELFTEST_MAX_HALF_EDGES);
            for f in summary.failures.iter().take(20) {
                writeln!(out, "FAIL instance {} [{}]: {}", f.instance, f.check, f.detail)?;
                write!(out, "{}", f.system)?;
            }
            writeln!(
                out,
                "selftest: {} cases, {} checks, {} failed",
                summary.cases,
                summary.checks,
                summary.failures.len()
            )?;
            Ok(if summary.passed() { 0 } else { 1 })
        }
    }
}

