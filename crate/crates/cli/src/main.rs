//! `knotq`: enumerate and analyze finite n-quandles of links.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knotq::enumerator::DotOptions;
use knotq::links::LinkSpec;
use knotq::tables::{self, oracle, Table};
use knotq::{enumerate, CayleyTable, Catalog, Error, FiniteQuandle, DEFAULT_CAP};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_AXIOM: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(name = "knotq", version, about = "Finite n-quandles of links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the Cayley graph and print its size and components.
    Enumerate {
        #[command(flatten)]
        link: LinkArgs,
        /// Write the Cayley graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the Cayley graph as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print order, components, Aut/Inn/Trans and mediality.
    Analyze {
        #[command(flatten)]
        link: LinkArgs,
        /// Write the operation table as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Recompute the order and automorphism-group tables (2, 4, 5 or all).
    ReproduceTables {
        selector: String,
        /// Parameter range `a..b` for the q-indexed rows.
        #[arg(long, value_parser = parse_range)]
        q: Option<RangeInclusive<usize>>,
        #[arg(long)]
        cap: Option<usize>,
        /// Write the TSV here instead of printing it.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LinkArgs {
    /// two-bridge:p/q, torus:p,q[:+-], torus-axis:q, braid:s:letters,
    /// braid-axis:s:letters, file:path, or a named link.
    spec: String,
    /// Quandle exponent (default 2).
    #[arg(long, conflicts_with = "fundamental")]
    n: Option<u32>,
    /// The fundamental quandle, with no exponent.
    #[arg(long)]
    fundamental: bool,
    /// Maximum number of vertices created during enumeration.
    #[arg(long)]
    cap: Option<usize>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a..b, got `{s}`");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

/// An error with the exit status it maps to.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidPresentation(_)
            | Error::NoExponent
            | Error::InvalidLink(_)
            | Error::OrientationMismatch { .. }
            | Error::UnknownGroup(_) => EXIT_PARSE,
            Error::CapExceeded { .. } | Error::GroupCapExceeded { .. } => EXIT_CAP,
            Error::AxiomViolation(_) => EXIT_AXIOM,
            Error::AmbiguousIdentification(_) | Error::Io(_) => EXIT_FAILURE,
        };
        Failure(code, e.to_string())
    }
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, Failure> {
    let cap = match (flag, std::env::var("KNOTQ_CAP")) {
        (Some(cap), _) => cap,
        (None, Ok(v)) => v
            .trim()
            .parse()
            .map_err(|_| Failure(EXIT_PARSE, format!("KNOTQ_CAP must be a positive integer, got `{v}`")))?,
        (None, Err(_)) => DEFAULT_CAP,
    };
    if cap == 0 {
        return Err(Failure(EXIT_PARSE, "cap must be at least 1".into()));
    }
    Ok(cap)
}

fn write(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(EXIT_FAILURE, format!("{}: {e}", path.display())))
}

fn build(link: &LinkArgs) -> Result<CayleyTable, Failure> {
    let spec: LinkSpec = link.spec.parse()?;
    let n = if link.fundamental { None } else { Some(link.n.unwrap_or(2)) };
    let pres = spec.presentation(n)?;
    Ok(enumerate(&pres, resolve_cap(link.cap)?)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate { link, dot, json } => {
            let table = build(&link)?;
            if let Some(path) = dot {
                write(&path, &table.to_dot(&DotOptions::default()))?;
            }
            if let Some(path) = json {
                write(&path, &format!("{:#}\n", table.to_json()))?;
            }
            println!(
                "elements: {}, components: {}",
                table.size(),
                table.connected_components().len()
            );
        }
        Command::Analyze { link, json } => {
            let table = build(&link)?;
            let quandle = FiniteQuandle::from_cayley(&table)?;
            if let Some(path) = json {
                write(&path, &format!("{:#}\n", quandle.to_json()))?;
            }
            let catalog = Catalog::for_tables(quandle.size().max(8));
            print!("{}", knotq::report::analyze(&quandle, &catalog)?);
        }
        Command::ReproduceTables { selector, q, cap, tsv } => {
            let selected: Vec<Table> = if selector == "all" {
                Table::ALL.to_vec()
            } else {
                vec![selector.parse()?]
            };
            let cap = resolve_cap(cap)?;
            let specs: Vec<_> = selected.iter().flat_map(|&t| tables::rows(t, q.clone())).collect();
            let catalog = tables::catalog_for(&specs);
            let rows = specs
                .iter()
                .map(|s| tables::compute_row(s, &catalog, cap))
                .collect::<Result<Vec<_>, _>>()?;
            print!("{}", tables::render(&rows));
            let text = tables::to_tsv(&rows);
            match tsv {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            let diff: Vec<String> = rows.iter().flat_map(oracle::check).map(|m| m.to_string()).collect();
            if !diff.is_empty() {
                let mut message = format!("{} cell(s) differ from the published values:", diff.len());
                for line in diff {
                    message.push_str("\n  ");
                    message.push_str(&line);
                }
                return Err(Failure(EXIT_MISMATCH, message));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            eprintln!("knotq: {message}");
            ExitCode::from(code)
        }
    }
}
