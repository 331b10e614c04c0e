//! `sgtree`: explore the tree of numerical semigroups from the command line.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use sgtree::tree::{explore, ExploreConfig};
use sgtree::{render, verify, wilf, Error, SemigroupState, Word, U256};

const USAGE: u8 = 1;
const OVERFLOW: u8 = 2;
const VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "sgtree", version, about = "Explore the tree of numerical semigroups by genus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count all semigroups up to a genus, optionally searching for Eliahou semigroups.
    Explore(ExploreArgs),
    /// Parameters, Wilf and Eliahou inequalities of one semigroup.
    Info(InfoArgs),
    /// Report on a member of a named family.
    Family(FamilyArgs),
    /// Text tree of seed tables below a semigroup.
    Render(RenderArgs),
    /// Run a self-check suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Bitstream width in bits.
    #[arg(long, default_value = "128", value_parser = PossibleValuesParser::new(["128", "256"]))]
    capacity: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
    Json,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long)]
    genus: u32,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Check the Eliahou constant and Wilf's inequality at every node.
    #[arg(long)]
    eliahou: bool,
    /// Report finished subtrees on stderr.
    #[arg(long)]
    progress: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct InfoArgs {
    /// Comma-separated generators, e.g. `19,26,27`.
    generators: String,
    /// Add every integer from here on.
    #[arg(long)]
    floor: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    family: Family,
    /// Family parameters: `eps N`, `ef M A B`, `delgado P TAU I J`, `bef T`,
    /// `hyperelliptic G`, `interval G`, `three B`.
    #[arg(required = true)]
    params: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Eps,
    Ef,
    Delgado,
    Bef,
    Hyperelliptic,
    Interval,
    Three,
}

#[derive(Args)]
struct RenderArgs {
    /// Comma-separated generators of the root.
    #[arg(required_unless_present = "muv", conflicts_with = "muv")]
    generators: Option<String>,
    #[arg(long, requires = "generators")]
    floor: Option<u32>,
    /// Root `{0, m, m+u, m+u+v, …}` given as `m`, `m,u` or `m,u,v`.
    #[arg(long)]
    muv: Option<String>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
    depth: u32,
    #[arg(long, default_value = "128", value_parser = PossibleValuesParser::new(["128", "256"]))]
    capacity: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = PossibleValuesParser::new(verify::SUITES))]
    suite: String,
    /// Genus bound; each suite has its own default.
    #[arg(long)]
    genus: Option<u32>,
}

/// A failed command and its exit status.
struct Failure {
    status: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Overflow { .. } | Error::CapacityExhausted { .. } => OVERFLOW,
            _ => USAGE,
        };
        Failure { status, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { status: USAGE, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Explore(args) => with_capacity(&args.common.capacity, args, cmd_explore::<u128>, cmd_explore::<U256>),
        Command::Info(args) => with_capacity(&args.common.capacity, args, cmd_info::<u128>, cmd_info::<U256>),
        Command::Family(args) => with_capacity(&args.common.capacity, args, cmd_family::<u128>, cmd_family::<U256>),
        Command::Render(args) => with_capacity(&args.capacity, args, cmd_render::<u128>, cmd_render::<U256>),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(status) => ExitCode::from(status),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.status)
        }
    }
}

fn with_capacity<A>(capacity: &str, args: &A, narrow: fn(&A) -> Outcome, wide: fn(&A) -> Outcome) -> Outcome {
    if capacity == "256" {
        wide(args)
    } else {
        narrow(args)
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn cmd_explore<W: Word>(args: &ExploreArgs) -> Outcome {
    let mut config = ExploreConfig { eliahou: args.eliahou, progress: args.progress, ..Default::default() };
    if let Some(workers) = args.workers {
        config.workers = workers as usize;
    }
    let report = explore::<W>(args.genus, &config)?;
    let text = match args.common.format {
        Format::Human => report::explore_human(&report),
        Format::Tsv => report::explore_tsv(&report),
        Format::Json => report::explore_json(&report),
    };
    emit(args.common.out.as_deref(), &text)?;
    let plural = if config.workers == 1 { "" } else { "s" };
    eprintln!("explored to genus {} in {:.3}s on {} worker{plural}", args.genus, report.wall_seconds, config.workers);
    Ok(if report.wilf_violations.is_empty() { 0 } else { VIOLATION })
}

fn parse_list(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure { status: USAGE, message: format!("cannot parse {text:?} as a list of integers: {e}") })
}

fn from_generators<W: Word>(generators: &str, floor: Option<u32>) -> Result<SemigroupState<W>, Failure> {
    let gens = parse_list(generators)?;
    Ok(match floor {
        Some(floor) => SemigroupState::from_generators_with_floor(&gens, floor)?,
        None => SemigroupState::from_generators(&gens)?,
    })
}

fn info_report<W: Word>(state: &SemigroupState<W>, common: &Common) -> Outcome {
    let params = wilf::params_from_state(state);
    let text = match common.format {
        Format::Human => report::info_human(state, &params),
        Format::Tsv => report::info_tsv(state, &params),
        Format::Json => report::info_json(state, &params),
    };
    emit(common.out.as_deref(), &text)?;
    Ok(if params.wilf_holds() { 0 } else { VIOLATION })
}

fn cmd_info<W: Word>(args: &InfoArgs) -> Outcome {
    info_report(&from_generators::<W>(&args.generators, args.floor)?, &args.common)
}

fn cmd_family<W: Word>(args: &FamilyArgs) -> Outcome {
    let arity = match args.family {
        Family::Ef => 3,
        Family::Delgado => 4,
        _ => 1,
    };
    if args.params.len() != arity {
        return Err(Failure {
            status: USAGE,
            message: format!("this family takes {arity} parameters, got {}", args.params.len()),
        });
    }
    let p = &args.params;
    let state = match args.family {
        Family::Eps => {
            let (gens, floor) = p[0]
                .checked_sub(1)
                .and_then(|i| wilf::KNOWN_ELIAHOU.get(i as usize))
                .ok_or(Failure { status: USAGE, message: "eps takes an index from 1 to 10".into() })?;
            SemigroupState::from_generators_with_floor(gens, *floor)?
        }
        Family::Ef => wilf::ef_semigroup(p[0], p[1], p[2])?,
        Family::Delgado => wilf::delgado(p[0], p[1], p[2], p[3])?,
        Family::Bef => wilf::bef(p[0])?,
        Family::Hyperelliptic => wilf::hyperelliptic(p[0])?,
        Family::Interval => wilf::interval_semigroup(p[0])?,
        Family::Three => wilf::multiplicity_three(p[0])?,
    };
    info_report::<W>(&state, &args.common)
}

fn cmd_render<W: Word>(args: &RenderArgs) -> Outcome {
    let root = match (&args.generators, &args.muv) {
        (Some(gens), _) => from_generators::<W>(gens, args.floor)?,
        (None, Some(muv)) => {
            let v = parse_list(muv)?;
            if v.is_empty() || v.len() > 3 {
                return Err(Failure { status: USAGE, message: "--muv takes one to three integers".into() });
            }
            SemigroupState::low_rank_state(v[0], v.get(1).copied(), v.get(2).copied())?
        }
        (None, None) => unreachable!("clap requires a root"),
    };
    emit(args.out.as_deref(), &render::render_tree(&root, args.depth)?)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let report = verify::run_suite(&args.suite, args.genus)?;
    println!("{report}");
    Ok(if report.passed() { 0 } else { VIOLATION })
}
