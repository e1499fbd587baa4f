use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use coxsplit::{Caps, CoxeterSystem};

mod commands;

use commands::Report;

#[derive(Parser)]
#[command(name = "coxsplit")]
#[command(about = "Minimal visual splittings and irreducible visual decompositions of Coxeter groups")]
#[command(version)]
struct Cli {
    /// Coxeter system JSON file
    #[arg(long, global = true)]
    system: Option<PathBuf>,

    /// Enumeration caps, e.g. `generators=12,order=2048`
    #[arg(long, global = true, env = "COXSPLIT_CAPS")]
    caps: Option<String>,

    /// Output format (dot is accepted by `export` only)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Shorthand for `--format text`
    #[arg(long, global = true)]
    text: bool,

    /// Conjugator search bound for `measure` and `certify`
    #[arg(long, global = true, default_value_t = coxsplit::measure::DEFAULT_SEARCH)]
    search: usize,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Diagram-level analysis of the system
    #[command(subcommand)]
    Analyze(Analyze),
    /// Word problem utilities
    #[command(subcommand)]
    Word(WordCmd),
    /// Irreducible visual decomposition over minimal splittings
    Decompose {
        /// Include the split moves that produced it
        #[arg(long)]
        trace: bool,
    },
    /// Check a graph of groups against the visual decomposition conditions
    Validate {
        #[arg(long)]
        gog: PathBuf,
    },
    /// Accessibility potential
    #[command(subcommand)]
    Measure(MeasureCmd),
    /// Replay a split trace and check the potential decreases
    Certify {
        #[arg(long)]
        trace: PathBuf,
    },
    /// Render a decomposition (the irreducible one by default)
    Export {
        #[arg(long)]
        gog: Option<PathBuf>,
    },
    /// Write the bundled example systems into a directory
    Corpus,
}

#[derive(Subcommand)]
pub enum Analyze {
    /// Finite-type classification of a special subgroup
    FiniteType(SubsetArg),
    /// Infinite part E and finite factor T of a subset
    SplitEa(SubsetArg),
    /// Generators outside the subset commuting with all of it
    Lk2(SubsetArg),
    /// Every separating subset of the presentation diagram
    Separators,
    /// Separators with minimal-splitting flags
    Minimal {
        /// Also search conjugators up to this length for non-separating
        /// subsets conjugate onto minimal separators
        #[arg(long)]
        conjugacy_search: Option<usize>,
    },
    /// The family K(W,S)
    Kgroups {
        /// List groups merged by essential part and factor elements
        #[arg(long)]
        dedupe: bool,
    },
}

#[derive(Args)]
pub struct SubsetArg {
    /// Comma-separated generator names
    #[arg(long, default_value = "")]
    subset: String,
}

#[derive(Subcommand)]
pub enum WordCmd {
    /// Shortest form and its braid-class representative
    Reduce { word: String },
    /// Whether two words name the same element
    Equal { word: String, other: String },
    /// Letters used by every geodesic
    Lett { word: String },
    /// Minimal double coset representative and special intersection
    Coset {
        word: String,
        #[arg(long, default_value = "")]
        left: String,
        #[arg(long, default_value = "")]
        right: String,
    },
}

#[derive(Subcommand)]
pub enum MeasureCmd {
    /// n(G) for each vertex and the weighted sum c
    C {
        #[arg(long)]
        gog: PathBuf,
    },
    /// 3^|K(W,S)|
    Bound,
}

/// Exit statuses.
const EXIT_INPUT: u8 = 1;
const EXIT_FINDING: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let resource = err
                .chain()
                .filter_map(|e| e.downcast_ref::<coxsplit::Error>())
                .any(|e| e.is_resource_bound());
            ExitCode::from(if resource { EXIT_RESOURCE } else { EXIT_INPUT })
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let format = match (cli.format, cli.text) {
        (Some(f), false) => f,
        (None, true) | (Some(Format::Text), true) => Format::Text,
        (None, false) => match cli.command {
            Command::Export { .. } => Format::Dot,
            _ => Format::Json,
        },
        (Some(_), true) => bail!("--text conflicts with --format"),
    };
    if format == Format::Dot && !matches!(cli.command, Command::Export { .. }) {
        bail!("dot output is only available from `export`");
    }
    if matches!(cli.command, Command::Export { .. }) && format == Format::Text {
        bail!("`export` writes dot or json");
    }

    let caps = match &cli.caps {
        Some(spec) => spec.parse::<Caps>()?,
        None => Caps::default(),
    };

    if let Command::Corpus = cli.command {
        let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("corpus"));
        return write_corpus(&dir, format);
    }

    let path = cli.system.as_ref().context("--system is required")?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sys = CoxeterSystem::parse(&text).with_context(|| format!("parsing {}", path.display()))?;

    let ctx = commands::Context { sys: &sys, caps, search: cli.search };
    let report = match &cli.command {
        Command::Analyze(a) => commands::analyze(&ctx, a)?,
        Command::Word(w) => commands::word(&ctx, w)?,
        Command::Decompose { trace } => commands::decompose(&ctx, *trace)?,
        Command::Validate { gog } => commands::validate(&ctx, &read(gog)?)?,
        Command::Measure(m) => match m {
            MeasureCmd::C { gog } => commands::measure_c(&ctx, &read(gog)?)?,
            MeasureCmd::Bound => commands::measure_bound(&ctx)?,
        },
        Command::Certify { trace } => commands::certify(&ctx, &read(trace)?)?,
        Command::Export { gog } => {
            let gog = gog.as_ref().map(|p| read(p)).transpose()?;
            commands::export(&ctx, gog.as_deref())?
        }
        Command::Corpus => unreachable!("handled above"),
    };
    emit(cli.out.as_deref(), &report.render(format))?;
    Ok(if report.finding { EXIT_FINDING } else { 0 })
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn write_corpus(dir: &Path, format: Format) -> anyhow::Result<u8> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    for (name, sys) in coxsplit::corpus::all() {
        let path = dir.join(name);
        fs::write(&path, sys.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
        written.push((name, sys.rank(), path));
    }
    let report = Report {
        json: serde_json::json!(written
            .iter()
            .map(|(name, rank, path)| serde_json::json!({
                "name": name,
                "generators": rank,
                "path": path.display().to_string(),
            }))
            .collect::<Vec<_>>()),
        text: written
            .iter()
            .map(|(name, rank, path)| format!("{name}: {rank} generators -> {}\n", path.display()))
            .collect(),
        finding: false,
    };
    print!("{}", report.render(format));
    Ok(0)
}
