mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] reekit::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("serialization: {0}")]
    Serialize(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use reekit::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(E::Unsupported(_) | E::Precondition(_) | E::BoundExceeded { .. } | E::MemoryBudget { .. }) => 3,
            CliError::Io { .. } | CliError::Parse { .. } => 4,
            _ => 1,
        }
    }
}

/// Ree groups, their unitals and rank-3 string C-groups.
#[derive(Debug, Parser)]
#[command(name = "reekit", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Where to write the JSON report (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct R(q), q = 3^(2e+1), on q³+1 points.
    Ree {
        #[command(subcommand)]
        action: ReeAction,
    },
    /// Build and check the Ree unital.
    Unital {
        #[arg(long)]
        e: u32,
        /// Also write every block to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// String C-group checks on a generator tuple.
    Cgroup {
        #[command(subcommand)]
        action: CgroupAction,
    },
    /// Brute-force checks of the small-group facts.
    Lemmas {
        /// Comma-separated subset of norma,divd,normc2psl,psl28,fig1,semidirect,noproduct.
        #[arg(long, value_delimiter = ',', default_values_t = commands::ORACLE_CHECKS.map(String::from))]
        check: Vec<String>,
    },
    /// Rank-3 constructions and classification.
    Rank3 {
        #[command(subcommand)]
        action: Rank3Action,
    },
    /// Every check available for the given e.
    All {
        #[arg(long)]
        e: u32,
    },
}

#[derive(Debug, Subcommand)]
enum ReeAction {
    Build {
        #[arg(long)]
        e: u32,
    },
}

#[derive(Debug, Subcommand)]
enum CgroupAction {
    Verify {
        /// Group as {degree, generators, order}, optionally under `result`.
        #[arg(long)]
        group: Option<PathBuf>,
        /// List of involutions as image arrays.
        #[arg(long)]
        tuple: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SmallGroup {
    Psl28,
}

#[derive(Debug, Subcommand)]
enum Rank3Action {
    /// Randomized search for ⟨ρ₀, ρ₁, ρ₂⟩ = R(q).
    Construct {
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Number of consecutive seeds starting at --seed.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Fraction of seeds that must succeed.
        #[arg(long, default_value_t = 1.0)]
        min_success: f64,
    },
    /// All rank-3 string C-group representations up to automorphisms.
    Classify {
        #[arg(long, value_enum)]
        group: SmallGroup,
        /// Also write the catalog as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Ree { action: ReeAction::Build { e } } => commands::ree_build(*e, seed),
        Command::Unital { e, emit } => commands::unital(*e, emit.as_deref(), seed),
        Command::Cgroup { action: CgroupAction::Verify { group, tuple } } => {
            commands::cgroup_verify(group.as_deref(), tuple, seed)
        }
        Command::Lemmas { check } => commands::lemmas(check, &commands::Groups::default(), seed),
        Command::Rank3 { action: Rank3Action::Construct { e, count, min_success } } => {
            commands::rank3_construct(*e, seed, *count, *min_success)
        }
        Command::Rank3 { action: Rank3Action::Classify { group: SmallGroup::Psl28, csv } } => {
            commands::rank3_classify(&commands::Groups::default(), csv.as_ref(), seed)
        }
        Command::All { e } => commands::all(*e, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.exit_code());
        }
    };
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    for v in &report.verdicts {
        eprintln!("{} {}", if v.pass { "PASS" } else { "FAIL" }, v.check);
    }
    let written = match &cli.out {
        Some(path) => report::write_json(path, &report),
        None => serde_json::to_string_pretty(&report).map(|s| println!("{s}")).map_err(CliError::from),
    };
    if let Err(err) = written {
        eprintln!("error: {err}");
        return ExitCode::from(err.exit_code());
    }
    ExitCode::from(if report.pass { 0 } else { 1 })
}
