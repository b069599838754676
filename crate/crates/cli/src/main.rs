use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use shiftinv_cli::commands::{self, Outcome, TestMethod};

/// Canonicalize closed subgroups of R^d containing Z^d and decide the extra
/// invariance of windowed shift-invariant spaces.
#[derive(Parser)]
#[command(name = "shiftinv", version, about)]
struct Cli {
    /// Relative tolerance for numerical rank and residual decisions.
    #[arg(long, global = true, default_value_t = shiftinv::DEFAULT_TOL_REL)]
    tol: f64,

    /// Worker threads for per-cell computations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Rank,
    Fiber,
    Modulation,
}

#[derive(Subcommand)]
enum Command {
    /// Canonicalize a subgroup document: invariant factors and adapted bases.
    Canon {
        /// Subgroup JSON file (`-` for stdin).
        subgroup: PathBuf,
    },
    /// Emit a basis of the dual lattice M*.
    Dual { subgroup: PathBuf },
    /// Exact membership of a rational point in M (exit 0 member, 1 not).
    Contains {
        subgroup: PathBuf,
        /// Point as JSON rationals, e.g. `[[1,2],[0,1]]`.
        #[arg(long)]
        point: String,
    },
    /// Decide M-invariance of the space generated by a generator document
    /// (exit 0 invariant, 1 not invariant, 2 usage error).
    Test {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[arg(long, value_enum, default_value = "rank")]
        method: MethodArg,
        /// Modulation samples JSON (defaults to the canonical witnesses).
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Construct the exactly M-invariant windowed generator.
    Construct {
        subgroup: PathBuf,
        /// Per-axis inclusive tile ranges, e.g. `0..3,-1..1`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Per-axis grid subdivisions, e.g. `4,4`.
        #[arg(long)]
        grid: String,
    },
    /// Support and dimension-function accounting (exit 1 if the support bound
    /// is violated).
    Support {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
    },
    /// Project a generator onto the principal M-invariant space of another.
    Project {
        /// Generator f spanning the principal space.
        #[arg(long)]
        f: PathBuf,
        /// Generator g to project.
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
    },
    /// Run the rank test across candidate subgroups and check verdict
    /// monotonicity along inclusions.
    Sweep {
        #[arg(long)]
        generators: PathBuf,
        /// Candidate subgroup JSON files (repeatable).
        #[arg(long = "candidate", required = true)]
        candidates: Vec<PathBuf>,
    },
    /// Render the residue-class partition of a window as SVG (d <= 2).
    Render {
        subgroup: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Output size in pixels along the longer axis.
        #[arg(long, default_value_t = 640)]
        size: u32,
    },
    /// Brute-force oracles for reproducing derived values.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Budgeted search for a representation of a point.
    Membership {
        subgroup: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 6)]
        bound: i64,
        #[arg(long, default_value_t = 12)]
        denominator: i64,
    },
    /// Enumerate the dual lattice inside a box.
    Dual {
        subgroup: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Distance from a complex vector to the span of others.
    Span {
        #[arg(long)]
        vector: PathBuf,
        #[arg(long)]
        span: PathBuf,
    },
    /// Seeded random instances checking that the three invariance tests
    /// agree (exit 1 on any disagreement).
    Equivalence {
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

fn run(cli: Cli) -> Result<Outcome, shiftinv::Error> {
    match cli.command {
        Command::Canon { subgroup } => commands::cmd_canon(&subgroup),
        Command::Dual { subgroup } => commands::cmd_dual(&subgroup),
        Command::Contains { subgroup, point } => commands::cmd_contains(&subgroup, &point),
        Command::Test { generators, subgroup, method, samples } => {
            let method = match method {
                MethodArg::Rank => TestMethod::Rank,
                MethodArg::Fiber => TestMethod::Fiber,
                MethodArg::Modulation => TestMethod::Modulation,
            };
            commands::cmd_test(&generators, &subgroup, method, samples.as_deref(), cli.tol)
        }
        Command::Construct { subgroup, window, grid } => {
            commands::cmd_construct(&subgroup, &window, &grid)
        }
        Command::Support { generators, subgroup } => {
            commands::cmd_support(&generators, &subgroup, cli.tol)
        }
        Command::Project { f, g, subgroup } => commands::cmd_project(&f, &g, &subgroup, cli.tol),
        Command::Sweep { generators, candidates } => {
            commands::cmd_sweep(&generators, &candidates, cli.tol)
        }
        Command::Render { subgroup, window, size } => {
            commands::cmd_render(&subgroup, &window, size)
        }
        Command::Oracle { what } => match what {
            OracleCommand::Membership { subgroup, point, bound, denominator } => {
                commands::cmd_oracle_membership(&subgroup, &point, bound, denominator)
            }
            OracleCommand::Dual { subgroup, bound } => commands::cmd_oracle_dual(&subgroup, bound),
            OracleCommand::Span { vector, span } => {
                commands::cmd_oracle_span(&vector, &span, cli.tol)
            }
            OracleCommand::Equivalence { instances } => {
                commands::cmd_oracle_equivalence(instances, cli.seed, cli.tol)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // per-cell work is deterministic regardless of pool size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            for warning in &outcome.warnings {
                eprintln!("warning: {warning}");
            }
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &outcome.output) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => println!("{}", outcome.output),
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
