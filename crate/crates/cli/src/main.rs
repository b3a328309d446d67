//! `ccwb` — command-line front end for the constacyclic code workbench.
//!
//! Exit codes:
//!   0  success
//!   1  unexpected error
//!   2  precondition violated (also used by the argument parser)
//!   3  no equivalence criterion applies
//!   4  code is not Hermitian dual-containing
//!   5  I/O failure
//!   6  parse failure (constants, matrices, job files, tables)
//!   7  enumeration budget exhausted
//!   8  internal invariant violated
//!
//! Diagnostics go to stderr; stdout carries only the requested report.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

mod cmds;
mod matrix;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    /// Plain-text report.
    Human,
    /// Machine-readable JSON matching the library's serialized types.
    Json,
    /// Graphviz DOT (graph subcommand only).
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Exhaustive codeword enumeration.
    Brute,
    /// Information-set lower-bound method.
    Bz,
}

#[derive(Parser)]
#[command(
    name = "ccwb",
    version,
    about = "Workbench for constacyclic codes over small finite fields",
    after_help = "Exit codes: 2 precondition, 3 no criterion, 4 not dual-containing, \
                  5 I/O, 6 parse, 7 budget, 8 internal."
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,

    /// Cap the worker thread pool.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

/// Flags identifying one constacyclic family and, optionally, a member.
#[derive(clap::Args, Debug)]
pub struct FamilyArgs {
    /// Field order q (a prime power).
    #[arg(short)]
    q: u32,

    /// Code length n with gcd(n, q) = 1.
    #[arg(short)]
    n: u64,

    /// Shift constant: an integer, or w^k / x^k for extension fields.
    #[arg(short, default_value = "1")]
    a: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the cyclotomic cosets of a family with their minimal
    /// polynomials and the ideal count.
    Cosets(FamilyArgs),

    /// Print the irreducible factorization of x^n - a over GF(q).
    Factor(FamilyArgs),

    /// Decide monomial equivalence of the a- and b-constacyclic families.
    Equiv {
        #[command(flatten)]
        family: FamilyArgs,

        /// Second shift constant.
        #[arg(short)]
        b: String,

        /// Solve and print the diagonal isometry witness.
        #[arg(long)]
        witness: bool,

        /// Check the witness on every family member with at most two
        /// cosets: images must be b-constacyclic with equal weights.
        #[arg(long)]
        verify: bool,
    },

    /// Classification graph of all shift constants at length n.
    Graph {
        /// Field order q.
        #[arg(short)]
        q: u32,

        /// Code length n with gcd(n, q) = 1.
        #[arg(short)]
        n: u64,
    },

    /// Minimum distance of a constacyclic code or an explicit matrix.
    Mindist {
        #[command(flatten)]
        family: FamilyArgs,

        /// Defining set as coset labels, e.g. Z10,Z19.
        #[arg(short = 'D', value_delimiter = ',')]
        defining: Vec<String>,

        /// Generator matrix file instead of a family spec.
        #[arg(long, conflicts_with_all = ["defining"])]
        matrix: Option<PathBuf>,

        #[arg(long, value_enum, default_value_t = Engine::Bz)]
        engine: Engine,

        /// Stop as soon as d >= target is proven.
        #[arg(long)]
        target: Option<u64>,

        /// Cap on enumerated codewords (degrades the result to a bound).
        #[arg(long)]
        budget: Option<u64>,

        /// Append JSONL progress snapshots to this file.
        #[arg(long)]
        progress: Option<PathBuf>,
    },

    /// Equivalence-pruned search against a best-known-codes table.
    Search {
        /// Job description (JSON).
        #[arg(long)]
        job: PathBuf,

        /// CSV table q,n,k,d; omitted means every find is low-confidence.
        #[arg(long)]
        table: Option<PathBuf>,

        /// Append-only JSONL store for discoveries.
        #[arg(long)]
        store: PathBuf,
    },

    /// Construction X over a nested pair from one family.
    Constructx {
        #[command(flatten)]
        family: FamilyArgs,

        /// Defining set of the larger code C1.
        #[arg(long, value_delimiter = ',')]
        outer: Vec<String>,

        /// Defining set of the subcode C2 (a superset of cosets).
        #[arg(long, value_delimiter = ',')]
        inner: Vec<String>,

        /// Auxiliary code matrix file; defaults to the full space of
        /// length dim C1 - dim C2.
        #[arg(long)]
        aux: Option<PathBuf>,

        /// Search the coset-to-auxiliary pairings for the best gluing;
        /// the reported distance is then exact, at the cost of a
        /// low-weight word sweep of C1.
        #[arg(long)]
        optimize: bool,

        /// Also compute the exact distance of the output.
        #[arg(long)]
        verify: bool,
    },

    /// Construction XX over one code and two subcodes.
    Constructxx {
        #[command(flatten)]
        family: FamilyArgs,

        /// Defining set of the base code C.
        #[arg(long, value_delimiter = ',')]
        base: Vec<String>,

        /// Defining set of the first subcode.
        #[arg(long, value_delimiter = ',')]
        sub1: Vec<String>,

        /// Defining set of the second subcode.
        #[arg(long, value_delimiter = ',')]
        sub2: Vec<String>,

        /// Auxiliary code matrix files (default: full spaces).
        #[arg(long)]
        aux1: Option<PathBuf>,

        #[arg(long)]
        aux2: Option<PathBuf>,

        /// Also compute the exact distance of the output.
        #[arg(long)]
        verify: bool,
    },

    /// Quantum stabilizer parameters from a Hermitian dual-containing
    /// GF(4) code, or directly from classical parameters.
    Quantum {
        /// Field order q (must be 4 for code construction).
        #[arg(short, required_unless_present = "params")]
        q: Option<u32>,

        /// Code length n with gcd(n, q) = 1.
        #[arg(short, required_unless_present = "params")]
        n: Option<u64>,

        /// Shift constant.
        #[arg(short, default_value = "1")]
        a: String,

        /// Defining set as coset labels.
        #[arg(short = 'D', value_delimiter = ',')]
        defining: Vec<String>,

        /// Skip code construction: derive [[n, 2k-n, d]] from "n,k,d".
        #[arg(long, conflicts_with_all = ["defining", "q", "n"])]
        params: Option<String>,
    },
}

fn exit_code(err: &anyhow::Error) -> i32 {
    use ccwb_core::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Precondition(_)) => 2,
        Some(Error::NoCriterion(_)) => 3,
        Some(Error::NotDualContaining(_)) => 4,
        Some(Error::Io(_)) => 5,
        Some(Error::Parse(_) | Error::Json(_) | Error::Table { .. }) => 6,
        Some(Error::Budget(_)) => 7,
        Some(Error::Internal(_)) => 8,
        None => 1,
    }
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    match &cli.cmd {
        Cmd::Cosets(fam) => cmds::cosets(fam, cli.output),
        Cmd::Factor(fam) => cmds::factor(fam, cli.output),
        Cmd::Equiv { family, b, witness, verify } => {
            cmds::equiv(family, b, *witness, *verify, cli.output)
        }
        Cmd::Graph { q, n } => cmds::graph(*q, *n, cli.output),
        Cmd::Mindist { family, defining, matrix, engine, target, budget, progress } => {
            cmds::mindist(
                family,
                defining,
                matrix.as_deref(),
                *engine,
                *target,
                *budget,
                progress.clone(),
                cli.output,
            )
        }
        Cmd::Search { job, table, store } => {
            cmds::search(job, table.as_deref(), store, cli.output)
        }
        Cmd::Constructx { family, outer, inner, aux, optimize, verify } => {
            cmds::constructx(family, outer, inner, aux.as_deref(), *optimize, *verify, cli.output)
        }
        Cmd::Constructxx { family, base, sub1, sub2, aux1, aux2, verify } => cmds::constructxx(
            family,
            base,
            sub1,
            sub2,
            aux1.as_deref(),
            aux2.as_deref(),
            *verify,
            cli.output,
        ),
        Cmd::Quantum { q, n, a, defining, params } => {
            cmds::quantum(*q, *n, a, defining, params.as_deref(), cli.output)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = ccwb_core::configure_threads(t) {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(report) => {
            let payload = if report.ends_with('\n') { report } else { report + "\n" };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, payload) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        std::process::exit(5);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    if stdout.write_all(payload.as_bytes()).is_err() {
                        std::process::exit(5);
                    }
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(exit_code(&e));
        }
    }
}
