mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact and Monte Carlo experiments on Aut(F_n)-actions on representation
/// spaces.
///
/// Exit status: 0 positive verdict or pass, 1 negative verdict (witness,
/// refutation, failed check), 2 input error, 3 inconclusive.
#[derive(Parser, Debug)]
#[command(name = "autfn", version)]
struct Cli {
    /// Report JSON path; printed to stdout when absent
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for parallel routines
    #[arg(long, global = true, env = "AUTFN_THREADS")]
    threads: Option<usize>,

    /// Run every batch routine sequentially
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zariski-density certificate for the group generated by a tuple in SL_d
    Density(DensityArgs),
    /// Scan primitive words for a non-unipotent image
    Puscan(PuscanArgs),
    /// Simultaneous triangularization of a unipotent tuple
    Kolchin(InputArgs),
    /// Sample check that a coset x·H lies in the conjugacy class of x
    Coset(CosetArgs),
    /// Random Nielsen walk on SU(2)^n with trace statistics
    Walk(WalkArgs),
    /// Minimality or generating-pair density probe on SU(2)
    Probe(ProbeArgs),
    /// Built-in example constructions
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Finite-order audit of primitive images in the affine Q8 example
    Burnside(BurnsideArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Tuple file: JSON array of matrix documents
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct DensityArgs {
    /// Tuple file: JSON array of matrix documents in SL_d
    #[arg(short, long)]
    input: PathBuf,
    /// Longest word whose adjoint image enters the span
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    word_budget: u64,
    /// Also list proper sub-tuples that are already dense
    #[arg(long)]
    redundancy: bool,
}

#[derive(Args, Debug)]
struct PuscanArgs {
    /// Tuple file over the rationals, Gaussian rationals or Laurent polynomials
    #[arg(short, long)]
    input: PathBuf,
    /// Longest primitive word scanned
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    max_len: u64,
    /// Cap on words queued by primitive enumeration
    #[arg(long, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Also scan Nielsen-modified tuples with short primitives
    #[arg(long)]
    extended: bool,
}

#[derive(Args, Debug)]
struct CosetArgs {
    /// Matrix document for x
    #[arg(long)]
    x: PathBuf,
    /// Exponents k_i of the torus t ↦ diag(t^k_1, …, t^k_d)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "h")]
    exponents: Option<Vec<i64>>,
    /// Parameter values sampled on the torus
    #[arg(long, default_value = "2,3,5,-1,7/2", allow_hyphen_values = true)]
    params: String,
    /// Tuple file of generators of H
    #[arg(long)]
    h: Option<PathBuf>,
    /// Longest word in the generators of H sampled
    #[arg(long, default_value_t = 3)]
    word_len: usize,
    /// Power depth of the wedge-trace obstruction
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
}

#[derive(Args, Debug)]
struct WalkArgs {
    /// Rank n ≥ 3 of the tuple
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
    rank: u64,
    /// Nielsen moves applied after the start tuple
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    /// Seeds the Haar-random start and the walk
    #[arg(long)]
    seed: u64,
    /// Steps discarded before the trace statistic
    #[arg(long, default_value_t = 1_000)]
    burn_in: usize,
    /// CSV of coordinate traces: step,trace1,…,tracen
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Fail when the KS distance exceeds this value
    #[arg(long)]
    max_ks: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProbeKind {
    Pair,
    Minimality,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    #[arg(long, value_enum)]
    kind: ProbeKind,
    /// Seeds the Haar-random tuples of every trial
    #[arg(long)]
    seed: u64,
    /// Independent random instances
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Target distance on SU(2), as a great-circle angle
    #[arg(long)]
    epsilon: f64,
    /// Pair probe: longest word evaluated
    #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u64).range(1..))]
    word_len: u64,
    /// Minimality probe: rank of the tuples
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
    rank: u64,
    /// Minimality probe: most Nielsen moves returned
    #[arg(long, default_value_t = 5_000)]
    move_budget: usize,
}

#[derive(Subcommand, Debug)]
enum ExamplesAction {
    /// Run every construction self-check and the primitive audit
    VerifyAll {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        audit_len: u64,
    },
}

#[derive(Args, Debug)]
struct BurnsideArgs {
    /// Longest primitive word audited
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_len: u64,
}

fn configure_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads.filter(|&n| n > 0) {
        // a pool may already exist when embedded; the first one wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let exec = if cli.sequential { autfn::par::Exec::Sequential } else { autfn::par::Exec::default() };
    let ctx = commands::Context { exec, output: cli.output.clone() };
    let result = match &cli.command {
        Command::Density(a) => commands::density(&ctx, &a.input, a.word_budget as usize, a.redundancy),
        Command::Puscan(a) => commands::puscan(&ctx, &a.input, a.max_len as usize, a.budget as usize, a.extended),
        Command::Kolchin(a) => commands::kolchin(&ctx, &a.input),
        Command::Coset(a) => commands::coset(
            &ctx,
            &commands::CosetRequest {
                x: a.x.clone(),
                exponents: a.exponents.clone(),
                params: a.params.clone(),
                h: a.h.clone(),
                word_len: a.word_len,
                depth: a.depth,
            },
        ),
        Command::Walk(a) => commands::walk(
            &ctx,
            &commands::WalkRequest {
                rank: a.rank as usize,
                steps: a.steps as usize,
                seed: a.seed,
                burn_in: a.burn_in,
                csv: a.csv.clone(),
                max_ks: a.max_ks,
            },
        ),
        Command::Probe(a) => commands::probe(
            &ctx,
            &commands::ProbeRequest {
                pair: a.kind == ProbeKind::Pair,
                seed: a.seed,
                trials: a.trials as usize,
                epsilon: a.epsilon,
                word_len: a.word_len as usize,
                rank: a.rank as usize,
                move_budget: a.move_budget,
            },
        ),
        Command::Examples { action: ExamplesAction::VerifyAll { audit_len } } => {
            commands::verify_all(&ctx, *audit_len as usize)
        }
        Command::Burnside(a) => commands::burnside(&ctx, a.max_len as usize),
    };
    match result.and_then(|outcome| ctx.emit(outcome)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
