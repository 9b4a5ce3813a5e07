use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use tca::koszul::Side;
use tca::report::Report;
use tca::suites::{self, DecomposeOp, Profile};
use tca::{Partition, Result};

#[derive(Parser)]
#[command(name = "tca", version, about = "Finite-rank checks for the super tca Sym(Sym²(V)[1]) and its relatives")]
struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time per suite (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Wedge,
    Sym,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Sym,
    Wedge,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// List the Q1 partitions of a given size.
    Q1 {
        #[arg(long)]
        size: usize,
    },
    /// Littlewood-Richardson coefficient c^ν_{λμ}.
    Lr {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
    },
    /// Complementary-shape scan in the n×k rectangle.
    Rect {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Schur decomposition of Λ^d(Sym² ℂⁿ) or Sym^d(Sym² ℂⁿ).
    Decompose {
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Top y-only component of A at rank n.
    PnTop {
        #[arg(long)]
        n: usize,
    },
    /// Element of 𝔭ₙ with nonzero residue modulo 𝔪.
    UnitIdeal {
        #[arg(long)]
        n: usize,
    },
    /// Highest weight check for y(n)·x_λ.
    Hwv {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        n: usize,
    },
    /// Orbit-ideal membership of the highest weight vector of S_λ.
    EssBound {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        n0: usize,
    },
    /// Dimension count for 𝔟ₙ + 𝔭𝔢ₙ.
    Iwasawa {
        #[arg(long)]
        n: usize,
    },
    /// Signed Brauer category.
    Brauer {
        #[command(subcommand)]
        command: BrauerCommand,
    },
    /// The map φ into the coordinate ring of the Borel.
    Phi {
        #[command(subcommand)]
        command: PhiCommand,
    },
    /// Ext multiplicity between simples, under both variance readings.
    Ext {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
    },
    /// Counting claims separating Sym(Sym²) from Λ(Sym²).
    Remark {
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
    /// Run every suite of a profile.
    VerifyAll {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
    },
}

#[derive(Subcommand)]
enum BrauerCommand {
    /// Compose two diagrams, `g ∘ f`. Diagrams read `P->Q : (a b)... map s:t ...`.
    Compose {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
    },
    /// Dimension of Hom(p, q), by formula and by enumeration.
    Homdim {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Functoriality of the contraction functor.
    FunctorCheck {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Check every composable pair and basis tensor instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Subcommand)]
enum PhiCommand {
    /// Leading terms of X, Y, Z.
    Leading {
        #[arg(long)]
        n: usize,
    },
    /// Distinct leading terms of X,Y,Z-monomials.
    Inject {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Cleared-denominator rewriting identities.
    Localize {
        #[arg(long)]
        n: usize,
    },
    /// ker(ν∘φ) = 𝔪 up to a central degree.
    Extend {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
}

fn dispatch(cli: &Cli) -> Result<Vec<tca::report::SuiteResult>> {
    let one = |r: Result<tca::report::SuiteResult>| r.map(|x| vec![x]);
    match &cli.command {
        Command::Q1 { size } => one(suites::q1(*size)),
        Command::Lr { lambda, mu, nu } => one(suites::lr(lambda, mu, nu)),
        Command::Rect { n, k } => one(suites::rect(*n, *k)),
        Command::Decompose { op, d, n } => {
            let op = match op {
                OpArg::Wedge => DecomposeOp::Wedge,
                OpArg::Sym => DecomposeOp::Sym,
            };
            one(suites::decompose(op, *d, *n))
        }
        Command::PnTop { n } => one(suites::pn_top(*n)),
        Command::UnitIdeal { n } => one(suites::unit_ideal(*n)),
        Command::Hwv { lambda, n } => one(suites::hwv(lambda, *n)),
        Command::EssBound { lambda, n0 } => one(suites::ess_bound(lambda, *n0)),
        Command::Iwasawa { n } => one(suites::iwasawa(*n)),
        Command::Brauer { command } => match command {
            BrauerCommand::Compose { g, f } => one(suites::brauer_compose(g, f)),
            BrauerCommand::Homdim { p, q } => one(suites::brauer_homdim(*p, *q)),
            BrauerCommand::FunctorCheck {
                n,
                max_size,
                trials,
                exhaustive,
            } => {
                if *exhaustive {
                    one(suites::brauer_functor_exhaustive(*n, *max_size))
                } else {
                    one(suites::brauer_functor(*n, *max_size, *trials, cli.seed))
                }
            }
        },
        Command::Phi { command } => match command {
            PhiCommand::Leading { n } => one(suites::phi_leading(*n)),
            PhiCommand::Inject { n, degree } => one(suites::phi_inject(*n, *degree)),
            PhiCommand::Localize { n } => one(suites::phi_localize(*n)),
            PhiCommand::Extend { n, degree } => one(suites::phi_extend(*n, *degree)),
        },
        Command::Ext { side, i, lambda, mu } => {
            let side = match side {
                SideArg::Sym => Side::Sym,
                SideArg::Wedge => Side::Wedge,
            };
            one(suites::ext(side, *i, lambda, mu))
        }
        Command::Remark { dmax } => one(suites::remark(*dmax)),
        Command::VerifyAll { profile } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            Ok(suites::verify_all(profile, cli.seed, cli.timing))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    if let Some(k) = std::env::var("TCA_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    let start = Instant::now();
    let mut results = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(64);
        }
    };
    if cli.timing && results.len() == 1 && results[0].timing_ms.is_none() {
        results[0].timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let report = Report::new(results);
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(74);
        }
    }
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}
