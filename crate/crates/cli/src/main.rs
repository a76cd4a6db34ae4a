//! `hurwitz`: braid-orbit, homology, and class-group-statistics
//! experiments with persisted, deterministic reports.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use hurwitz_cli::commands::{self, Ctx};
use hurwitz_cli::config::Config;
use hurwitz_cli::{acceptance, plot, CliError};

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Braid-orbit and class-group statistics experiments")]
struct Cli {
    /// Flat `key = value` config file supplying parameter defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// RNG seed for sampling commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    force: bool,
    /// Directory receiving report files.
    #[arg(long, global = true, default_value = "reports")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Braid-orbit decomposition with its three invariants per degree.
    Orbits {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        class_rep: Option<String>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Graded dimensions and the central stabilizer element.
    Ring {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        class_rep: Option<String>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        d_max: Option<usize>,
    },
    /// Koszul-type complex: identity checks and homology dimensions.
    Kcomplex {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        class_rep: Option<String>,
        #[arg(long)]
        n_max: Option<usize>,
        /// `ring` or `free:<k>`.
        #[arg(long)]
        module: Option<String>,
    },
    /// Betti numbers b_0/b_1 and the stabilization map over a window.
    Homology {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        class_rep: Option<String>,
        /// Homological degree, 0 or 1.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        d_max: Option<usize>,
    },
    /// Monte-Carlo cokernel moments of random matrices over Z_l.
    ClSample {
        #[arg(long)]
        l: Option<u64>,
        /// Matrix size N (cokernel of an N x N matrix).
        #[arg(long)]
        matrix_n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        e_cap: Option<u32>,
        /// Comma-separated targets, e.g. `1,2,1+1`.
        #[arg(long)]
        targets: Option<String>,
    },
    /// Brute-force symplectic orbit transitivity check.
    SpCheck {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        l: Option<u64>,
        /// Single target partition, e.g. `1`.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        q_residue: Option<u64>,
    },
    /// Exhaustive hyperelliptic class-group census over F_q.
    FfCensus {
        #[arg(long)]
        q: Option<u64>,
        /// Odd discriminant degree.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        targets: Option<String>,
    },
    /// Render an SVG chart from a previously written JSON report.
    Plot {
        /// betti-vs-n | distribution-vs-mu | hq-vs-q
        #[arg(long)]
        kind: String,
        /// Path to the source JSON report.
        #[arg(long)]
        input: PathBuf,
        /// Output file name inside --out-dir (default `<kind>.svg`).
        #[arg(long)]
        output: Option<String>,
    },
    /// Run the full acceptance suite; exit 4 on any failure.
    Verify,
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let ctx = Ctx {
        config,
        seed: cli.seed,
        jobs: cli.jobs,
        out_dir: cli.out_dir.clone(),
        force: cli.force,
    };
    let started = Instant::now();
    let written = match &cli.command {
        Cmd::Orbits { group, class_rep, n_max } => {
            commands::orbits(&ctx, group.as_deref(), class_rep.as_deref(), *n_max)?
        }
        Cmd::Ring { group, class_rep, n_max, d_max } => {
            commands::ring(&ctx, group.as_deref(), class_rep.as_deref(), *n_max, *d_max)?
        }
        Cmd::Kcomplex { group, class_rep, n_max, module } => commands::kcomplex(
            &ctx,
            group.as_deref(),
            class_rep.as_deref(),
            *n_max,
            module.as_deref(),
        )?,
        Cmd::Homology { group, class_rep, p, n_min, n_max, d_max } => commands::homology(
            &ctx,
            group.as_deref(),
            class_rep.as_deref(),
            *p,
            *n_min,
            *n_max,
            *d_max,
        )?,
        Cmd::ClSample { l, matrix_n, samples, e_cap, targets } => commands::cl_sample(
            &ctx,
            *l,
            *matrix_n,
            *samples,
            *e_cap,
            targets.as_deref(),
        )?,
        Cmd::SpCheck { genus, l, target, q_residue } => {
            commands::sp_check(&ctx, *genus, *l, target.as_deref(), *q_residue)?
        }
        Cmd::FfCensus { q, n, l, targets } => {
            commands::ff_census(&ctx, *q, *n, *l, targets.as_deref())?
        }
        Cmd::Plot { kind, input, output } => plot::plot(&ctx, kind, input, output.as_deref())?,
        Cmd::Verify => {
            let bin = acceptance::self_binary();
            let jobs = cli.jobs.unwrap_or(4).max(1);
            let outcomes = acceptance::run_all(&bin, jobs);
            let mut failed = 0usize;
            for o in &outcomes {
                match &o.verdict {
                    Ok(detail) => println!("criterion {:2} PASS  {}: {detail}", o.id, o.name),
                    Err(msg) => {
                        failed += 1;
                        println!("criterion {:2} FAIL  {}: {msg}", o.id, o.name);
                    }
                }
            }
            eprintln!("verify finished in {:.1}s", started.elapsed().as_secs_f64());
            if failed > 0 {
                return Err(CliError::Acceptance(format!("{failed} of {} criteria failed", outcomes.len())));
            }
            println!("all {} criteria passed", outcomes.len());
            return Ok(());
        }
    };
    // Wall-clock goes to stderr only, so report bytes stay reproducible.
    eprintln!(
        "wrote {} file(s) in {:.2}s",
        written.len(),
        started.elapsed().as_secs_f64()
    );
    for p in written {
        eprintln!("  {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hurwitz: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
