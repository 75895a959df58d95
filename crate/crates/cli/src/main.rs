use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dgql::{execute, parse_degrees, Command, Job, DEFAULT_TRUNCATION};

#[derive(Parser)]
#[command(name = "dgql", version, about = "Exact computations with dg quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Weight truncation N (default: $DGQL_TRUNCATE or 8).
    #[arg(long, global = true)]
    truncate: Option<u32>,

    /// Degree window `<a>..<b>`.
    #[arg(long, global = true, value_parser = parse_degrees, allow_hyphen_values = true)]
    degrees: Option<(i32, i32)>,

    /// Emit sorted `key=value` lines.
    #[arg(long, global = true)]
    machine: bool,

    /// Seed for randomized inputs (random twists in `.tree` files).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Calabi-Yau parameter for trivial extensions.
    #[arg(long = "d", global = true, default_value_t = 2, allow_hyphen_values = true)]
    d: i32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check d² = 0 up to the truncation (.dgq, .qpot, .aug).
    D2check { input: PathBuf },
    /// Cohomology dimensions per degree and weight (.dgq, .qpot, .aug).
    Cohomology { input: PathBuf },
    /// Dimensions of the truncated Jacobian algebra (.qpot).
    Jacobian { input: PathBuf },
    /// Emit the Ginzburg dg algebra as a .dgq file (.qpot).
    Ginzburg { input: PathBuf },
    /// Bar complex dimensions and identities, tensor length <= N (.aug).
    Bar { input: PathBuf },
    /// Dual bar construction and its cohomology (.aug).
    Dualbar { input: PathBuf },
    /// Walk-rescaling isomorphism onto the untwisted trivial extension (.tree).
    TrivextIso { input: PathBuf },
    /// Graded Calabi-Yau dimension symmetry (.tree).
    CyCheck { input: PathBuf },
    /// Self-injectivity and Nakayama permutation (.alg, .tree).
    SelfinjCheck { input: PathBuf },
    /// Stable Hom dimensions between modules (.alg or .tree, then .mod).
    StableHom { algebra: PathBuf, modules: PathBuf },
    /// Shifted Hom dimensions over the degree window (.alg or .tree, then .mod).
    ShiftedHom { algebra: PathBuf, modules: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, inputs) = match cli.command {
        Cmd::D2check { input } => (Command::D2Check, vec![input]),
        Cmd::Cohomology { input } => (Command::Cohomology, vec![input]),
        Cmd::Jacobian { input } => (Command::Jacobian, vec![input]),
        Cmd::Ginzburg { input } => (Command::Ginzburg, vec![input]),
        Cmd::Bar { input } => (Command::Bar, vec![input]),
        Cmd::Dualbar { input } => (Command::DualBar, vec![input]),
        Cmd::TrivextIso { input } => (Command::TrivextIso, vec![input]),
        Cmd::CyCheck { input } => (Command::CyCheck, vec![input]),
        Cmd::SelfinjCheck { input } => (Command::SelfInjCheck, vec![input]),
        Cmd::StableHom { algebra, modules } => (Command::StableHom, vec![algebra, modules]),
        Cmd::ShiftedHom { algebra, modules } => (Command::ShiftedHom, vec![algebra, modules]),
    };
    let truncation = match cli.truncate {
        Some(n) => n,
        None => match std::env::var("DGQL_TRUNCATE") {
            Ok(v) => match v.trim().parse() {
                Ok(n) => n,
                Err(_) => {
                    eprintln!("error: DGQL_TRUNCATE must be a positive integer, found `{v}`");
                    return ExitCode::from(2);
                }
            },
            Err(_) => DEFAULT_TRUNCATION,
        },
    };
    let mut job = Job::new(command, inputs);
    job.truncation = truncation;
    job.degrees = cli.degrees;
    job.machine = cli.machine;
    job.seed = cli.seed;
    job.d = cli.d;
    let out = execute(&job);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
