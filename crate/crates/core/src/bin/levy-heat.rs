use clap::{Parser, Subcommand};
use levy_heat::{acceptance, cli};
use std::path::PathBuf;
use std::process::ExitCode;

/// Heat content of Lévy processes: experiments, catalogue and self-test.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Overrides the Monte Carlo seed of the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config.
    Run { config: PathBuf },
    /// List model kinds, their parameters and applicable checks.
    ListModels,
    /// Run the acceptance suite.
    Selftest,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot set up {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match args.command {
        Command::ListModels => {
            print!("{}", cli::list_models());
            ExitCode::SUCCESS
        }
        Command::Selftest => {
            let mut ok = true;
            for c in acceptance::criteria() {
                let o = acceptance::run(c.0).expect("known criterion");
                println!("{o}");
                ok &= o.pass;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Run { config } => {
            let out_dir = std::env::var_os(cli::OUT_DIR_ENV).map(PathBuf::from);
            match cli::run_file(&config, args.seed, out_dir.as_deref()) {
                Ok(outcome) => {
                    for d in &outcome.diagnostics {
                        eprintln!("{d}");
                    }
                    for r in &outcome.reports {
                        println!("{r}");
                    }
                    for f in &outcome.files {
                        println!("wrote {}", f.display());
                    }
                    ExitCode::from(outcome.exit.code() as u8)
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(if matches!(e, levy_heat::Error::Io(_)) { 2 } else { 1 })
                }
            }
        }
    }
}
