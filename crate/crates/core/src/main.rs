use clap::Parser;

use ridgenet::cli::{build_pool, exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    let pool = match build_pool(cli.workers) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    if let Err(e) = pool.install(|| run(cli.command)) {
        eprintln!("error: {e}");
        if let ridgenet::Error::ConstructionFailed { trace, .. } = &e {
            for line in trace {
                eprintln!("  {line}");
            }
        }
        std::process::exit(exit_code(&e));
    }
}
