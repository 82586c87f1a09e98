use clap::Parser;

use schur_scope_cli::{configure_threads, run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
    std::process::exit(run(cli));
}
