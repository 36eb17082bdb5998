use anf_tdepth::cli::{run, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    std::process::exit(run(cli, &mut stdout));
}
