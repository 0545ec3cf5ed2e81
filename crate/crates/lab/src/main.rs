use clap::Parser;

fn main() {
    let cli = mstlab::cli::Cli::parse();
    if let Err(e) = mstlab::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
