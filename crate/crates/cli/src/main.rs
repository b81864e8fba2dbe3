use clap::Parser;

fn main() {
    let cli = ethsm_cli::Cli::parse();
    if let Err(e) = ethsm_cli::run(cli) {
        eprintln!("ethsm: {e}");
        std::process::exit(e.exit_code());
    }
}
