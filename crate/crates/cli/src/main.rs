use clap::Parser;
use tridiag_spectra_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = tridiag_spectra_cli::run(cli) {
        eprintln!("tridiag-spectra: {e}");
        std::process::exit(e.exit_code());
    }
}
