use clap::Parser;

fn main() {
    let cli = twistvo_cli::Cli::parse();
    std::process::exit(twistvo_cli::main_with(&cli));
}
