use clap::Parser;

fn main() {
    let cli = fleetgame::cli::Cli::parse();
    std::process::exit(fleetgame::cli::run(cli));
}
