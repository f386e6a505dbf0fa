use clap::Parser;

fn main() {
    let cli = orbikos::cli::Cli::parse();
    std::process::exit(orbikos::cli::run(cli));
}
