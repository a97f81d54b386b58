use clap::Parser;

fn main() {
    let cli = gstar::cli::Cli::parse();
    let code = gstar::cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
