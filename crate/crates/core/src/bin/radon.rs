use clap::Parser;

fn main() {
    // Configuration errors exit with 1; clap would use 2 by default, which
    // is reserved for mathematical domain errors here.
    let cli = match radon_lines::cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    std::process::exit(radon_lines::cli::run(&cli));
}
