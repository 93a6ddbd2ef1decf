use clap::Parser;

use acuteprob::run::{self, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests are successes; anything else is a
            // usage error (exit 64)
            use clap::error::ErrorKind;
            match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{err}");
                    std::process::exit(run::EXIT_USAGE);
                }
            }
        }
    };
    match run::execute(cli.command) {
        Ok(artifact) => {
            print!("{artifact}");
        }
        Err(failure) => {
            eprintln!("{}", failure.json);
            std::process::exit(failure.exit_code);
        }
    }
}
