use clap::Parser;

fn main() {
    let cli = match hyperct_cli::app::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit cleanly; genuine
            // usage mistakes are input errors under the exit-code contract.
            let wanted = e.exit_code() == 0;
            let _ = e.print();
            std::process::exit(if wanted { 0 } else { 3 });
        }
    };
    std::process::exit(hyperct_cli::app::run(cli));
}
