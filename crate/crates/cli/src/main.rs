mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let doc = match commands::run(&cli) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = output::emit(&doc, &cli) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if doc.failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed checks: {}", doc.failed.join(", "));
        ExitCode::from(2)
    }
}
