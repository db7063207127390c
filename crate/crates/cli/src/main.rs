mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = run::run(cli.command, &cli.opts);
    if let Some(text) = &outcome.output {
        let _ = std::io::stdout().write_all(text.as_bytes());
        if let Some(path) = &cli.opts.out {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(run::EXIT_USAGE as u8);
            }
        }
    }
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("{msg}");
    }
    ExitCode::from(outcome.exit as u8)
}
