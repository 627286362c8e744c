use std::process::ExitCode;

use clap::Parser;

use probdel_cli::args::{Cli, Command, Format};
use probdel_cli::{commands, CliError, Outcome, EXIT_VERIFICATION_FAILED};

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    Ok(match &cli.command {
        Command::Verify(args) => commands::verify(args, cli.seed),
        Command::Fidelity(args) => commands::fidelity(args)?.into(),
        Command::Sweep(args) => commands::sweep(args)?.into(),
        Command::Table(args) => commands::table(args)?.into(),
        Command::Optimize(args) => commands::optimize(args)?.into(),
    })
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    let record = &outcome.record;
    let body = match cli.format {
        Format::Csv => {
            for note in &record.notes {
                eprintln!("note: {note}");
            }
            record.to_csv()
        }
        Format::Json => record.to_json(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| emit(&cli, &outcome).map(|()| outcome));
    match result {
        Ok(Outcome {
            failed_check: None, ..
        }) => ExitCode::SUCCESS,
        Ok(Outcome {
            failed_check: Some(name),
            ..
        }) => {
            eprintln!("error: verification failed: {name}");
            ExitCode::from(EXIT_VERIFICATION_FAILED as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
