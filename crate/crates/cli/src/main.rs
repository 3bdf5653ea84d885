use clap::Parser;
use coxdl_cli::{run, Cli, Command};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Command::Accept { .. } = cli.command {
        for v in &report.verdicts {
            eprintln!("{}: {} {}", v.name, if v.pass { "PASS" } else { "FAIL" }, v.params);
        }
    }
    match cli.opts.format {
        coxdl_cli::config::Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
        coxdl_cli::config::Format::Csv => match report.csv.clone().map(Ok).unwrap_or_else(|| report.verdicts_csv()) {
            Ok(text) => print!("{text}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
