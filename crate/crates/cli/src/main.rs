use std::process::ExitCode;

use clap::Parser;
use kauffman_cli::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = kauffman_cli::run(&cli);
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&result.to_json()).expect("JSON values always serialize")
        );
    } else {
        if !result.text.is_empty() {
            println!("{}", result.text);
        }
        let prefix = if result.status == kauffman_cli::Status::Ok {
            "note"
        } else {
            "error"
        };
        for d in &result.diagnostics {
            eprintln!("{prefix}: {d}");
        }
    }
    ExitCode::from(result.exit_code())
}
