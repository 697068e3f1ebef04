use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use keyforge::exec::Exec;

mod args;
mod commands;
mod config;
mod parse;

use args::Cli;
use commands::UsageError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let start = Instant::now();
    let outcome = commands::run(&cli.command, exec);
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match outcome {
        Ok(out) => {
            if cli.json {
                let doc = serde_json::json!({"command": echo, "result": out.result, "ok": out.ok});
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                for line in &out.text {
                    println!("{line}");
                }
                eprintln!("({:.2?})", start.elapsed());
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let code = if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 };
            if cli.json {
                let doc = serde_json::json!({"command": echo, "error": format!("{e:#}"), "ok": false});
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(code)
        }
    }
}
