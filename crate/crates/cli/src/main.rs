mod commands;
mod input;

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use preproj_core::RunReport;

/// Preprojective algebras of Dynkin quivers, computed three ways and compared.
#[derive(Parser)]
#[command(name = "preproj", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimension tables of the chosen constructions.
    Dims(commands::DimsArgs),
    /// Build all constructions and check they agree.
    Verify(commands::VerifyArgs),
    /// Solve and check the rescaling to the standard relations.
    Rescale(commands::RescaleArgs),
    /// A window of the translation quiver, its meshes and Hom dimensions.
    Mesh(commands::MeshArgs),
    /// Dynkin type, tree and cycle information.
    Classify(commands::ClassifyArgs),
    /// The bimodule Ext¹(DA, A) with its arrow actions.
    Omega(commands::OmegaArgs),
}

fn color_enabled() -> bool {
    match std::env::var("PREPROJ_COLOR").as_deref() {
        Ok("1") => true,
        Ok(_) => false,
        Err(_) => false,
    }
}

fn print_checks(report: &RunReport) {
    let color = color_enabled();
    let paint = |pass: bool| match (pass, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    for c in &report.checks {
        println!("{} {}: {}", paint(c.pass), c.name, c.detail);
    }
    if let Some(t) = &report.timings_ms {
        for (k, ms) in t {
            println!("time {k}: {ms} ms");
        }
    }
    if !report.checks.is_empty() {
        println!("result: {}", paint(report.pass));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, json) = match &cli.command {
        Command::Dims(a) => (commands::dims(a), a.common.json),
        Command::Verify(a) => (commands::verify(a), a.common.json),
        Command::Rescale(a) => (commands::rescale(a), a.common.json),
        Command::Mesh(a) => (commands::mesh(a), a.common.json),
        Command::Classify(a) => (commands::classify_cmd(a), a.common.json),
        Command::Omega(a) => (commands::omega_cmd(a), a.common.json),
    };
    match outcome {
        Ok(out) => {
            if json {
                println!("{}", out.report.to_json());
            } else {
                print!("{}", out.text);
                print_checks(&out.report);
            }
            if out.report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if std::io::stderr().is_terminal() && color_enabled() {
                eprintln!("\x1b[31merror\x1b[0m: {e:#}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
