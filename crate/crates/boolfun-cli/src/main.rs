mod analyze;
mod args;
mod experiments;
mod report;
mod verifycmd;

use anyhow::Result;
use args::{Cli, Command};
use clap::Parser;
use std::time::Instant;

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify(a) => {
            let seed = args::resolve_seed(a.seed)?;
            let outcomes = verifycmd::run_suites(&a.scope, seed, a.inject_fault);
            let mut failures = 0usize;
            for o in &outcomes {
                let tag = if o.passed { "ok" } else { "FAIL" };
                println!("{tag} {}: {}", o.name, o.detail);
                failures += usize::from(!o.passed);
            }
            println!(
                "verify: {} of {} suites passed",
                outcomes.len() - failures,
                outcomes.len()
            );
            Ok(i32::from(failures > 0))
        }
        Command::JuntaExp(a) => {
            let seed = args::resolve_seed(a.seed)?;
            let start = Instant::now();
            let rows = experiments::junta_exp(&a, seed)?;
            print!(
                "{}",
                report::render(&rows, a.out, start.elapsed().as_secs_f64())
            );
            Ok(0)
        }
        Command::AaExp(a) => {
            let seed = args::resolve_seed(a.seed)?;
            let start = Instant::now();
            let rows = experiments::aa_exp(&a, seed)?;
            print!(
                "{}",
                report::render(&rows, a.out, start.elapsed().as_secs_f64())
            );
            Ok(0)
        }
        Command::Analyze(a) => {
            let seed = args::resolve_seed(a.seed)?;
            print!("{}", analyze::cmd_analyze(&a, seed)?);
            Ok(0)
        }
        Command::Tree(a) => {
            let seed = args::resolve_seed(a.seed)?;
            print!("{}", analyze::cmd_tree(&a, seed)?);
            Ok(0)
        }
    }
}
