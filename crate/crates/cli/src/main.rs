use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latlab_core::chains::DEFAULT_CHAIN_LIMIT;

mod commands;
mod input;
mod report;
mod selftest;

/// Coverings, multiplicities and completions of finite lattices.
///
/// LATTICE arguments are JSON files ({"elements": [...], "covers": [[lo, hi], ...]})
/// or built-in fixtures written @m5, @n5, @boolean:3, @subspace_lattice:2:3,
/// @product:2:3, @ladder:4, @chain:5, @downsets_of_random_poset:6:7.
#[derive(Parser)]
#[command(name = "latlab", version)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice and report modularity and distributivity.
    Check { lattice: String },
    /// List projective-equivalence classes of coverings.
    Coverings { lattice: String },
    /// Multiplicities of each class over maximal chains.
    Chains {
        lattice: String,
        /// Cap on enumerated maximal chains.
        #[arg(long, env = "LATLAB_MAX_CHAINS", default_value_t = DEFAULT_CHAIN_LIMIT)]
        max_chains: usize,
        /// Restrict the table to one class id.
        #[arg(long)]
        class: Option<usize>,
    },
    /// The filter lattice (or, with --ideals, the ideal lattice).
    Filters {
        lattice: String,
        #[arg(long)]
        ideals: bool,
    },
    /// Closed-form infinite fixtures.
    Omega {
        #[arg(long, default_value = "ladder")]
        fixture: String,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Steps, coverage and closure for a proof problem file.
    Proof {
        file: String,
        /// Accepted for compatibility; all orders agree for finite algebras.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Run the bundled fixture suite.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { lattice } => commands::check(lattice),
        Command::Coverings { lattice } => commands::coverings(lattice),
        Command::Chains { lattice, max_chains, class } => commands::chains(lattice, *max_chains, *class),
        Command::Filters { lattice, ideals } => commands::filters(lattice, *ideals),
        Command::Omega { fixture, depth } => commands::omega(fixture, *depth),
        Command::Proof { file, order } => commands::proof(file, *order),
        Command::Selftest => Ok(selftest::run()),
    };
    match result {
        Ok(report) => {
            print!("{}", if cli.json { report.render_json() } else { report.render_text() });
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            if cli.json {
                println!("{}", serde_json::json!({ "format": report::FORMAT, "error": msg }));
            }
            eprintln!("latlab: {msg}");
            ExitCode::from(2)
        }
    }
}
