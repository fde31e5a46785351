//! The `depthfill` command-line tool.
//!
//! Each subcommand lives in its own module with a clap `Args` struct and
//! a `run` function. Parallelism is decided here and only across frames;
//! the library underneath is single-threaded and deterministic.

pub mod bench;
pub mod complete;
pub mod config;
pub mod eval;
pub mod frames;
pub mod sweep;
pub mod viz;

use anyhow::Result;
use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "depthfill", version, about = "Sparse-to-dense LIDAR depth completion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Complete(complete::Args),
    Eval(eval::Args),
    Sweep(sweep::Args),
    Bench(bench::Args),
    Viz(viz::Args),
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Complete(a) => complete::run(a),
        Command::Eval(a) => eval::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Viz(a) => viz::run(a),
    }
}
