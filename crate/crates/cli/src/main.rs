//! `sumset`: generate instances, run and verify the solvers, benchmark their
//! scaling, and inspect covers, hash families and query structures.

mod bench;
mod files;
mod opts;
mod solve;
mod tools;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sumset", version, about = "Structured 3SUM toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a seeded instance to a directory.
    Gen(tools::GenArgs),
    /// Run one solver on instance files.
    Solve(solve::SolveArgs),
    /// Run a solver and its oracle; exit 1 on the first mismatch.
    Verify(solve::VerifyArgs),
    /// Size ladder with JSON-lines records and a log-log fit.
    Bench(bench::BenchArgs),
    /// Build and audit a BSG cover.
    Bsg(tools::BsgArgs),
    /// Build and audit a pseudo-additive hash family.
    HashFamily(tools::HashFamilyArgs),
    /// Histogram queries on a string.
    Hist(tools::HistArgs),
    /// (min,+) convolution of two sequences.
    Minplus(tools::MinplusArgs),
    /// Online membership queries in A + B.
    Online(tools::OnlineArgs),
    /// 3SUM on subsets of a preprocessed universe.
    Universe(tools::UniverseArgs),
}

/// How a command failed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, parameters or files: exit 2.
    Usage(String),
    /// A solver disagreed with its oracle or an audit failed: exit 1.
    Mismatch(String),
}

impl From<sumset_core::Error> for Failure {
    fn from(e: sumset_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Gen(a) => tools::gen(a),
        Cmd::Solve(a) => solve::solve(a),
        Cmd::Verify(a) => solve::verify(a),
        Cmd::Bench(a) => bench::bench(a),
        Cmd::Bsg(a) => tools::bsg(a),
        Cmd::HashFamily(a) => tools::hash_family(a),
        Cmd::Hist(a) => tools::hist(a),
        Cmd::Minplus(a) => tools::minplus(a),
        Cmd::Online(a) => tools::online(a),
        Cmd::Universe(a) => tools::universe(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
