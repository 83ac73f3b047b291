//! Command-line front end for the `biptw` solver library.

pub mod commands;
pub mod error;
pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{Family, Outcome, PackMode, Problem, Report};
pub use error::{CliError, CliResult};

use commands::{GenRequest, OracleRequest, SolveRequest};

#[derive(Debug, Parser)]
#[command(
    name = "biptw",
    version,
    about = "Exact optimization on graphs of small bipartite treewidth"
)]
pub struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a decomposition against a graph.
    Validate { graph: PathBuf, decomposition: PathBuf },

    /// Solve a problem with the dynamic program over a decomposition.
    Solve {
        problem: Problem,
        graph: PathBuf,
        decomposition: Option<PathBuf>,
        /// Build the decomposition from a minimum odd cycle transversal found by exhaustive search.
        #[arg(long)]
        oct_bruteforce: bool,
        /// Clique size for kt-cover.
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// Print a verified optimal partition.
        #[arg(long)]
        certificate: bool,
    },

    /// Solve a problem by exhaustive search.
    Oracle {
        problem: Problem,
        graph: PathBuf,
        /// Clique size for kt-cover.
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// Fix vertex `v` to part `i`, written `v:i`; may be repeated.
        #[arg(long = "pin", value_parser = parse_pin)]
        pins: Vec<(usize, usize)>,
    },

    /// Generate a graph family member.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Write the graph here instead of printing it.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
        /// Write the decomposition here (no-nice and planted random families).
        #[arg(long, global = true)]
        decomposition: Option<PathBuf>,
    },

    /// Colour a graph with at most width + 2 colours.
    Color { graph: PathBuf, decomposition: PathBuf },

    /// Maximum packing of a pattern graph.
    Pack {
        mode: PackMode,
        graph: PathBuf,
        decomposition: PathBuf,
        pattern: PathBuf,
    },
}

fn parse_pin(text: &str) -> Result<(usize, usize), String> {
    let (vertex, part) = text
        .split_once(':')
        .ok_or_else(|| format!("`{text}` is not of the form v:i"))?;
    let vertex = vertex.trim().parse().map_err(|_| format!("bad vertex in `{text}`"))?;
    let part = part.trim().parse().map_err(|_| format!("bad part in `{text}`"))?;
    Ok((vertex, part))
}

/// Runs one parsed command.
pub fn execute(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Validate { graph, decomposition } => commands::cmd_validate(graph, decomposition),
        Command::Solve {
            problem,
            graph,
            decomposition,
            oct_bruteforce,
            t,
            certificate,
        } => commands::cmd_solve(&SolveRequest {
            problem: *problem,
            graph: graph.clone(),
            decomposition: decomposition.clone(),
            oct_bruteforce: *oct_bruteforce,
            t: *t,
            certificate: *certificate,
        }),
        Command::Oracle {
            problem,
            graph,
            t,
            pins,
        } => commands::cmd_oracle(&OracleRequest {
            problem: *problem,
            graph: graph.clone(),
            t: *t,
            pins: pins.clone(),
        }),
        Command::Gen {
            family,
            output,
            decomposition,
        } => commands::cmd_gen(&GenRequest {
            family: family.clone(),
            output: output.clone(),
            decomposition: decomposition.clone(),
        }),
        Command::Color { graph, decomposition } => commands::cmd_color(graph, decomposition),
        Command::Pack {
            mode,
            graph,
            decomposition,
            pattern,
        } => commands::cmd_pack(*mode, graph, decomposition, pattern),
    }
}
