//! Argument definitions and dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value;
use treesync_core::{Coloring, CouplingParams, Graph};

use crate::args::{parse_beta, parse_coloring};
use crate::commands::{self, SimulateArgs};
use crate::error::Result;
use crate::graphfile::read_graph;
use crate::output::{envelope, render_text};
use crate::study::{run_study, StudyConfig, StudyMode};

#[derive(Debug, Parser)]
#[command(name = "treesync", version, about = "Balanced colorings, symmetry and synchrony of tree networks")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest order for which balanced colorings are enumerated.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_n: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure, symmetry and coarsest synchrony of a graph.
    Analyze { graph: PathBuf },
    /// Every balanced coloring, classified.
    Colorings { graph: PathBuf },
    /// Quotient network of a balanced coloring (coarsest by default).
    Quotient {
        graph: PathBuf,
        /// Classes as `1,2;3,4`; unlisted vertices are singletons.
        #[arg(long)]
        coloring: Option<String>,
    },
    /// Leaf-pruning layers of a tree.
    Prune {
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<String>,
    },
    /// Spectrum of the linearization `DA + alpha I`.
    Spectrum {
        graph: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Coupling per degree, `DEGREE=VALUE`.
        #[arg(long, value_parser = parse_beta, num_args = 1.., allow_negative_numbers = true)]
        beta: Vec<(usize, f64)>,
    },
    /// Integrate an admissible field; optionally test decay to a cherry
    /// synchrony subspace.
    Simulate {
        graph: PathBuf,
        /// `linear:alpha=A,beta1=B1,...`, `example-nonlinear`,
        /// `contracting-leaf:kappa=K` or `zero`.
        #[arg(long)]
        field: String,
        /// Initial state, comma separated. Random when omitted.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        /// Range of random initial coordinates.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 5.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Cherries as `center:leaf,leaf;...`, or `all`.
        #[arg(long)]
        pack: Option<String>,
        /// Negative bound `N` on the leaf partial.
        #[arg(long, allow_negative_numbers = true)]
        rate_bound: Option<f64>,
        /// Start on this coloring's polydiagonal and track the deviation.
        #[arg(long)]
        coloring: Option<String>,
        /// Write the trajectory as CSV (`-` for standard output).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Relative slack of the decay bound.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Randomized study over graphs or trees.
    Study {
        #[arg(long, value_enum, default_value_t = StudyMode::ErAsymmetric)]
        mode: StudyMode,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        n_min: usize,
        #[arg(long, default_value_t = 25)]
        n_max: usize,
        #[arg(long, default_value_t = 0.2)]
        p_min: f64,
        #[arg(long, default_value_t = 0.6)]
        p_max: f64,
        /// Rejection-sampling budget per trial.
        #[arg(long, default_value_t = 100_000)]
        max_attempts: usize,
        /// Directory for counterexample graph files.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

/// What a command prints and its exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

fn coloring_opt(s: &Option<String>, g: &Graph) -> Result<Option<Coloring>> {
    s.as_deref().map(|s| parse_coloring(s, g.n())).transpose()
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Analyze { .. } => "analyze",
        Command::Colorings { .. } => "colorings",
        Command::Quotient { .. } => "quotient",
        Command::Prune { .. } => "prune",
        Command::Spectrum { .. } => "spectrum",
        Command::Simulate { .. } => "simulate",
        Command::Study { .. } => "study",
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut exit_code = 0;
    let mut prefix = String::new();
    let report: Value = match &cli.command {
        Command::Analyze { graph } => commands::analyze(&read_graph(graph)?)?,
        Command::Colorings { graph } => commands::colorings(&read_graph(graph)?, cli.max_n)?,
        Command::Quotient { graph, coloring } => {
            let g = read_graph(graph)?;
            commands::quotient(&g, coloring_opt(coloring, &g)?)?
        }
        Command::Prune { graph, coloring } => {
            let g = read_graph(graph)?;
            commands::prune(&g, coloring_opt(coloring, &g)?)?
        }
        Command::Spectrum { graph, alpha, beta } => {
            commands::spectrum(&read_graph(graph)?, &CouplingParams::new(*alpha, beta.iter().copied()))?
        }
        Command::Simulate { graph, field, x0, radius, t_end, dt, pack, rate_bound, coloring, csv, tolerance } => {
            let g = read_graph(graph)?;
            let args = SimulateArgs {
                field: field.clone(),
                x0: x0.clone(),
                radius: *radius,
                t_end: *t_end,
                dt: *dt,
                pack: pack.clone(),
                rate_bound: *rate_bound,
                coloring: coloring_opt(coloring, &g)?,
                tolerance: *tolerance,
                seed: cli.seed,
            };
            let sim = commands::simulate(&g, &args)?;
            match csv.as_deref() {
                Some(p) if p.as_os_str() == "-" => prefix = sim.csv,
                Some(p) => std::fs::write(p, &sim.csv)?,
                None => {}
            }
            if sim.failed {
                exit_code = 1;
            }
            sim.report
        }
        Command::Study { mode, count, n_min, n_max, p_min, p_max, max_attempts, dump_dir } => {
            run_study(&StudyConfig {
                mode: *mode,
                count: *count,
                n_min: *n_min,
                n_max: *n_max,
                p_min: *p_min,
                p_max: *p_max,
                seed: cli.seed,
                max_n: cli.max_n,
                max_attempts: *max_attempts,
                dump_dir: dump_dir.clone(),
            })?
        }
    };
    let report = envelope(name(&cli.command), report);
    let body = if cli.json { serde_json::to_string_pretty(&report)? + "\n" } else { render_text(&report) };
    Ok(Outcome { stdout: prefix + &body, exit_code })
}
