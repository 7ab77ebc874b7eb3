mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "graphgeom", version, about = "Exact differential geometry and edge Laplacians on graphs")]
pub struct Cli {
    /// Numerical tolerance for eigenvalue extraction and residuals.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    pub tol: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, clap::Args)]
pub struct GroupArgs {
    /// Group spec: cyclic:n, sym:n or product:F1,F2,...
    #[arg(long, conflicts_with = "table")]
    pub group: Option<String>,
    /// CSV multiplication table.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Comma-separated generator labels.
    #[arg(long)]
    pub gens: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Edge Laplacian spectrum with exact certificate.
    Spectrum {
        /// Graph edge-list file.
        graph: PathBuf,
    },
    /// Braid, compatibility, torsion, curvature, cotorsion and Ricci checks.
    Verify {
        #[arg(long, conflicts_with_all = ["group", "table"])]
        graph: Option<PathBuf>,
        #[command(flatten)]
        cayley: GroupArgs,
        /// canonical, maurer-cartan or a connection file.
        #[arg(long, default_value = "canonical")]
        connection: String,
        /// euclidean or a metric file.
        #[arg(long, default_value = "euclidean")]
        metric: String,
        /// Comma-separated check ids that decide the exit code.
        #[arg(long)]
        checks: Option<String>,
    },
    /// Cayley graph bundle for a group and generating set.
    Cayley {
        /// Group spec: cyclic:n, sym:n or product:F1,F2,...
        spec: Option<String>,
        #[arg(long, conflicts_with = "spec")]
        table: Option<PathBuf>,
        /// Comma-separated generator labels.
        #[arg(long)]
        gens: String,
        /// Also write graph.txt and connection.json into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Randomized exact checks of the calculus laws on a graph.
    Calculus {
        graph: PathBuf,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Comma-separated λ values for the extended calculus.
        #[arg(long, default_value = "0,1,1/2")]
        lambda: String,
    },
    /// Spectrum of the bidirected m-gon against its closed form.
    Mgon { m: usize },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("tolerance must be a positive number".into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(anyhow::Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
