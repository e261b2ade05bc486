use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fuzzy_nerve::epmet::validate_epmet;
use fuzzy_nerve::json::{self, Kind};
use fuzzy_nerve::realization::{adjunction_check, fin_metric_realize, fin_singular_nerve};
use fuzzy_nerve::simplicial::validate;
use fuzzy_nerve::umap::{umap, Dataset, UmapParams};
use fuzzy_nerve::{Error, FiniteEPMet, TruncatedSimplicialFuzzySet};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "fuzzy-nerve", version, about = "Fuzzy simplicial sets, metric realization and UMAP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a JSON document against its schema and axioms.
    Validate { file: PathBuf },
    /// Finite metric realization of a simplicial fuzzy set.
    Realize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Finite singular nerve of an extended pseudo-metric space.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        max_dim: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Enumerate both sides of the realization/nerve adjunction.
    Adjoint {
        s_file: PathBuf,
        m_file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Embed a headerless CSV of points.
    Umap {
        csv: PathBuf,
        #[arg(short = 'd', long, default_value_t = 2)]
        dim: usize,
        #[arg(short, long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        epochs: usize,
        #[arg(long, default_value_t = 1.0)]
        lr: f64,
        #[arg(long, default_value_t = 5)]
        neg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0} violation(s)")]
    Violations(usize),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Violations(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::Structure(_) | Error::DimensionMismatch(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn report<T: std::fmt::Display>(violations: &[T]) -> Result<()> {
    for v in violations {
        println!("VIOLATION: {v}");
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violations(violations.len()))
    }
}

fn load_simplicial(path: &Path) -> Result<TruncatedSimplicialFuzzySet> {
    let s = json::simplicial_from_json(&load_json(path)?)?;
    report(&validate(&s))?;
    Ok(s)
}

fn load_epmet(path: &Path) -> Result<FiniteEPMet> {
    let m = json::epmet_from_json(&load_json(path)?)?;
    report(&validate_epmet(&m))?;
    Ok(m)
}

fn cmd_validate(path: &Path) -> Result<()> {
    let v = load_json(path)?;
    match json::detect(&v)? {
        Kind::Simplicial => {
            let s = json::simplicial_from_json(&v)?;
            report(&validate(&s))?;
            println!("ok: simplicial fuzzy set, max_dim {}, {} elements", s.max_dim(), s.total_len());
        }
        Kind::EPMet => {
            let m = json::epmet_from_json(&v)?;
            report(&validate_epmet(&m))?;
            println!("ok: extended pseudo-metric space, {} points", m.len());
        }
        Kind::FuzzySet => {
            let x = json::fuzzy_set_from_json(&v)?;
            println!("ok: fuzzy set, {} elements", x.len());
        }
        Kind::LevelFunction => {
            let s = json::level_function_from_json(&v)?;
            println!("ok: level function, {} levels", s.levels().len());
        }
        Kind::Graph => {
            let g = json::graph_from_json(&v)?;
            println!("ok: fuzzy graph, {} vertices, {} edges", g.vertex_count(), g.edge_count());
        }
    }
    Ok(())
}

fn cmd_realize(path: &Path, out: &Path) -> Result<()> {
    let s = load_simplicial(path)?;
    let r = fin_metric_realize(&s)?;
    write(out, &json::to_string(&json::realization_to_json(&r, &s)))
}

fn cmd_nerve(path: &Path, max_dim: usize, out: &Path) -> Result<()> {
    let m = load_epmet(path)?;
    let n = fin_singular_nerve(&m, max_dim)?;
    write(out, &json::to_string(&json::simplicial_to_json(&n.set)))
}

fn cmd_adjoint(s_path: &Path, m_path: &Path, out: &Path) -> Result<()> {
    let s = load_simplicial(s_path)?;
    let m = load_epmet(m_path)?;
    let r = adjunction_check(&s, &m)?;
    write(out, &json::to_string(&json::adjunction_to_json(&r)))?;
    if r.realization_maps == r.simplicial_maps {
        println!("bijection: {}, count: {}", r.bijection, r.realization_maps);
    } else {
        println!(
            "bijection: {}, counts: {} non-expansive maps, {} simplicial maps",
            r.bijection, r.realization_maps, r.simplicial_maps
        );
    }
    Ok(())
}

fn load_csv(path: &Path) -> Result<Dataset> {
    let text = read(path)?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let row = record
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| CliError::Parse(format!("{}: line {}: {e}", path.display(), line + 1)))?;
        rows.push(row);
    }
    Dataset::new(rows).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn cmd_umap(path: &Path, params: &UmapParams, out: &Path) -> Result<()> {
    let x = load_csv(path)?;
    let y = umap(&x, params)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in y.coords() {
        w.write_record(row.iter().map(|&v| json::format_float(v))).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    fs::write(out, bytes).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Realize { file, output } => cmd_realize(&file, &output),
        Command::Nerve { file, max_dim, output } => cmd_nerve(&file, max_dim, &output),
        Command::Adjoint { s_file, m_file, output } => cmd_adjoint(&s_file, &m_file, &output),
        Command::Umap { csv, dim, k, epochs, lr, neg, seed, output } => {
            let params = UmapParams { d: dim, k, n_epochs: epochs, lr, neg, seed };
            cmd_umap(&csv, &params, &output)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
