//! Orchestration of one experiment.

use std::io::Write;

use landau_core::landau::enumerate_levels;
use landau_torus::{asymptotic_tables_with, solve_clusters};

use crate::config::{ConfigError, ExperimentConfig, Mode};
use crate::report::{cluster_records, emit_report, Document, Report, TableRecord};
use crate::suite::{run_exact_suite, SuiteOptions};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Failure(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// 2 for schema errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Runs the configured mode, writing human-readable output to `out` and artifacts to
/// `config.output` (or `out` when unset).
pub fn run(config: &ExperimentConfig, out: &mut dyn Write) -> Result<(), RunError> {
    let mode = config.validate()?;
    match mode {
        Mode::VerifyModel => verify_model(config, out),
        Mode::Levels => levels(config, out),
        Mode::TorusSpectrum => torus_spectrum(config, out),
        Mode::ToeplitzAsymptotics => toeplitz_asymptotics(config, out),
    }
}

fn verify_model(config: &ExperimentConfig, out: &mut dyn Write) -> Result<(), RunError> {
    let opts = SuiteOptions {
        params: config.field_params()?,
        max_total: config.kmax,
        instances: config.instances,
        seed: config.seed,
    };
    let checks = run_exact_suite(&opts);
    for c in &checks {
        writeln!(out, "{}", c.line())?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "{} of {} identities hold", checks.len() - failed, checks.len())?;
    if failed > 0 {
        return Err(RunError::Failure(format!("{failed} identities failed")));
    }
    Ok(())
}

fn levels(config: &ExperimentConfig, out: &mut dyn Write) -> Result<(), RunError> {
    let params = config.field_params()?;
    let levels = enumerate_levels(&params, &config.max).map_err(|e| ConfigError(e.to_string()))?;
    let mut text = String::from("lambda,multiplicity,indices\n");
    for level in &levels {
        let indices: Vec<String> = level.indices.iter().map(|k| k.to_string()).collect();
        text.push_str(&format!(
            "{},{},{}\n",
            level.value,
            level.multiplicity(),
            indices.join(" ")
        ));
    }
    deliver(config, text.as_bytes(), out)
}

fn echo(config: &ExperimentConfig) -> Vec<(String, String)> {
    config.echo().into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn torus_spectrum(config: &ExperimentConfig, out: &mut dyn Write) -> Result<(), RunError> {
    let max_level = config.level.iter().copied().max().unwrap_or(0);
    let mut clusters = Vec::new();
    for &p in &config.p {
        let cfg = config.torus(p);
        let solve = solve_clusters(&cfg, max_level).map_err(|e| RunError::Failure(format!("p = {p}: {e}")))?;
        clusters.extend(cluster_records(&solve));
    }
    let doc = Document {
        config: echo(config),
        report: Report::Clusters { clusters },
    };
    deliver(config, &emit_report(&doc, config.format), out)
}

fn toeplitz_asymptotics(config: &ExperimentConfig, out: &mut dyn Write) -> Result<(), RunError> {
    let tables = asymptotic_tables_with(
        &config.template(),
        &config.p,
        &config.f.0,
        &config.g.0,
        &config.level,
        config.grid,
    )
    .map_err(|e| ConfigError(e.to_string()))?;
    let invalid = tables.iter().flat_map(|t| &t.rows).filter(|r| !r.valid).count();
    let doc = Document {
        config: echo(config),
        report: Report::Asymptotics {
            tables: tables.iter().map(TableRecord::from).collect(),
        },
    };
    deliver(config, &emit_report(&doc, config.format), out)?;
    if invalid > 0 {
        return Err(RunError::Failure(format!("{invalid} rows are invalid")));
    }
    Ok(())
}

fn deliver(config: &ExperimentConfig, bytes: &[u8], out: &mut dyn Write) -> Result<(), RunError> {
    match &config.output {
        Some(path) => {
            std::fs::write(path, bytes)?;
            writeln!(out, "wrote {path}")?;
        }
        None => out.write_all(bytes)?,
    }
    Ok(())
}
