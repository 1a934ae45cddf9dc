use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use coref_eval::io::{aggregate_value, document_value, emit_aggregate, emit_report, CsvReportWriter, ReportFormat};
use coref_eval::metrics::{Evaluation, MicroAverage};
use coref_eval::EvaluationReport;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use crate::config::RunConfig;
use crate::load::{check_mismatch, load};
use crate::write_output;

#[derive(Debug, Deserialize)]
struct Entry {
    doc_id: String,
    key: PathBuf,
    response: PathBuf,
}

/// Reads `doc_id,key,response` rows; relative paths are taken from the
/// manifest's directory.
fn read_manifest(path: &Path) -> Result<Vec<Entry>> {
    let base = path.parent().unwrap_or(Path::new("."));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read manifest {}", path.display()))?;
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["doc_id", "key", "response"] {
        bail!(
            "{}: manifest header must be `doc_id,key,response`, found `{}`",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        );
    }
    let mut entries = Vec::new();
    for (i, row) in reader.deserialize().enumerate() {
        let mut entry: Entry = row.with_context(|| format!("{}: row {}", path.display(), i + 2))?;
        entry.key = base.join(&entry.key);
        entry.response = base.join(&entry.response);
        entries.push(entry);
    }
    Ok(entries)
}

fn score(entry: &Entry, config: &RunConfig) -> Result<EvaluationReport> {
    let key = load(&entry.key)?;
    let response = load(&entry.response)?;
    check_mismatch(&key.partition, &response.partition, config.on_mismatch)?;
    Ok(Evaluation::new(&key.partition, &response.partition, config.xps_mode).report)
}

/// Returns whether every document scored.
pub fn run(config: &RunConfig) -> Result<bool> {
    let entries = read_manifest(config.inputs.manifest()?)?;
    let score_all = || -> Vec<Result<EvaluationReport>> { entries.par_iter().map(|e| score(e, config)).collect() };
    let results = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("cannot start worker threads")?
            .install(score_all),
        None => score_all(),
    };

    let mut average = MicroAverage::new();
    let mut failures = 0;
    for (entry, result) in entries.iter().zip(&results) {
        match result {
            Ok(report) => average.add(report),
            Err(e) => {
                failures += 1;
                eprintln!("error: {}: {e:#}", entry.doc_id);
            }
        }
    }
    let aggregate = average.finish();

    let out = match config.format {
        ReportFormat::Csv => {
            let mut w = CsvReportWriter::new(Vec::new(), config.metrics)?;
            for (entry, result) in entries.iter().zip(&results) {
                match result {
                    Ok(report) => w.write_report(&entry.doc_id, report)?,
                    Err(_) => w.write_error(&entry.doc_id)?,
                }
            }
            if let Some(a) = &aggregate {
                w.write_aggregate(a)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        ReportFormat::Json => {
            let mut documents = Vec::new();
            let mut errors = Vec::new();
            for (entry, result) in entries.iter().zip(&results) {
                match result {
                    Ok(report) => documents.push(document_value(&entry.doc_id, report, config.metrics)),
                    Err(e) => errors.push(json!({ "doc_id": entry.doc_id, "error": format!("{e:#}") })),
                }
            }
            let value = json!({
                "documents": documents,
                "errors": errors,
                "aggregate": aggregate.as_ref().map(|a| aggregate_value(a, config.metrics)),
            });
            let mut s = serde_json::to_string_pretty(&value)?;
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for (entry, result) in entries.iter().zip(&results) {
                match result {
                    Ok(report) => s.push_str(&emit_report(&entry.doc_id, report, ReportFormat::Text, config.metrics)),
                    Err(e) => s.push_str(&format!("doc {}\nerror {e:#}\n", entry.doc_id)),
                }
                s.push('\n');
            }
            if let Some(a) = &aggregate {
                s.push_str(&emit_aggregate(a, ReportFormat::Text, config.metrics));
            }
            s
        }
    };
    write_output(config.output.as_deref(), &out)?;
    Ok(failures == 0)
}
