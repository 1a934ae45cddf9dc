//! Report serialization: a human-readable block, CSV rows, or JSON.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::metrics::{AggregateReport, Counts, DErrorLabel, EvaluationReport, ScoreTriple, XpsMode};
use crate::ratio::Ratio;

pub const CSV_COLUMNS: [&str; 17] = [
    "doc_id",
    "n_mentions_key",
    "n_mentions_resp",
    "n_classes_key",
    "n_classes_resp",
    "mrs",
    "mps",
    "mf",
    "crs",
    "cps",
    "cf",
    "xrs",
    "xps",
    "xf",
    "overlap",
    "derror_label",
    "derror_magnitude",
];

const CSV_PLACES: u32 = 4;
const TEXT_PLACES: u32 = 2;
const AGGREGATE_ID: &str = "micro-average";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}` (expected text, csv or json)")),
        }
    }
}

/// Which metric families appear in the output. Everything is always computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricSet {
    pub muc: bool,
    pub core: bool,
    pub exclusive: bool,
    pub distributional: bool,
}

impl MetricSet {
    pub const ALL: MetricSet = MetricSet {
        muc: true,
        core: true,
        exclusive: true,
        distributional: true,
    };
}

impl Default for MetricSet {
    fn default() -> Self {
        Self::ALL
    }
}

impl FromStr for MetricSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = MetricSet {
            muc: false,
            core: false,
            exclusive: false,
            distributional: false,
        };
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name {
                "muc" => set.muc = true,
                "core" => set.core = true,
                "xcore" => set.exclusive = true,
                "dist" => set.distributional = true,
                "all" => set = MetricSet::ALL,
                other => {
                    return Err(format!(
                        "unknown metric `{other}` (expected muc, core, xcore or dist)"
                    ))
                }
            }
        }
        if set == (MetricSet { muc: false, core: false, exclusive: false, distributional: false }) {
            return Err("no metric selected".into());
        }
        Ok(set)
    }
}

/// The fields shared by per-document and aggregate reports.
struct Row<'a> {
    doc_id: &'a str,
    counts: &'a Counts,
    muc: &'a ScoreTriple,
    core: &'a ScoreTriple,
    exclusive: &'a ScoreTriple,
    xps_mode: XpsMode,
    overlap: &'a Ratio,
    d_error_label: DErrorLabel,
    d_error_magnitude: &'a Ratio,
}

impl<'a> Row<'a> {
    fn document(doc_id: &'a str, r: &'a EvaluationReport) -> Self {
        Row {
            doc_id,
            counts: &r.counts,
            muc: &r.muc,
            core: &r.core,
            exclusive: &r.exclusive,
            xps_mode: r.xps_mode,
            overlap: &r.overlap,
            d_error_label: r.d_error.label,
            d_error_magnitude: &r.d_error.magnitude,
        }
    }

    fn aggregate(a: &'a AggregateReport) -> Self {
        Row {
            doc_id: AGGREGATE_ID,
            counts: &a.counts,
            muc: &a.muc,
            core: &a.core,
            exclusive: &a.exclusive,
            xps_mode: a.xps_mode,
            overlap: &a.overlap,
            d_error_label: a.d_error.label,
            d_error_magnitude: &a.d_error.magnitude,
        }
    }

    fn csv_record(&self, metrics: MetricSet) -> Vec<String> {
        let c = self.counts;
        let mut rec = vec![
            self.doc_id.to_owned(),
            c.key_mentions.to_string(),
            c.response_mentions.to_string(),
            c.original_key_classes().to_string(),
            c.original_response_classes().to_string(),
        ];
        let decimal = |r: &Ratio| r.round_half_even(CSV_PLACES);
        for (on, triple) in [
            (metrics.muc, self.muc),
            (metrics.core, self.core),
            (metrics.exclusive, self.exclusive),
        ] {
            if on {
                rec.extend([triple.recall, triple.precision, triple.f].iter().map(decimal));
            } else {
                rec.extend(std::iter::repeat_n(String::new(), 3));
            }
        }
        if metrics.distributional {
            rec.push(decimal(self.overlap));
            rec.push(self.d_error_label.as_str().to_owned());
            rec.push(decimal(self.d_error_magnitude));
        } else {
            rec.extend(std::iter::repeat_n(String::new(), 3));
        }
        rec
    }

    fn text(&self, metrics: MetricSet) -> String {
        let c = self.counts;
        let mut out = String::new();
        let _ = writeln!(out, "doc {}", self.doc_id);
        let _ = writeln!(
            out,
            "mentions {} (key {}, response {})",
            c.mentions, c.key_mentions, c.response_mentions
        );
        let _ = writeln!(
            out,
            "classes key {}, response {}; cells {}",
            c.key_classes, c.response_classes, c.cells
        );
        let line = |out: &mut String, name: &str, r: &Ratio| {
            let _ = writeln!(out, "{name} {r} {}", r.round_half_even(TEXT_PLACES));
        };
        for (on, prefix, t) in [
            (metrics.muc, "M", self.muc),
            (metrics.core, "C", self.core),
            (metrics.exclusive, "X", self.exclusive),
        ] {
            if !on {
                continue;
            }
            line(&mut out, &format!("{prefix}RS"), &t.recall);
            line(&mut out, &format!("{prefix}PS"), &t.precision);
            line(&mut out, &format!("{prefix}F"), &t.f);
        }
        if metrics.exclusive {
            let _ = writeln!(out, "xps-mode {}", self.xps_mode);
        }
        if metrics.distributional {
            line(&mut out, "overlap", self.overlap);
            let _ = writeln!(
                out,
                "d-error {} {}",
                self.d_error_magnitude.round_half_even(TEXT_PLACES),
                self.d_error_label.as_str()
            );
        }
        out
    }
}

fn triple_json(t: &ScoreTriple) -> Value {
    serde_json::to_value(t).expect("plain data serializes")
}

fn document_json(doc_id: &str, r: &EvaluationReport, metrics: MetricSet) -> Value {
    let mut obj = Map::new();
    obj.insert("doc_id".into(), json!(doc_id));
    obj.insert("counts".into(), serde_json::to_value(r.counts).expect("counts serialize"));
    if metrics.muc {
        obj.insert("muc".into(), triple_json(&r.muc));
    }
    if metrics.core {
        obj.insert("core".into(), triple_json(&r.core));
    }
    if metrics.exclusive {
        obj.insert("exclusive".into(), triple_json(&r.exclusive));
        obj.insert("xps_mode".into(), json!(r.xps_mode));
    }
    if metrics.distributional {
        obj.insert("overlap".into(), serde_json::to_value(r.overlap).expect("ratio serializes"));
        obj.insert("d_error".into(), serde_json::to_value(&r.d_error).expect("d-error serializes"));
    }
    Value::Object(obj)
}

fn aggregate_json(a: &AggregateReport, metrics: MetricSet) -> Value {
    let mut obj = Map::new();
    obj.insert("documents".into(), json!(a.documents));
    obj.insert("counts".into(), serde_json::to_value(a.counts).expect("counts serialize"));
    if metrics.muc {
        obj.insert("muc".into(), triple_json(&a.muc));
    }
    if metrics.core {
        obj.insert("core".into(), triple_json(&a.core));
    }
    if metrics.exclusive {
        obj.insert("exclusive".into(), triple_json(&a.exclusive));
        obj.insert("xps_mode".into(), json!(a.xps_mode));
    }
    if metrics.distributional {
        obj.insert("overlap".into(), serde_json::to_value(a.overlap).expect("ratio serializes"));
        obj.insert("d_error".into(), serde_json::to_value(a.d_error).expect("d-error serializes"));
    }
    Value::Object(obj)
}

/// Renders one document's report. Text shows each score as its fraction and
/// 2-decimal value; CSV is a header plus one row at 4 decimals; JSON keeps the
/// exact numerator/denominator pairs.
pub fn emit_report(
    doc_id: &str,
    report: &EvaluationReport,
    format: ReportFormat,
    metrics: MetricSet,
) -> String {
    match format {
        ReportFormat::Text => Row::document(doc_id, report).text(metrics),
        ReportFormat::Csv => {
            let mut w = CsvReportWriter::new(Vec::new(), metrics).expect("in-memory write");
            w.write_report(doc_id, report).expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("csv is UTF-8")
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&document_json(doc_id, report, metrics))
                .expect("json serializes");
            s.push('\n');
            s
        }
    }
}

/// Text or JSON rendering of a micro-averaged total. CSV totals go through
/// [`CsvReportWriter::write_aggregate`].
pub fn emit_aggregate(aggregate: &AggregateReport, format: ReportFormat, metrics: MetricSet) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(&aggregate_json(aggregate, metrics)).expect("json serializes")
        }
        _ => Row::aggregate(aggregate).text(metrics),
    }
}

/// The JSON object [`emit_report`] prints, for embedding in larger documents.
pub fn document_value(doc_id: &str, report: &EvaluationReport, metrics: MetricSet) -> Value {
    document_json(doc_id, report, metrics)
}

pub fn aggregate_value(aggregate: &AggregateReport, metrics: MetricSet) -> Value {
    aggregate_json(aggregate, metrics)
}

/// Streams CSV report rows under a fixed header.
pub struct CsvReportWriter<W: Write> {
    inner: csv::Writer<W>,
    metrics: MetricSet,
}

impl<W: Write> CsvReportWriter<W> {
    pub fn new(out: W, metrics: MetricSet) -> csv::Result<Self> {
        let mut inner = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        inner.write_record(CSV_COLUMNS)?;
        Ok(CsvReportWriter { inner, metrics })
    }

    pub fn write_report(&mut self, doc_id: &str, report: &EvaluationReport) -> csv::Result<()> {
        self.inner
            .write_record(Row::document(doc_id, report).csv_record(self.metrics))
    }

    pub fn write_aggregate(&mut self, aggregate: &AggregateReport) -> csv::Result<()> {
        self.inner
            .write_record(Row::aggregate(aggregate).csv_record(self.metrics))
    }

    /// A failed document: every metric column empty, `derror_label` set to `error`.
    pub fn write_error(&mut self, doc_id: &str) -> csv::Result<()> {
        let mut rec = vec![String::new(); CSV_COLUMNS.len()];
        rec[0] = doc_id.to_owned();
        rec[CSV_COLUMNS.len() - 2] = "error".to_owned();
        self.inner.write_record(rec)
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }

    pub fn into_inner(self) -> Result<W, std::io::Error> {
        self.inner.into_inner().map_err(|e| e.into_error())
    }
}
