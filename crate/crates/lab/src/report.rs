//! CSV and JSON serialisation of sweep tables and cluster reports.

use serde::{Deserialize, Serialize};

use landau_torus::{AsymptoticRow, AsymptoticTable, ClusterSolve};

use crate::config::Format;

pub const TABLE_HEADER: &str = "p,prod_dev,comm_dev,tf_norm,width,dim,valid";
pub const CLUSTER_HEADER: &str = "p,n,k,center,dim,min,max,width";

/// `x` with 12 significant digits, trailing zeros removed; `nan` for NaN.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

/// `x` rounded to the value its 12-digit form denotes.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_sig(x).parse().expect("formatted float")
    } else {
        x
    }
}

fn opt(x: f64) -> Option<f64> {
    x.is_finite().then(|| round_sig(x))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowRecord {
    pub p: u32,
    pub n: usize,
    pub prod_dev: Option<f64>,
    pub comm_dev: Option<f64>,
    pub tf_norm: Option<f64>,
    pub width: Option<f64>,
    pub dim: usize,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<&AsymptoticRow> for RowRecord {
    fn from(r: &AsymptoticRow) -> Self {
        RowRecord {
            p: r.p,
            n: r.n,
            prod_dev: opt(r.prod_dev),
            comm_dev: opt(r.comm_dev),
            tf_norm: opt(r.tf_norm),
            width: opt(r.width),
            dim: r.dim,
            valid: r.valid,
            error: r.error.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub level: usize,
    pub rows: Vec<RowRecord>,
    /// Fitted log-log slopes over the valid rows, when at least three exist.
    pub prod_slope: Option<f64>,
    pub comm_slope: Option<f64>,
}

impl From<&AsymptoticTable> for TableRecord {
    fn from(t: &AsymptoticTable) -> Self {
        TableRecord {
            level: t.level,
            rows: t.rows.iter().map(RowRecord::from).collect(),
            prod_slope: t.prod_slope().ok().and_then(|f| opt(f.slope)),
            comm_slope: t.comm_slope().ok().and_then(|f| opt(f.slope)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterRecord {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub center: f64,
    pub dim: usize,
    pub min: f64,
    pub max: f64,
    pub width: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<f64>,
}

/// Summary of every cluster of one solve; `values` are kept for JSON output.
pub fn cluster_records(solve: &ClusterSolve) -> Vec<ClusterRecord> {
    solve
        .clusters
        .iter()
        .map(|c| ClusterRecord {
            p: solve.cfg.p,
            n: solve.cfg.n,
            k: c.k,
            center: round_sig(c.center),
            dim: c.dim(),
            min: round_sig(c.values.iter().copied().fold(f64::INFINITY, f64::min)),
            max: round_sig(c.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
            width: round_sig(c.width),
            values: c.values.iter().map(|&v| round_sig(v)).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Asymptotics { tables: Vec<TableRecord> },
    Clusters { clusters: Vec<ClusterRecord> },
}

/// A report with the config echo that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub config: Vec<(String, String)>,
    #[serde(flatten)]
    pub report: Report,
}

fn opt_sig(x: Option<f64>) -> String {
    x.map_or("nan".into(), fmt_sig)
}

/// Header plus one line per row.
pub fn table_csv(rows: &[RowRecord]) -> String {
    let mut out = format!("{TABLE_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.p,
            opt_sig(r.prod_dev),
            opt_sig(r.comm_dev),
            opt_sig(r.tf_norm),
            opt_sig(r.width),
            r.dim,
            r.valid
        ));
    }
    out
}

pub fn cluster_csv(records: &[ClusterRecord]) -> String {
    let mut out = format!("{CLUSTER_HEADER}\n");
    for c in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.p,
            c.n,
            c.k,
            fmt_sig(c.center),
            c.dim,
            fmt_sig(c.min),
            fmt_sig(c.max),
            fmt_sig(c.width)
        ));
    }
    out
}

/// Serialises a document. CSV starts with `# key = value` echo lines; multi-level tables are
/// separated by a `# level = k` line before each header.
pub fn emit_report(doc: &Document, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serialisable report");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut out: String = doc.config.iter().map(|(k, v)| format!("# {k} = {v}\n")).collect();
            match &doc.report {
                Report::Asymptotics { tables } => {
                    for (i, t) in tables.iter().enumerate() {
                        if tables.len() > 1 {
                            if i > 0 {
                                out.push('\n');
                            }
                            out.push_str(&format!("# level = {}\n", t.level));
                        }
                        out.push_str(&table_csv(&t.rows));
                    }
                    if tables.is_empty() {
                        out.push_str(&table_csv(&[]));
                    }
                }
                Report::Clusters { clusters } => out.push_str(&cluster_csv(clusters)),
            }
            out.into_bytes()
        }
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<Document, serde_json::Error> {
    serde_json::from_slice(bytes)
}
