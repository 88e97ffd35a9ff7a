//! Machine-readable benchmark reports: CSV or JSON lines.

use serde::{Deserialize, Serialize};

/// One measured workload. Times are medians over the repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub kind: String,
    pub params: String,
    pub size_bytes: u64,
    pub serialize_s: f64,
    pub parse_s: f64,
    pub reps: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    JsonLines,
}

/// Renders rows in a stable column order:
/// `kind, params, size_bytes, serialize_s, parse_s, reps`.
pub fn emit_report(rows: &[BenchRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from("kind,params,size_bytes,serialize_s,parse_s,reps\n");
            for row in rows {
                // params contains commas, so it is always quoted.
                out.push_str(&format!(
                    "{},\"{}\",{},{:.9},{:.9},{}\n",
                    row.kind,
                    row.params.replace('"', "\"\""),
                    row.size_bytes,
                    row.serialize_s,
                    row.parse_s,
                    row.reps
                ));
            }
            out
        }
        ReportFormat::JsonLines => {
            let mut out = String::new();
            for row in rows {
                out.push_str(&serde_json::to_string(row).expect("rows always serialize"));
                out.push('\n');
            }
            out
        }
    }
}
