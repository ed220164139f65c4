use crate::args::OutFormat;
use serde::Serialize;
use std::fmt::Write as _;

/// One CSV row / JSON record. Column set is fixed; `tau_eps` holds whichever
/// threshold the row's experiment uses.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub experiment: String,
    pub family: String,
    pub n: usize,
    pub d: usize,
    pub p: f64,
    pub tau_eps: f64,
    pub estimate: f64,
    pub ci_radius: f64,
    pub trials: usize,
    pub seed: u64,
}

pub const CSV_HEADER: &str = "experiment,family,n,d,p,tau_eps,estimate,ci_radius,trials,seed";

/// Family specs contain commas, so that field is always quoted.
pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},\"{}\",{},{},{},{},{},{},{},{}",
            r.experiment,
            r.family,
            r.n,
            r.d,
            r.p,
            r.tau_eps,
            r.estimate,
            r.ci_radius,
            r.trials,
            r.seed
        );
    }
    out
}

pub fn render_json(rows: &[Row], duration_seconds: f64) -> String {
    let doc = serde_json::json!({
        "rows": rows,
        "duration_seconds": duration_seconds,
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn render(rows: &[Row], format: OutFormat, duration_seconds: f64) -> String {
    match format {
        OutFormat::Csv => render_csv(rows),
        OutFormat::Json => render_json(rows, duration_seconds),
    }
}
