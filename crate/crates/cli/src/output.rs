//! Tables and the JSON report.

use std::fs;
use std::io;
use std::path::Path;

use compliant_core::AnalysisReport;

pub const CSV_HEADER: [&str; 9] =
    ["index", "beta_re", "beta_im", "L_re", "L_im", "residual_force", "residual_moment", "real_flag", "accepted_flag"];

/// One row per candidate; angles and lengths with 6 decimals, residuals in
/// scientific notation with 6 decimals.
pub fn csv_string(report: &AnalysisReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for s in &report.solutions {
        w.write_record([
            s.index.to_string(),
            format!("{:.6}", s.beta.re),
            format!("{:.6}", s.beta.im),
            format!("{:.6}", s.l.re),
            format!("{:.6}", s.l.im),
            format!("{:.6e}", s.residual_force),
            format!("{:.6e}", s.residual_moment),
            u8::from(s.is_real).to_string(),
            u8::from(s.accepted).to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Pretty JSON of the whole report; non-finite numbers become `null`.
pub fn json_string(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn write_csv(report: &AnalysisReport, path: &Path) -> io::Result<()> {
    fs::write(path, csv_string(report))
}

pub fn write_json(report: &AnalysisReport, path: &Path) -> io::Result<()> {
    fs::write(path, json_string(report))
}
