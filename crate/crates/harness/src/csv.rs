//! CSV emission: UTF-8, LF line endings, header row mandatory, ordering
//! deterministic, numbers printed as Rust's shortest round-trip decimals.

use std::fmt::Write as _;
use std::path::Path;

use crate::config::StudyKind;
use crate::studies::ConvergenceReport;
use crate::HarnessError;

pub fn render_csv(report: &ConvergenceReport) -> String {
    let mut out = String::new();
    match report.kind {
        StudyKind::Gap => {
            out.push_str("s,n,P_finite,P_limit,abs_diff\n");
            for r in &report.gap_rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.s, r.n, r.p_finite, r.p_limit, r.abs_diff
                );
            }
        }
        _ => {
            out.push_str("n,max_err,target\n");
            for r in &report.rows {
                let _ = writeln!(out, "{},{},{}", r.n, r.max_err, r.target);
            }
        }
    }
    out
}

pub fn emit_csv(report: &ConvergenceReport, path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, render_csv(report)).map_err(|e| {
        HarnessError::Config(format!("cannot write {}: {e}", path.display()))
    })
}
