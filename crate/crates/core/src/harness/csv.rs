use std::fmt::Write as _;
use std::path::Path;

use super::experiment::ConvergenceReport;
use crate::error::{Error, Result};

/// Renders the report: a header, one row per `N` (or per matched eigenvalue
/// for spectrum experiments), then `# slope=` and one comment per note.
/// Floats use the shortest representation that parses back exactly.
pub fn write_csv(report: &ConvergenceReport) -> String {
    let mut out = String::new();
    if report.is_spectrum() {
        out.push_str("N,lambda,d,r\n");
        for row in &report.eigen_rows {
            let _ = writeln!(out, "{},{:?},{:?},{:?}", row.n, row.lambda, row.d, row.r);
        }
        for &(n, e) in &report.rows {
            let _ = writeln!(out, "# N={n} max_d={e:?}");
        }
    } else {
        out.push_str("N,error\n");
        for &(n, e) in &report.rows {
            let _ = writeln!(out, "{n},{e:?}");
        }
    }
    match report.fitted_slope {
        Some(s) => {
            let _ = writeln!(out, "# slope={s:?}");
        }
        None => out.push_str("# slope=undefined\n"),
    }
    for note in &report.notes {
        let _ = writeln!(out, "# {note}");
    }
    out
}

pub fn emit_csv(report: &ConvergenceReport, path: &Path) -> Result<()> {
    std::fs::write(path, write_csv(report)).map_err(|source| Error::Io { path: path.to_owned(), source })
}
