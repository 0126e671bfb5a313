use crate::error::{Error, Result};

/// Errors below this are treated as double-precision noise and left out of
/// slope fits.
pub const FLOOR: f64 = 1e-12;

/// Least-squares slope of `log(error)` against `log(N)`.
pub fn fit_slope(rows: &[(usize, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(n, e)| *n > 0 && *e > 0.0 && e.is_finite())
        .map(|&(n, e)| ((n as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "slope fit needs at least 2 rows with positive error, got {}",
            pts.len()
        )));
    }
    let m = pts.len() as f64;
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xbar).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("slope fit needs at least 2 distinct N".into()));
    }
    Ok(sxy / sxx)
}
