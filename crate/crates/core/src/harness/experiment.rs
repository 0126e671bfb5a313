use num_complex::Complex64;

use super::config::{ExperimentConfig, ExperimentKind};
use super::fit::{fit_slope, FLOOR};
use crate::error::{Error, Result};
use crate::fourier::{diff_norm, synth_powerlaw, BandWindow, CoeffVec, PowerLawKind, SobolevOrder};
use crate::ode::{solve_ode_with, SolveOptions};
use crate::operators::DiffOpSpec;
use crate::par::Exec;
use crate::rhp::{solve_rhp_with, winding_number, JumpSpec};
use crate::spectrum::{eigen_distances, eigenvalues_self_adjoint_by, EigenReport};
use crate::Discretization;

/// One matched eigenvalue of a spectrum experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenRow {
    pub n: usize,
    pub lambda: f64,
    pub d: f64,
    pub r: f64,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub experiment: ExperimentKind,
    pub mode: Discretization,
    /// `(N, error)` in ascending `N`.
    pub rows: Vec<(usize, f64)>,
    /// Matched eigenvalues with `|λ|` under the cap (spectrum experiments only).
    pub eigen_rows: Vec<EigenRow>,
    /// `None` when fewer than two rows survive the floor exclusion.
    pub fitted_slope: Option<f64>,
    /// Indices into `rows` used by the fit.
    pub fit_range: Vec<usize>,
    pub expected_slope: f64,
    /// Exclusions and warnings, one line each.
    pub notes: Vec<String>,
}

impl ConvergenceReport {
    pub fn is_spectrum(&self) -> bool {
        self.experiment.is_spectrum()
    }
}

/// Width of the window the power-law coefficients are synthesized on: wide
/// enough that every discretization up to `N_ref` sees all modes it can
/// resolve, and collocation sees the aliases of twice as many.
fn coefficient_window(cfg: &ExperimentConfig) -> BandWindow {
    BandWindow::symmetric(2 * cfg.n_ref)
}

/// The differential operator of an `ode3` or spectrum experiment.
pub fn build_operator(cfg: &ExperimentConfig) -> Result<DiffOpSpec> {
    let g = synth_powerlaw(PowerLawKind::G, cfg.alpha, 0.0, coefficient_window(cfg))?;
    let (leading, g) = match cfg.experiment {
        ExperimentKind::Ode3 => (DiffOpSpec::derivative(3, Complex64::new(-1.0, 0.0)), g),
        ExperimentKind::Spectrum2 => (
            DiffOpSpec::derivative(2, Complex64::new(-1.0, 0.0)),
            g.scale(Complex64::new(cfg.epsilon, 0.0)),
        ),
        ExperimentKind::Spectrum3 => (
            DiffOpSpec::derivative(3, Complex64::new(0.0, -1.0)),
            g.scale(Complex64::new(cfg.epsilon, 0.0)),
        ),
        ExperimentKind::Rhp => {
            return Err(Error::Config("rhp experiments have no differential operator".into()))
        }
    };
    leading.with_variable(vec![g], cfg.ell())
}

/// The jump of an `rhp` experiment.
pub fn jump_function(cfg: &ExperimentConfig) -> Result<JumpSpec> {
    JumpSpec::new(synth_powerlaw(PowerLawKind::Gg, cfg.alpha, cfg.epsilon, coefficient_window(cfg))?)
}

fn at_size<T>(n: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::AtSize { n, source: Box::new(e) })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ConvergenceReport> {
    run_experiment_with(cfg, Exec::default())
}

/// Computes the reference, every approximation in `N_list`, the errors and
/// the fitted slope. Sizes are processed independently under `exec`; the
/// result does not depend on the execution policy.
pub fn run_experiment_with(cfg: &ExperimentConfig, exec: Exec) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let mut sizes = cfg.n_list.clone();
    sizes.push(cfg.n_ref);
    let mut notes = Vec::new();

    let (rows, eigen_rows) = match cfg.experiment {
        ExperimentKind::Ode3 => {
            let spec = build_operator(cfg)?;
            let h = synth_powerlaw(PowerLawKind::H, cfg.alpha, 0.0, coefficient_window(cfg))?;
            let opts = SolveOptions::default();
            let sols = solve_all(&sizes, exec, |w| Ok(solve_ode_with(&spec, &h, w, cfg.mode, &opts)?.u))?;
            (errors_against_last(&sizes, &sols, SobolevOrder(cfg.s)), Vec::new())
        }
        ExperimentKind::Rhp => {
            let jump = jump_function(cfg)?;
            let m = 16 * cfg.n_ref;
            let wind = winding_number(jump.g(), m)?;
            if wind != 0 {
                notes.push(format!("warning: jump has winding number {wind}; the problem need not be uniquely solvable"));
            }
            let opts = SolveOptions::default();
            let sols = solve_all(&sizes, exec, |w| {
                Ok(solve_rhp_with(&jump, w, cfg.mode, &opts, Exec::Sequential)?.u)
            })?;
            (errors_against_last(&sizes, &sols, SobolevOrder(cfg.s)), Vec::new())
        }
        ExperimentKind::Spectrum2 | ExperimentKind::Spectrum3 => {
            let spec = build_operator(cfg)?;
            let reports = solve_all(&sizes, exec, |w| eigenvalues_self_adjoint_by(&spec, w, cfg.mode))?;
            spectrum_errors(&cfg.n_list, &reports, cfg.lambda_cap())
        }
    };

    let fit_range: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, &(n, e))| {
            let keep = e >= FLOOR && e.is_finite();
            if !keep {
                notes.push(format!("excluded N={n} from fit: error {e:e} below floor {FLOOR:e}"));
            }
            keep
        })
        .map(|(i, _)| i)
        .collect();
    let fit_rows: Vec<(usize, f64)> = fit_range.iter().map(|&i| rows[i]).collect();
    let fitted_slope = fit_slope(&fit_rows).ok();
    if fitted_slope.is_none() {
        notes.push(format!("slope undefined: {} row(s) above the floor", fit_rows.len()));
    }

    Ok(ConvergenceReport {
        experiment: cfg.experiment,
        mode: cfg.mode,
        rows,
        eigen_rows,
        fitted_slope,
        fit_range,
        expected_slope: cfg.expected_slope(),
        notes,
    })
}

fn solve_all<T: Send>(
    sizes: &[usize],
    exec: Exec,
    f: impl Fn(BandWindow) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    exec.map(sizes, |&n| at_size(n, BandWindow::new(n).and_then(&f))).into_iter().collect()
}

fn errors_against_last(sizes: &[usize], sols: &[CoeffVec], s: SobolevOrder) -> Vec<(usize, f64)> {
    let (reference, approx) = sols.split_last().expect("reference solution present");
    sizes.iter().zip(approx).map(|(&n, u)| (n, diff_norm(reference, u, s))).collect()
}

fn spectrum_errors(n_list: &[usize], reports: &[EigenReport], cap: f64) -> (Vec<(usize, f64)>, Vec<EigenRow>) {
    let (reference, tests) = reports.split_last().expect("reference spectrum present");
    let mut rows = Vec::with_capacity(tests.len());
    let mut eigen_rows = Vec::new();
    for (&n, test) in n_list.iter().zip(tests) {
        let mut worst = 0.0_f64;
        for d in eigen_distances(test, reference).into_iter().filter(|d| d.lambda.abs() <= cap) {
            worst = worst.max(d.d);
            eigen_rows.push(EigenRow { n, lambda: d.lambda, d: d.d, r: d.r });
        }
        rows.push((n, worst));
    }
    (rows, eigen_rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn cfg(kind: ExperimentKind, n_list: Vec<usize>, n_ref: usize) -> ExperimentConfig {
        ExperimentConfig {
            experiment: kind,
            alpha: 2.51,
            epsilon: 1.0,
            s: 0.0,
            t: 2.0,
            n_list,
            n_ref,
            mode: Discretization::FiniteSection,
            output_path: PathBuf::from("unused.csv"),
            lambda_cap: None,
        }
    }

    #[test]
    fn zero_potential_spectrum_is_exact() {
        let mut c = cfg(ExperimentKind::Spectrum2, vec![11, 21], 41);
        c.epsilon = 0.0;
        let rep = run_experiment(&c).unwrap();
        assert!(rep.rows.iter().all(|&(_, e)| e == 0.0));
        assert!(rep.fitted_slope.is_none());
        assert!(rep.fit_range.is_empty());
        assert!(rep.notes.iter().any(|n| n.contains("slope undefined")));
    }

    #[test]
    fn ode3_errors_decrease() {
        let mut c = cfg(ExperimentKind::Ode3, vec![20, 40, 80], 201);
        c.alpha = 1.51;
        c.t = 1.0;
        let rep = run_experiment(&c).unwrap();
        assert!(rep.rows.windows(2).all(|w| w[1].1 < w[0].1), "{:?}", rep.rows);
        assert!(rep.fitted_slope.unwrap() < -3.0);
    }

    #[test]
    fn spectrum_rows_respect_cap() {
        let mut c = cfg(ExperimentKind::Spectrum3, vec![21, 41], 81);
        c.lambda_cap = Some(10.0);
        let rep = run_experiment(&c).unwrap();
        assert!(!rep.eigen_rows.is_empty());
        assert!(rep.eigen_rows.iter().all(|r| r.lambda.abs() <= 10.0));
    }

    #[test]
    fn execution_policy_does_not_change_results() {
        let mut c = cfg(ExperimentKind::Rhp, vec![16, 32], 64);
        c.alpha = 1.51;
        c.epsilon = 0.01;
        let a = run_experiment_with(&c, Exec::Sequential).unwrap();
        let b = run_experiment_with(&c, Exec::Parallel).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn rhp_has_no_operator() {
        assert!(build_operator(&cfg(ExperimentKind::Rhp, vec![8], 16)).unwrap_err().is_config());
    }
}
