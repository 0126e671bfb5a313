//! Eigenvalue approximation for periodic differential operators by finite
//! sections, with the error measures used to study its convergence.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{BandWindow, CoeffVec, SobolevOrder};
use crate::linalg;
use crate::operators::{assemble_finite_section_ode, assemble_ode, DiffOpSpec, OperatorMatrix};
use crate::par::Exec;
use crate::Discretization;

/// Relative tolerance on `|A - A^H|` accepted as Hermitian.
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues of a self-adjoint finite section, ascending.
#[derive(Clone, Debug)]
pub struct EigenReport {
    pub window: BandWindow,
    pub eigenvalues: Vec<f64>,
    pub ell: f64,
    pub k: usize,
    pub p: Option<usize>,
    /// `max ‖A v - λ v‖₂ / ‖A‖₂` over the returned pairs.
    pub max_residual: f64,
}

/// One test eigenvalue with its distance to the reference spectrum and the
/// rescaled error `d · N^ℓ · (2 + |λ|)^{-ℓ/k}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenDistance {
    pub lambda: f64,
    pub d: f64,
    pub r: f64,
}

fn hermitian_matrix(spec: &DiffOpSpec, w: BandWindow, mode: Discretization) -> Result<OperatorMatrix> {
    let a = assemble_ode(spec, w, mode)?;
    let scale = a.max_abs().max(1.0);
    let asymmetry = linalg::hermitian_defect(a.entries.as_ref());
    if asymmetry > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { asymmetry });
    }
    Ok(a)
}

/// Eigenpairs of the Hermitian matrix of `L0 + P_N L1` (or `L0 + I_N L1`).
/// Eigenvectors are returned as unit-ℓ² coefficient vectors.
pub fn eigenpairs_self_adjoint(
    spec: &DiffOpSpec,
    w: BandWindow,
    mode: Discretization,
) -> Result<(EigenReport, Vec<CoeffVec>)> {
    let a = hermitian_matrix(spec, w, mode)?;
    let (eigenvalues, vecs) = linalg::hermitian_eigen(a.entries.as_ref())?;
    let n = w.n();
    let norm = linalg::spectral_norm(a.entries.as_ref())?.max(f64::MIN_POSITIVE);
    let mut max_residual = 0.0_f64;
    let mut pairs = Vec::with_capacity(n);
    for j in 0..eigenvalues.len() {
        let v: Vec<Complex64> = (0..n).map(|i| vecs[(i, j)]).collect();
        let av = linalg::matvec(a.entries.as_ref(), &v);
        // The solver's eigenvalues are accurate to eps·‖A‖ in absolute
        // terms, which swamps small eigenvalues once the diagonal grows like
        // N^k. The Rayleigh quotient errs only quadratically in the
        // eigenvector error, and that error is damped by 1/σ₀(m) in the
        // high modes, so it recovers near-relative accuracy.
        let vv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        let lam = v.iter().zip(&av).map(|(x, y)| (x.conj() * y).re).sum::<f64>() / vv;
        let res: Vec<Complex64> = av.iter().zip(&v).map(|(x, y)| x - y * lam).collect();
        max_residual = max_residual.max(linalg::l2_norm(&res) / norm);
        pairs.push((lam, CoeffVec::new(w.min_mode(), v)?));
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (eigenvalues, vectors): (Vec<f64>, Vec<CoeffVec>) = pairs.into_iter().unzip();
    let report = EigenReport {
        window: w,
        eigenvalues,
        ell: spec.ell(),
        k: spec.k(),
        p: spec.p(),
        max_residual,
    };
    Ok((report, vectors))
}

/// All eigenvalues of the finite-section matrix of a self-adjoint operator.
pub fn eigenvalues_self_adjoint(spec: &DiffOpSpec, w: BandWindow) -> Result<EigenReport> {
    eigenvalues_self_adjoint_by(spec, w, Discretization::FiniteSection)
}

pub fn eigenvalues_self_adjoint_by(
    spec: &DiffOpSpec,
    w: BandWindow,
    mode: Discretization,
) -> Result<EigenReport> {
    Ok(eigenpairs_self_adjoint(spec, w, mode)?.0)
}

/// Eigenvalues of the finite-section matrix without any symmetry
/// assumption, unordered.
pub fn eigenvalues_general(spec: &DiffOpSpec, w: BandWindow) -> Result<Vec<Complex64>> {
    let a = assemble_finite_section_ode(spec, w);
    linalg::eigenvalues(a.entries.as_ref())
}

/// Index of the reference value nearest to `x` in an ascending slice; ties
/// go to the smaller index.
fn nearest(sorted: &[f64], x: f64) -> usize {
    let upper = sorted.partition_point(|&v| v < x);
    match upper {
        0 => 0,
        u if u == sorted.len() => u - 1,
        u => {
            if (x - sorted[u - 1]).abs() <= (sorted[u] - x).abs() { u - 1 } else { u }
        }
    }
}

/// Nearest-neighbour distance of every test eigenvalue to the reference
/// spectrum, with the rescaled error using the test eigenvalue and the
/// operator metadata of `test`.
pub fn eigen_distances(test: &EigenReport, reference: &EigenReport) -> Vec<EigenDistance> {
    if reference.eigenvalues.is_empty() {
        return Vec::new();
    }
    let n = test.window.n() as f64;
    let ell = test.ell;
    let k = test.k as f64;
    test.eigenvalues
        .iter()
        .map(|&lambda| {
            let i = nearest(&reference.eigenvalues, lambda);
            let d = (lambda - reference.eigenvalues[i]).abs();
            let r = d * n.powf(ell) * (2.0 + lambda.abs()).powf(-ell / k);
            EigenDistance { lambda, d, r }
        })
        .collect()
}

/// Number of eigenvalues within `delta` of each center. Centers must be
/// pairwise more than `3 delta` apart.
pub fn cluster_multiplicities(report: &EigenReport, centers: &[f64], delta: f64) -> Result<Vec<usize>> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!("cluster radius must be positive, got {delta}")));
    }
    for (i, a) in centers.iter().enumerate() {
        for b in &centers[i + 1..] {
            if (a - b).abs() <= 3.0 * delta {
                return Err(Error::InvalidArgument(format!(
                    "centers {a} and {b} are not separated by more than 3δ = {}",
                    3.0 * delta
                )));
            }
        }
    }
    Ok(centers
        .iter()
        .map(|&c| report.eigenvalues.iter().filter(|&&l| (l - c).abs() < delta).count())
        .collect())
}

/// Weighted resolvent norms `‖(z - A)^{-1}‖_{H^{s-k} → H^s}` of the finite
/// section `A`, one per grid point; infinite where `z - A` is numerically
/// singular.
pub fn resolvent_norm_grid(
    spec: &DiffOpSpec,
    w: BandWindow,
    z_grid: &[Complex64],
    s: SobolevOrder,
) -> Result<Vec<f64>> {
    resolvent_norm_grid_with(spec, w, z_grid, s, Exec::default())
}

pub fn resolvent_norm_grid_with(
    spec: &DiffOpSpec,
    w: BandWindow,
    z_grid: &[Complex64],
    s: SobolevOrder,
    exec: Exec,
) -> Result<Vec<f64>> {
    let a = assemble_finite_section_ode(spec, w);
    let n = w.n();
    let codom = SobolevOrder(s.0 - spec.k() as f64);
    let row_w: Vec<f64> = w.modes().map(|m| codom.weight(m)).collect();
    let col_w: Vec<f64> = w.modes().map(|m| 1.0 / s.weight(m)).collect();
    exec.map(z_grid, |&z| {
        let b = Mat::from_fn(n, n, |r, c| {
            let shift = if r == c { z } else { Complex64::new(0.0, 0.0) };
            (shift - a.entries[(r, c)]) * (row_w[r] * col_w[c])
        });
        let sv = linalg::singular_values(b.as_ref())?;
        let (largest, smallest) = (sv[0], sv[sv.len() - 1]);
        Ok(if smallest <= n as f64 * f64::EPSILON * largest {
            f64::INFINITY
        } else {
            1.0 / smallest
        })
    })
    .into_iter()
    .collect()
}

/// Comparison of the finite-section spectrum with the spectrum of `L_N` on
/// all of `L²` inside the disk `|z| ≤ c N^{k-1}`.
#[derive(Clone, Debug)]
pub struct CoincidenceReport {
    pub radius: f64,
    /// Finite-section eigenvalues inside the disk.
    pub section: Vec<f64>,
    /// Finite-section eigenvalues together with the symbols `σ₀(m)` of the
    /// truncated modes, inside the disk, ascending.
    pub full: Vec<f64>,
    pub hausdorff: f64,
}

fn one_sided(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .map(|&x| b[nearest(b, x)].sub_abs(x))
        .fold(0.0, f64::max)
}

trait SubAbs {
    fn sub_abs(self, other: f64) -> f64;
}

impl SubAbs for f64 {
    fn sub_abs(self, other: f64) -> f64 {
        (self - other).abs()
    }
}

/// Hausdorff distance of two finite sets of reals, each sorted ascending.
pub fn hausdorff_sorted(a: &[f64], b: &[f64]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        _ => one_sided(a, b).max(one_sided(b, a)),
    }
}

pub fn truncation_coincidence(spec: &DiffOpSpec, w: BandWindow, c: f64) -> Result<CoincidenceReport> {
    let report = eigenvalues_self_adjoint(spec, w)?;
    let radius = c * (w.n() as f64).powi(spec.k() as i32 - 1);
    let inside = |x: &f64| x.abs() <= radius;
    let section: Vec<f64> = report.eigenvalues.iter().copied().filter(inside).collect();

    let escape = spec.symbol_escape_radius(radius);
    let mut full = section.clone();
    let tail_modes = (w.max_mode() + 1..=escape.max(w.max_mode() + 1))
        .chain((-escape).min(w.min_mode() - 1)..=w.min_mode() - 1);
    for m in tail_modes {
        let sym = spec.symbol(m).re;
        if inside(&sym) {
            full.push(sym);
        }
    }
    full.sort_by(f64::total_cmp);
    let hausdorff = hausdorff_sorted(&section, &full);
    Ok(CoincidenceReport { radius, section, full, hausdorff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{synth_powerlaw, PowerLawKind};

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn laplacian() -> DiffOpSpec {
        DiffOpSpec::derivative(2, -ONE)
    }

    fn second_order(scale: f64, n_ref: usize) -> DiffOpSpec {
        let g = synth_powerlaw(PowerLawKind::G, 2.51, 0.0, BandWindow::symmetric(n_ref)).unwrap();
        laplacian().with_variable(vec![g.scale(Complex64::new(scale, 0.0))], 2.0).unwrap()
    }

    #[test]
    fn laplacian_eigenvalues_are_squares() {
        let w = BandWindow::new(11).unwrap();
        let rep = eigenvalues_self_adjoint(&laplacian(), w).unwrap();
        let mut expect: Vec<f64> = w.modes().map(|m| (m * m) as f64).collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in rep.eigenvalues.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(rep.eigenvalues.len(), 11);
    }

    #[test]
    fn constant_shift() {
        let w = BandWindow::new(10).unwrap();
        let shifted = laplacian().with_variable(vec![CoeffVec::constant(Complex64::new(2.5, 0.0))], 10.0).unwrap();
        let a = eigenvalues_self_adjoint(&laplacian(), w).unwrap();
        let b = eigenvalues_self_adjoint(&shifted, w).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((y - x - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let op = laplacian()
            .with_variable(vec![CoeffVec::from_modes(&[(1, ONE)]).unwrap()], 10.0)
            .unwrap();
        assert!(!op.is_self_adjoint());
        let err = eigenvalues_self_adjoint(&op, BandWindow::new(8).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
        assert_eq!(eigenvalues_general(&op, BandWindow::new(8).unwrap()).unwrap().len(), 8);
    }

    #[test]
    fn residuals_are_small() {
        let (rep, _) =
            eigenpairs_self_adjoint(&second_order(1.0, 200), BandWindow::new(81).unwrap(), Discretization::FiniteSection)
                .unwrap();
        assert!(rep.max_residual <= 1e-10, "{}", rep.max_residual);
    }

    #[test]
    fn distances_to_self_vanish() {
        let rep = eigenvalues_self_adjoint(&second_order(1.0, 100), BandWindow::new(21).unwrap()).unwrap();
        assert!(eigen_distances(&rep, &rep).iter().all(|d| d.d == 0.0 && d.r == 0.0));
    }

    #[test]
    fn constant_coefficient_distances_vanish() {
        let a = eigenvalues_self_adjoint(&laplacian(), BandWindow::new(9).unwrap()).unwrap();
        let b = eigenvalues_self_adjoint(&laplacian(), BandWindow::new(31).unwrap()).unwrap();
        assert!(eigen_distances(&a, &b).iter().all(|d| d.d < 1e-12));
    }

    #[test]
    fn nearest_breaks_ties_low() {
        assert_eq!(nearest(&[0.0, 2.0], 1.0), 0);
        assert_eq!(nearest(&[0.0, 2.0], 1.5), 1);
        assert_eq!(nearest(&[0.0, 2.0], -5.0), 0);
        assert_eq!(nearest(&[0.0, 2.0], 5.0), 1);
    }

    #[test]
    fn clusters_of_laplacian() {
        let rep = eigenvalues_self_adjoint(&laplacian(), BandWindow::new(41).unwrap()).unwrap();
        let counts = cluster_multiplicities(&rep, &[0.0, 1.0, 4.0], 0.1).unwrap();
        assert_eq!(counts, vec![1, 2, 2]);
        assert!(cluster_multiplicities(&rep, &[0.0, 0.25], 0.1).is_err());
        assert!(cluster_multiplicities(&rep, &[0.0], 0.0).is_err());
    }

    #[test]
    fn diagonal_resolvent_closed_form() {
        let w = BandWindow::new(15).unwrap();
        let op = laplacian();
        let s = SobolevOrder(0.5);
        let zs = [Complex64::new(-3.0, 0.5), Complex64::new(10.0, 2.0), Complex64::new(4.5, 0.0)];
        let vals = resolvent_norm_grid(&op, w, &zs, s).unwrap();
        for (z, v) in zs.iter().zip(vals) {
            let expect = w
                .modes()
                .map(|m| (1.0 + m.abs() as f64).powi(2) / (z - op.symbol(m)).norm())
                .fold(0.0, f64::max);
            assert!((v - expect).abs() <= 1e-10 * expect, "{v} vs {expect}");
        }
        let at_eigen = resolvent_norm_grid(&op, w, &[Complex64::new(4.0, 0.0)], s).unwrap();
        assert!(at_eigen[0].is_infinite());
    }

    #[test]
    fn hausdorff_basics() {
        assert_eq!(hausdorff_sorted(&[], &[]), 0.0);
        assert!(hausdorff_sorted(&[1.0], &[]).is_infinite());
        assert_eq!(hausdorff_sorted(&[0.0, 1.0], &[0.0, 1.0, 5.0]), 4.0);
    }

    #[test]
    fn coincidence_for_constant_coefficients() {
        for n in [5usize, 8, 21] {
            let rep = truncation_coincidence(&laplacian(), BandWindow::new(n).unwrap(), 1.0).unwrap();
            assert_eq!(rep.hausdorff, 0.0, "n = {n}");
        }
    }

    #[test]
    fn coincidence_detects_intruding_tail() {
        // N = 11 keeps |m| ≤ 5; with c = 4 the disk reaches 44 > 36 = σ₀(6).
        let op = second_order(1.0, 100);
        let rep = truncation_coincidence(&op, BandWindow::new(11).unwrap(), 4.0).unwrap();
        assert!(rep.full.len() > rep.section.len());
        assert!(rep.hausdorff > 1.0);
    }
}
