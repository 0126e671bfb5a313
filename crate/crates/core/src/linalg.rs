//! Thin layer over `faer` for the dense factorizations the solvers need.

use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::{Mat, MatRef, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the 1-norm condition estimate before a solve is refused.
pub const DEFAULT_CONDITION_CAP: f64 = 1e12;

/// LU factorization with partial pivoting plus a 1-norm condition estimate.
pub struct LuFactor {
    lu: PartialPivLu<Complex64>,
    n: usize,
    norm1: f64,
    singular: bool,
}

impl LuFactor {
    pub fn new(a: MatRef<'_, Complex64>) -> Self {
        assert_eq!(a.nrows(), a.ncols(), "LU of a non-square matrix");
        let n = a.nrows();
        let norm1 = (0..n)
            .map(|j| (0..n).map(|i| a[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max);
        let lu = a.partial_piv_lu();
        let u = lu.U();
        let singular = (0..n).any(|i| {
            let d = u[(i, i)];
            d.norm() == 0.0 || !d.re.is_finite() || !d.im.is_finite()
        });
        Self { lu, n, norm1, singular }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let mut rhs = Mat::from_fn(self.n, 1, |i, _| b[i]);
        self.lu.solve_in_place(rhs.as_mut());
        rhs.col_as_slice(0).to_vec()
    }

    pub fn solve_adjoint(&self, b: &[Complex64]) -> Vec<Complex64> {
        let mut rhs = Mat::from_fn(self.n, 1, |i, _| b[i]);
        self.lu.solve_adjoint_in_place(rhs.as_mut());
        rhs.col_as_slice(0).to_vec()
    }

    /// Estimate of `‖A‖₁ ‖A⁻¹‖₁` (Hager's method with Higham's alternating
    /// test vector). Infinite for an exactly singular factor.
    pub fn condition_estimate(&self) -> f64 {
        if self.singular {
            return f64::INFINITY;
        }
        let n = self.n;
        if n == 0 {
            return 1.0;
        }
        let one_norm = |v: &[Complex64]| v.iter().map(|c| c.norm()).sum::<f64>();
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut est = 0.0_f64;
        let mut last_j = usize::MAX;
        for iter in 0..5 {
            let y = self.solve(&x);
            est = est.max(one_norm(&y));
            let sign: Vec<Complex64> = y
                .iter()
                .map(|&v| {
                    let r = v.norm();
                    if r == 0.0 { Complex64::new(1.0, 0.0) } else { v / r }
                })
                .collect();
            let z = self.solve_adjoint(&sign);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .fold((0, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if iter > 0 && (zmax <= ztx || j == last_j) {
                break;
            }
            last_j = j;
            x = vec![Complex64::new(0.0, 0.0); n];
            x[j] = Complex64::new(1.0, 0.0);
        }
        let alt: Vec<Complex64> = (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let frac = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                Complex64::new(sign * (1.0 + frac), 0.0)
            })
            .collect();
        let alt_est = 2.0 * one_norm(&self.solve(&alt)) / (3.0 * n as f64);
        let inv_norm = est.max(alt_est);
        if inv_norm.is_finite() {
            self.norm1 * inv_norm
        } else {
            f64::INFINITY
        }
    }
}

/// Solves `A x = b`, refusing when the condition estimate exceeds `cap`.
/// Returns the solution and the condition estimate.
pub fn solve_checked(
    a: MatRef<'_, Complex64>,
    b: &[Complex64],
    cap: f64,
) -> Result<(Vec<Complex64>, f64)> {
    let lu = LuFactor::new(a);
    let condition = lu.condition_estimate();
    if !(condition <= cap) {
        return Err(Error::IllConditioned { condition, cap });
    }
    Ok((lu.solve(b), condition))
}

/// Dense inverse through the LU factorization.
pub fn inverse(a: MatRef<'_, Complex64>, cap: f64) -> Result<Mat<Complex64>> {
    let n = a.nrows();
    let lu = LuFactor::new(a);
    let condition = lu.condition_estimate();
    if !(condition <= cap) {
        return Err(Error::IllConditioned { condition, cap });
    }
    let mut out = Mat::<Complex64>::identity(n, n);
    lu.lu.solve_in_place(out.as_mut());
    Ok(out)
}

pub fn matvec(a: MatRef<'_, Complex64>, x: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.ncols(), x.len());
    let mut y = vec![Complex64::new(0.0, 0.0); a.nrows()];
    for (j, &xj) in x.iter().enumerate() {
        if xj == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += a[(i, j)] * xj;
        }
    }
    y
}

pub fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry of `|A - A^H|`.
pub fn hermitian_defect(a: MatRef<'_, Complex64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues (ascending) and unit eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(a: MatRef<'_, Complex64>) -> Result<(Vec<f64>, Mat<Complex64>)> {
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let values = evd.S().column_vector().iter().map(|c| c.re).collect();
    Ok((values, evd.U().to_owned()))
}

pub fn hermitian_eigenvalues(a: MatRef<'_, Complex64>) -> Result<Vec<f64>> {
    let values = a
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    Ok(values)
}

/// Eigenvalues of a general square matrix, unordered.
pub fn eigenvalues(a: MatRef<'_, Complex64>) -> Result<Vec<Complex64>> {
    a.eigenvalues().map_err(|e| Error::Eigen(format!("{e:?}")))
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: MatRef<'_, Complex64>) -> Result<Vec<f64>> {
    a.singular_values().map_err(|e| Error::Eigen(format!("{e:?}")))
}

pub fn spectral_norm(a: MatRef<'_, Complex64>) -> Result<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(0.0);
    }
    Ok(singular_values(a)?[0])
}
