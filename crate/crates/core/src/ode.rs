//! Finite-section and collocation solvers for periodic differential
//! equations `L u = f`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{project, BandWindow, CoeffVec, GridTransform};
use crate::linalg::{self, DEFAULT_CONDITION_CAP};
use crate::operators::{assemble_ode, DiffOpSpec};
use crate::Discretization;

/// Options for the dense linear solve.
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Largest accepted 1-norm condition estimate.
    pub condition_cap: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { condition_cap: DEFAULT_CONDITION_CAP }
    }
}

/// Solution of a discretized equation together with solve diagnostics.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub u: CoeffVec,
    pub condition: f64,
    /// `‖A u - rhs‖₂ / ‖rhs‖₂` (absolute when `rhs = 0`).
    pub relative_residual: f64,
}

/// Right-hand side `P_N f` or `I_N f` on the window.
pub(crate) fn discretize_rhs(f: &CoeffVec, w: BandWindow, mode: Discretization) -> Result<CoeffVec> {
    Ok(match mode {
        Discretization::FiniteSection => project(f, w),
        Discretization::Collocation => {
            let grid = GridTransform::new(w.n())?;
            grid.interpolate(&grid.evaluate(f))?
        }
    })
}

pub(crate) fn solve_dense(
    a: &crate::OperatorMatrix,
    rhs: &CoeffVec,
    opts: &SolveOptions,
) -> Result<LinearSolution> {
    let b = rhs.coeffs();
    let (x, condition) = linalg::solve_checked(a.entries.as_ref(), b, opts.condition_cap)?;
    let ax = linalg::matvec(a.entries.as_ref(), &x);
    let r: Vec<Complex64> = ax.iter().zip(b).map(|(p, q)| p - q).collect();
    let bn = linalg::l2_norm(b);
    let rn = linalg::l2_norm(&r);
    Ok(LinearSolution {
        u: CoeffVec::new(a.window.min_mode(), x)?,
        condition,
        relative_residual: if bn > 0.0 { rn / bn } else { rn },
    })
}

/// Solves `(L0 + X L1) u_N = X f` for `u_N` on the window, where `X` is
/// `P_N` or `I_N` depending on `mode`.
pub fn solve_ode(
    spec: &DiffOpSpec,
    f: &CoeffVec,
    w: BandWindow,
    mode: Discretization,
) -> Result<CoeffVec> {
    Ok(solve_ode_with(spec, f, w, mode, &SolveOptions::default())?.u)
}

pub fn solve_ode_with(
    spec: &DiffOpSpec,
    f: &CoeffVec,
    w: BandWindow,
    mode: Discretization,
    opts: &SolveOptions,
) -> Result<LinearSolution> {
    let a = assemble_ode(spec, w, mode)?;
    let rhs = discretize_rhs(f, w, mode)?;
    solve_dense(&a, &rhs, opts)
}

/// Divides by the symbol: the exact solution of `L0 u = f` for an operator
/// without variable part.
pub fn exact_constant_solve(spec: &DiffOpSpec, f: &CoeffVec) -> Result<CoeffVec> {
    if !spec.is_constant() {
        return Err(Error::InvalidArgument(
            "exact solve needs an operator without variable part".into(),
        ));
    }
    let mut out = f.clone();
    for (m, c) in f.iter() {
        let sigma = spec.symbol(m);
        if sigma == Complex64::new(0.0, 0.0) {
            return Err(Error::VanishingSymbol { mode: m });
        }
        *out.get_mut(m).expect("same window") = c / sigma;
    }
    Ok(out)
}
