//! Scalar Riemann–Hilbert problems on the unit circle.
//!
//! Find `φ`, analytic off the circle with `φ(∞) = 1`, such that
//! `φ⁺ = φ⁻ g` on the circle. Writing `φ = 1 + C u` turns the problem into
//! the singular integral equation `C⁺u - (C⁻u) g = g - 1`, which is
//! discretized on a [`BandWindow`] and solved densely.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{BandWindow, CoeffVec, GridTransform};
use crate::ode::{discretize_rhs, solve_dense, LinearSolution, SolveOptions};
use crate::operators::{assemble_sie_with, minus_one};
use crate::par::Exec;
use crate::Discretization;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Oversampling factor for the grid certifying `min |g|`.
const CERTIFY_OVERSAMPLE: usize = 16;

/// A jump function `g` with a certified lower bound on `|g|` over a fine
/// grid on the circle.
#[derive(Clone, Debug)]
pub struct JumpSpec {
    g: CoeffVec,
    min_modulus: f64,
}

impl JumpSpec {
    /// Certifies `min |g| > 0` on a grid of `16 · len(g)` points (at least
    /// 64). Values below `1e-12 · max |g|` count as zero.
    pub fn new(g: CoeffVec) -> Result<Self> {
        let m = (CERTIFY_OVERSAMPLE * g.len()).max(64);
        let values = GridTransform::new(m)?.evaluate(&g);
        let min_modulus = values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        let max_modulus = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if !(min_modulus > 1e-12 * max_modulus) {
            return Err(Error::VanishingJump { min_modulus });
        }
        Ok(Self { g, min_modulus })
    }

    pub fn g(&self) -> &CoeffVec {
        &self.g
    }

    pub fn min_modulus(&self) -> f64 {
        self.min_modulus
    }
}

/// Winding number of `g` about the origin, from phase increments over an
/// `m`-point grid.
pub fn winding_number(g: &CoeffVec, m: usize) -> Result<i64> {
    let vals = GridTransform::new(m)?.evaluate(g);
    let mut total = 0.0;
    for i in 0..m {
        let a = vals[i];
        let b = vals[(i + 1) % m];
        total += (b / a).arg();
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Side of the circle for boundary values: `Plus` is the limit from inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundarySide {
    Plus,
    Minus,
}

/// Density `u` of `φ = 1 + C u` on a window.
#[derive(Clone, Debug)]
pub struct RHSolution {
    pub u: CoeffVec,
    pub window: BandWindow,
    pub condition: f64,
    pub relative_residual: f64,
}

impl RHSolution {
    /// Coefficients of `C⁺u` (modes `j ≥ 0`).
    pub fn c_plus(&self) -> CoeffVec {
        CoeffVec::from_fn(self.u.j_min(), self.u.j_max(), |m| if m >= 0 { self.u.get(m) } else { Complex64::new(0.0, 0.0) })
    }

    /// Coefficients of `C⁻u = -Σ_{j<0} u_j z^j`.
    pub fn c_minus(&self) -> CoeffVec {
        CoeffVec::from_fn(self.u.j_min(), self.u.j_max(), |m| if m < 0 { -self.u.get(m) } else { Complex64::new(0.0, 0.0) })
    }
}

/// Solves the discretized singular integral equation on `w`.
pub fn solve_rhp(jump: &JumpSpec, w: BandWindow, mode: Discretization) -> Result<RHSolution> {
    solve_rhp_with(jump, w, mode, &SolveOptions::default(), Exec::default())
}

pub fn solve_rhp_with(
    jump: &JumpSpec,
    w: BandWindow,
    mode: Discretization,
    opts: &SolveOptions,
    exec: Exec,
) -> Result<RHSolution> {
    let a = assemble_sie_with(jump.g(), w, mode, exec)?;
    let rhs = discretize_rhs(&minus_one(jump.g()), w, mode)?;
    let LinearSolution { u, condition, relative_residual } = solve_dense(&a, &rhs, opts)?;
    Ok(RHSolution { u, window: w, condition, relative_residual })
}

/// `φ(z) = 1 + C u(z)` from truncated Laurent sums. Off the circle `side`
/// is ignored; on the circle it selects the boundary value and is required.
pub fn evaluate_phi(sol: &RHSolution, z: Complex64, side: Option<BoundarySide>) -> Result<Complex64> {
    const ON_CIRCLE: f64 = 1e-12;
    let r = z.norm();
    let side = if (r - 1.0).abs() <= ON_CIRCLE {
        side.ok_or(Error::OnContour(z))?
    } else if r < 1.0 {
        BoundarySide::Plus
    } else {
        BoundarySide::Minus
    };
    Ok(match side {
        BoundarySide::Plus => ONE + sol.c_plus().eval_z(z),
        BoundarySide::Minus => ONE + sol.c_minus().eval_z(z),
    })
}

/// `max_ℓ |φ⁺(z_ℓ) - φ⁻(z_ℓ) g(z_ℓ)|` over the `m`-point grid.
pub fn jump_residual(sol: &RHSolution, jump: &JumpSpec, m: usize) -> Result<f64> {
    if m < sol.window.n() {
        return Err(Error::InvalidArgument(format!(
            "residual grid of {m} points is coarser than the window ({})",
            sol.window.n()
        )));
    }
    let grid = GridTransform::new(m)?;
    let plus = grid.evaluate(&sol.c_plus());
    let minus = grid.evaluate(&sol.c_minus());
    let g = grid.evaluate(jump.g());
    Ok((0..m)
        .map(|i| ((ONE + plus[i]) - (ONE + minus[i]) * g[i]).norm())
        .fold(0.0, f64::max))
}
