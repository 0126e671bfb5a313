//! Spectral methods for operator equations on periodic function spaces.
//!
//! Functions on the circle are represented by finite windows of Fourier
//! (Laurent) coefficients ([`CoeffVec`]). On top of that representation the
//! crate assembles dense matrices for periodic differential operators,
//! Toeplitz and Hankel pieces and Cauchy projectors, and uses them to
//!
//! * solve periodic differential equations by the finite-section and
//!   collocation methods ([`ode`]),
//! * solve scalar Riemann–Hilbert problems on the unit circle through a
//!   singular integral equation ([`rhp`]),
//! * approximate spectra and pseudospectra of self-adjoint periodic operators
//!   ([`spectrum`]),
//! * measure convergence rates in Sobolev norms ([`harness`]).
//!
//! The `parallel` feature (on by default) spreads independent work such as
//! sweeps over truncation sizes across a rayon pool; [`Exec::Sequential`]
//! forces the serial path at run time.

// `!(x > y)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fourier;
pub mod harness;
pub mod linalg;
pub mod ode;
pub mod operators;
pub mod par;
pub mod rhp;
pub mod spectrum;

pub use error::{Error, Result};
pub use fourier::{
    diff_norm, evaluate_on_grid, interpolate, project, sobolev_norm, synth_powerlaw, BandWindow,
    CoeffVec, GridTransform, PowerLawKind, SobolevOrder,
};
pub use num_complex::Complex64;
pub use operators::{DiffOpSpec, OperatorMatrix};
pub use par::Exec;

/// How the operator is compressed to the span of the retained modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Discretization {
    /// Orthogonal projection `P_N`.
    FiniteSection,
    /// Trigonometric interpolation `I_N` on the N-point grid.
    Collocation,
}

impl std::fmt::Display for Discretization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Discretization::FiniteSection => f.write_str("finite_section"),
            Discretization::Collocation => f.write_str("collocation"),
        }
    }
}
