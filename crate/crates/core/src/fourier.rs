//! Coefficient-space representation of periodic functions.
//!
//! A function `u(θ) = Σ u_j e^{ijθ}` on the torus (equivalently
//! `u(z) = Σ u_j z^j` on the unit circle) is stored as a contiguous window
//! of coefficients `u_{j_min}, …, u_{j_max}`. Modes outside the window are
//! zero.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The retained modes of a truncation of size `N`: `-N_minus ..= N_plus`
/// with `N_minus = ⌊N/2⌋` and `N_plus = ⌊(N-1)/2⌋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BandWindow {
    n: usize,
}

impl BandWindow {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("window size must be positive".into()));
        }
        Ok(Self { n })
    }

    /// Odd window covering `-m ..= m`.
    pub fn symmetric(m: usize) -> Self {
        Self { n: 2 * m + 1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_minus(&self) -> usize {
        self.n / 2
    }

    pub fn n_plus(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn min_mode(&self) -> i64 {
        -(self.n_minus() as i64)
    }

    pub fn max_mode(&self) -> i64 {
        self.n_plus() as i64
    }

    pub fn modes(&self) -> std::ops::RangeInclusive<i64> {
        self.min_mode()..=self.max_mode()
    }

    pub fn contains(&self, mode: i64) -> bool {
        mode >= self.min_mode() && mode <= self.max_mode()
    }

    /// Array slot of `mode`, if retained.
    pub fn index_of(&self, mode: i64) -> Option<usize> {
        self.contains(mode).then(|| (mode - self.min_mode()) as usize)
    }

    pub fn mode_at(&self, index: usize) -> i64 {
        debug_assert!(index < self.n);
        index as i64 + self.min_mode()
    }
}

/// Sobolev order `s`; mode `j` carries weight `(1 + |j|)^s`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SobolevOrder(pub f64);

impl SobolevOrder {
    pub const L2: SobolevOrder = SobolevOrder(0.0);

    #[inline]
    pub fn weight(self, mode: i64) -> f64 {
        (1.0 + mode.unsigned_abs() as f64).powf(self.0)
    }
}

impl From<f64> for SobolevOrder {
    fn from(s: f64) -> Self {
        SobolevOrder(s)
    }
}

/// A finite window of Laurent/Fourier coefficients.
#[derive(Clone, PartialEq)]
pub struct CoeffVec {
    j_min: i64,
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for CoeffVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().filter(|(_, c)| *c != ZERO))
            .finish()
    }
}

impl CoeffVec {
    pub fn new(j_min: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("coefficient vector must be nonempty".into()));
        }
        Ok(Self { j_min, coeffs })
    }

    pub fn zeros(j_min: i64, j_max: i64) -> Self {
        assert!(j_max >= j_min, "empty mode range {j_min}..={j_max}");
        Self {
            j_min,
            coeffs: vec![ZERO; (j_max - j_min + 1) as usize],
        }
    }

    /// Zero vector on the modes of `w`.
    pub fn zeros_on(w: BandWindow) -> Self {
        Self::zeros(w.min_mode(), w.max_mode())
    }

    /// Tabulates `f(mode)` over the modes of `w`.
    pub fn on_window(w: BandWindow, f: impl Fn(i64) -> Complex64) -> Self {
        Self {
            j_min: w.min_mode(),
            coeffs: w.modes().map(f).collect(),
        }
    }

    /// Tabulates `f(mode)` over `j_min ..= j_max`.
    pub fn from_fn(j_min: i64, j_max: i64, f: impl Fn(i64) -> Complex64) -> Self {
        assert!(j_max >= j_min, "empty mode range {j_min}..={j_max}");
        Self {
            j_min,
            coeffs: (j_min..=j_max).map(f).collect(),
        }
    }

    /// Smallest window holding the given `(mode, value)` pairs. Repeated
    /// modes accumulate.
    pub fn from_modes(entries: &[(i64, Complex64)]) -> Result<Self> {
        let lo = entries.iter().map(|e| e.0).min();
        let hi = entries.iter().map(|e| e.0).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::InvalidArgument("no modes given".into()));
        };
        let mut v = Self::zeros(lo, hi);
        for &(m, c) in entries {
            v.coeffs[(m - lo) as usize] += c;
        }
        Ok(v)
    }

    /// The constant function `c`.
    pub fn constant(c: Complex64) -> Self {
        Self { j_min: 0, coeffs: vec![c] }
    }

    pub fn j_min(&self) -> i64 {
        self.j_min
    }

    pub fn j_max(&self) -> i64 {
        self.j_min + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `mode`; zero outside the window.
    #[inline]
    pub fn get(&self, mode: i64) -> Complex64 {
        let k = mode - self.j_min;
        if k < 0 {
            return ZERO;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(ZERO)
    }

    /// Mutable access to a mode inside the window.
    pub fn get_mut(&mut self, mode: i64) -> Option<&mut Complex64> {
        let k = mode - self.j_min;
        if k < 0 {
            return None;
        }
        self.coeffs.get_mut(k as usize)
    }

    /// `(mode, coefficient)` pairs in ascending mode order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, &c)| (self.j_min + k as i64, c))
    }

    /// The same function on the (larger or smaller) window `j_min ..= j_max`.
    pub fn resized(&self, j_min: i64, j_max: i64) -> Self {
        Self::from_fn(j_min, j_max, |m| self.get(m))
    }

    fn union_range(&self, other: &Self) -> (i64, i64) {
        (self.j_min.min(other.j_min), self.j_max().max(other.j_max()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (lo, hi) = self.union_range(other);
        Self::from_fn(lo, hi, |m| self.get(m) + other.get(m))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (lo, hi) = self.union_range(other);
        Self::from_fn(lo, hi, |m| self.get(m) - other.get(m))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            j_min: self.j_min,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Coefficients of `e^{i·shift·θ} u(θ)`.
    pub fn shifted(&self, shift: i64) -> Self {
        Self {
            j_min: self.j_min + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Coefficients of the pointwise product, by exact discrete convolution.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.j_min + other.j_min, self.j_max() + other.j_max());
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                out.coeffs[a + b] += x * y;
            }
        }
        out
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `u(θ)` by direct summation of the stored series.
    pub fn eval_theta(&self, theta: f64) -> Complex64 {
        self.iter()
            .map(|(m, c)| c * Complex64::from_polar(1.0, m as f64 * theta))
            .sum()
    }

    /// `u(z) = Σ u_j z^j` for `z ≠ 0` (any modulus).
    pub fn eval_z(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        let mut power = z.powi(self.j_min as i32);
        for &c in &self.coeffs {
            acc += c * power;
            power *= z;
        }
        acc
    }
}

/// Truncation `P_N u`: the coefficients of `u` on the window of `w`.
pub fn project(u: &CoeffVec, w: BandWindow) -> CoeffVec {
    u.resized(w.min_mode(), w.max_mode())
}

/// Cached forward/inverse FFT plans for the `N`-point grid
/// `x_ℓ = 2π ℓ / N`, `ℓ = 0..N`.
#[derive(Clone)]
pub struct GridTransform {
    window: BandWindow,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl GridTransform {
    pub fn new(n: usize) -> Result<Self> {
        let window = BandWindow::new(n)?;
        let mut planner = FftPlanner::new();
        Ok(Self {
            window,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn n(&self) -> usize {
        self.window.n()
    }

    pub fn window(&self) -> BandWindow {
        self.window
    }

    /// Samples `u(x_ℓ)`. Modes are folded modulo `N` before the transform,
    /// which is exact at grid points for any window of `u`.
    pub fn evaluate(&self, u: &CoeffVec) -> Vec<Complex64> {
        let n = self.n() as i64;
        let mut buf = vec![ZERO; self.n()];
        for (m, c) in u.iter() {
            buf[m.rem_euclid(n) as usize] += c;
        }
        self.inverse.process(&mut buf);
        buf
    }

    /// `I_N` from samples: `ǔ_j = (1/N) Σ_ℓ u(x_ℓ) e^{-ijx_ℓ}` on the window.
    pub fn interpolate(&self, values: &[Complex64]) -> Result<CoeffVec> {
        if values.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                self.n(),
                values.len()
            )));
        }
        let mut buf = values.to_vec();
        self.forward.process(&mut buf);
        let scale = 1.0 / self.n() as f64;
        let n = self.n() as i64;
        Ok(CoeffVec::on_window(self.window, |m| {
            buf[m.rem_euclid(n) as usize] * scale
        }))
    }

    /// `I_N u` computed from the coefficients of `u`, i.e. the aliased sums
    /// `Σ_p u_{pN+j}`.
    pub fn alias(&self, u: &CoeffVec) -> CoeffVec {
        let n = self.n() as i64;
        let mut out = CoeffVec::zeros_on(self.window);
        for (m, c) in u.iter() {
            let folded = m.rem_euclid(n);
            let j = if folded > self.window.max_mode() { folded - n } else { folded };
            if let Some(slot) = out.get_mut(j) {
                *slot += c;
            }
        }
        out
    }
}

/// Trigonometric interpolation of `N` samples taken at `x_ℓ = 2π ℓ / N`.
pub fn interpolate(values: &[Complex64]) -> Result<CoeffVec> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("no samples to interpolate".into()));
    }
    GridTransform::new(values.len())?.interpolate(values)
}

/// Values of `u` on the `N`-point grid.
pub fn evaluate_on_grid(u: &CoeffVec, n: usize) -> Result<Vec<Complex64>> {
    Ok(GridTransform::new(n)?.evaluate(u))
}

/// Grid points `x_ℓ = 2π ℓ / N`.
pub fn grid_points(n: usize) -> Vec<f64> {
    (0..n).map(|l| 2.0 * PI * l as f64 / n as f64).collect()
}

/// `(Σ_j |u_j|² (1+|j|)^{2s})^{1/2}` over the window of `u`.
pub fn sobolev_norm(u: &CoeffVec, s: SobolevOrder) -> f64 {
    u.iter()
        .map(|(m, c)| {
            let w = s.weight(m);
            c.norm_sqr() * w * w
        })
        .sum::<f64>()
        .sqrt()
}

/// Sobolev norm of `u - v` on the union of both windows.
pub fn diff_norm(u: &CoeffVec, v: &CoeffVec, s: SobolevOrder) -> f64 {
    sobolev_norm(&u.sub(v), s)
}

/// Power-law coefficient families used by the numerical experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerLawKind {
    /// `g_j = (1+|j|)^{-α}`.
    G,
    /// `h_0 = 1`, `h_j = sign(j) (1+|j|)^{-α}`.
    H,
    /// `g_0 = 1`, `g_j = ε (1+|j|)^{-α}`.
    Gg,
}

/// Power-law coefficients restricted to `w`. Requires `α > 1/2`.
pub fn synth_powerlaw(
    kind: PowerLawKind,
    alpha: f64,
    epsilon: f64,
    w: BandWindow,
) -> Result<CoeffVec> {
    if !(alpha > 0.5) {
        return Err(Error::InvalidArgument(format!(
            "power-law exponent must exceed 1/2, got {alpha}"
        )));
    }
    let decay = |j: i64| (1.0 + j.unsigned_abs() as f64).powf(-alpha);
    Ok(CoeffVec::on_window(w, |j| {
        let v = match kind {
            PowerLawKind::G => decay(j),
            PowerLawKind::H if j == 0 => 1.0,
            PowerLawKind::H => j.signum() as f64 * decay(j),
            PowerLawKind::Gg if j == 0 => 1.0,
            PowerLawKind::Gg => epsilon * decay(j),
        };
        Complex64::new(v, 0.0)
    }))
}
