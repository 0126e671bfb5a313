//! Dense matrix representations of operators over the retained modes.
//!
//! Every [`OperatorMatrix`] acts on the span of the modes of a
//! [`BandWindow`]; row and column `i` both correspond to mode
//! `i - N_minus`.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{BandWindow, CoeffVec, GridTransform, SobolevOrder};
use crate::linalg;
use crate::par::Exec;
use crate::Discretization;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `(i m)^j`.
#[inline]
fn ik_pow(m: i64, j: usize) -> Complex64 {
    Complex64::new(0.0, m as f64).powi(j as i32)
}

/// A periodic differential operator
/// `L u = Σ_{j=q}^{k} c_j u^{(j)} + Σ_{j=0}^{p} a_j(θ) u^{(j)}`
/// split into a constant-coefficient part `L0` and a variable part `L1`.
#[derive(Clone, Debug)]
pub struct DiffOpSpec {
    q: usize,
    const_coeffs: Vec<Complex64>,
    var_coeffs: Vec<CoeffVec>,
    ell: f64,
}

impl DiffOpSpec {
    /// `const_coeffs` holds `c_q, …, c_k`; `var_coeffs` holds `a_0, …, a_p`
    /// (empty when there is no variable part). `ell` is the declared
    /// Sobolev regularity of the `a_j`.
    pub fn new(
        q: usize,
        const_coeffs: Vec<Complex64>,
        var_coeffs: Vec<CoeffVec>,
        ell: f64,
    ) -> Result<Self> {
        let Some(&top) = const_coeffs.last() else {
            return Err(Error::InvalidArgument("constant part needs at least c_k".into()));
        };
        if top == ZERO {
            return Err(Error::InvalidArgument("leading coefficient c_k must be nonzero".into()));
        }
        let k = q + const_coeffs.len() - 1;
        if !var_coeffs.is_empty() && var_coeffs.len() > k {
            return Err(Error::InvalidArgument(format!(
                "variable part of order {} must be below the leading order {k}",
                var_coeffs.len() - 1
            )));
        }
        Ok(Self { q, const_coeffs, var_coeffs, ell })
    }

    /// `c · d^k/dθ^k` with no variable part.
    pub fn derivative(k: usize, c: Complex64) -> Self {
        Self::new(k, vec![c], Vec::new(), f64::INFINITY).expect("nonzero leading coefficient")
    }

    /// Replaces the variable part.
    pub fn with_variable(mut self, var_coeffs: Vec<CoeffVec>, ell: f64) -> Result<Self> {
        let k = self.k();
        if !var_coeffs.is_empty() && var_coeffs.len() > k {
            return Err(Error::InvalidArgument(format!(
                "variable part of order {} must be below the leading order {k}",
                var_coeffs.len() - 1
            )));
        }
        self.var_coeffs = var_coeffs;
        self.ell = ell;
        Ok(self)
    }

    /// Multiplies the variable part by `factor`.
    pub fn scale_variable(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        out.var_coeffs = self.var_coeffs.iter().map(|a| a.scale(factor)).collect();
        out
    }

    pub fn k(&self) -> usize {
        self.q + self.const_coeffs.len() - 1
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Order of the variable part, `None` when it is absent.
    pub fn p(&self) -> Option<usize> {
        self.var_coeffs.len().checked_sub(1)
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn const_coeffs(&self) -> &[Complex64] {
        &self.const_coeffs
    }

    pub fn var_coeffs(&self) -> &[CoeffVec] {
        &self.var_coeffs
    }

    /// True when every variable coefficient is identically zero.
    pub fn is_constant(&self) -> bool {
        self.var_coeffs.iter().all(|a| a.max_abs() == 0.0)
    }

    /// Symbol of the constant part at mode `m`: `σ₀(m) = Σ c_j (i m)^j`.
    pub fn symbol(&self, m: i64) -> Complex64 {
        self.const_coeffs
            .iter()
            .enumerate()
            .map(|(off, &c)| c * ik_pow(m, self.q + off))
            .sum()
    }

    /// Smallest `M ≥ 1` with `|σ₀(m)| > bound` for every `|m| ≥ M`, from
    /// `|σ₀(m)| ≥ |c_k||m|^k - Σ_{j<k} |c_j||m|^j`.
    pub(crate) fn symbol_escape_radius(&self, bound: f64) -> i64 {
        let k = self.k();
        let lead = self.const_coeffs.last().unwrap().norm();
        let lower: Vec<(usize, f64)> = self.const_coeffs[..self.const_coeffs.len() - 1]
            .iter()
            .enumerate()
            .map(|(off, c)| (self.q + off, c.norm()))
            .collect();
        let lower_bound = |m: f64| {
            lead * m.powi(k as i32) - lower.iter().map(|&(j, c)| c * m.powi(j as i32)).sum::<f64>()
        };
        // The lower bound is increasing once m exceeds 1 + Σ|c_j|/|c_k|.
        let start = (1.0 + lower.iter().map(|x| x.1).sum::<f64>() / lead).ceil() as i64;
        let mut m = start.max(1);
        while lower_bound(m as f64) <= bound {
            m += 1;
        }
        m
    }

    /// Self-adjointness on `L²`: the constant symbol is real and the
    /// finite-section matrix of the variable part is Hermitian on a window
    /// covering its coefficients.
    pub fn is_self_adjoint(&self) -> bool {
        let real_symbol = self.const_coeffs.iter().enumerate().all(|(off, &c)| {
            let unit = c * Complex64::i().powi((self.q + off) as i32);
            unit.im.abs() <= 1e-14 * c.norm()
        });
        if !real_symbol {
            return false;
        }
        if self.is_constant() {
            return true;
        }
        let reach = self
            .var_coeffs
            .iter()
            .map(|a| a.j_min().abs().max(a.j_max().abs()))
            .max()
            .unwrap_or(0) as usize;
        let w = BandWindow::symmetric(reach + 2);
        let a = assemble_finite_section_ode(self, w);
        let scale = a.entries.norm_max().max(1.0);
        linalg::hermitian_defect(a.entries.as_ref()) <= 1e-12 * scale
    }
}

/// Dense matrix over the modes of a window, with the Sobolev orders of its
/// domain and codomain kept as bookkeeping.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub window: BandWindow,
    pub entries: Mat<Complex64>,
    pub dom_order: SobolevOrder,
    pub codom_order: SobolevOrder,
}

impl OperatorMatrix {
    pub fn from_fn(w: BandWindow, f: impl Fn(i64, i64) -> Complex64) -> Self {
        let n = w.n();
        Self {
            window: w,
            entries: Mat::from_fn(n, n, |r, c| f(w.mode_at(r), w.mode_at(c))),
            dom_order: SobolevOrder::L2,
            codom_order: SobolevOrder::L2,
        }
    }

    pub fn identity(w: BandWindow) -> Self {
        Self::diagonal(w, |_| ONE)
    }

    pub fn zeros(w: BandWindow) -> Self {
        Self::from_fn(w, |_, _| ZERO)
    }

    pub fn diagonal(w: BandWindow, f: impl Fn(i64) -> Complex64) -> Self {
        let n = w.n();
        let mut entries = Mat::zeros(n, n);
        for i in 0..n {
            entries[(i, i)] = f(w.mode_at(i));
        }
        Self {
            window: w,
            entries,
            dom_order: SobolevOrder::L2,
            codom_order: SobolevOrder::L2,
        }
    }

    pub fn with_orders(mut self, dom: SobolevOrder, codom: SobolevOrder) -> Self {
        self.dom_order = dom;
        self.codom_order = codom;
        self
    }

    pub fn n(&self) -> usize {
        self.window.n()
    }

    /// Entry coupling column mode `col` to row mode `row`.
    pub fn at(&self, row: i64, col: i64) -> Complex64 {
        match (self.window.index_of(row), self.window.index_of(col)) {
            (Some(r), Some(c)) => self.entries[(r, c)],
            _ => ZERO,
        }
    }

    /// `A · P_N u`.
    pub fn apply(&self, u: &CoeffVec) -> CoeffVec {
        let x: Vec<Complex64> = self.window.modes().map(|m| u.get(m)).collect();
        let y = linalg::matvec(self.entries.as_ref(), &x);
        CoeffVec::new(self.window.min_mode(), y).expect("nonempty window")
    }

    fn same_window(&self, other: &Self) {
        assert_eq!(self.window, other.window, "operators live on different windows");
    }

    pub fn matmul(&self, other: &Self) -> Self {
        self.same_window(other);
        Self {
            window: self.window,
            entries: &self.entries * &other.entries,
            dom_order: other.dom_order,
            codom_order: self.codom_order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_window(other);
        Self {
            entries: &self.entries + &other.entries,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_window(other);
        Self {
            entries: &self.entries - &other.entries,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let n = self.n();
        Self {
            entries: Mat::from_fn(n, n, |i, j| self.entries[(i, j)] * c),
            ..self.clone()
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.same_window(other);
        (&self.entries - &other.entries).norm_max()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.norm_max()
    }

    /// `‖A‖_{0→0}`.
    pub fn l2_norm(&self) -> Result<f64> {
        linalg::spectral_norm(self.entries.as_ref())
    }

    /// Inverse on the window.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            entries: linalg::inverse(self.entries.as_ref(), linalg::DEFAULT_CONDITION_CAP)?,
            window: self.window,
            dom_order: self.codom_order,
            codom_order: self.dom_order,
        })
    }
}

/// Diagonal matrix of the constant-coefficient part, `σ₀(m)` at mode `m`.
pub fn assemble_l0(spec: &DiffOpSpec, w: BandWindow) -> OperatorMatrix {
    let k = spec.k() as f64;
    OperatorMatrix::diagonal(w, |m| spec.symbol(m)).with_orders(SobolevOrder(k), SobolevOrder(0.0))
}

/// `P_N M(h) P_N`: Toeplitz with entry `h_{mode(r) - mode(c)}`.
pub fn assemble_mult_toeplitz(h: &CoeffVec, w: BandWindow) -> OperatorMatrix {
    OperatorMatrix::from_fn(w, |r, c| h.get(r - c))
}

/// The Cauchy projectors `(C⁺, C⁻)`: `C⁺` keeps modes `j ≥ 0`,
/// `C⁻ = C⁺ - Id` is `-1` on modes `j < 0`.
pub fn assemble_cauchy_projectors(w: BandWindow) -> (OperatorMatrix, OperatorMatrix) {
    let plus = OperatorMatrix::diagonal(w, |m| if m >= 0 { ONE } else { ZERO });
    let minus = OperatorMatrix::diagonal(w, |m| if m < 0 { -ONE } else { ZERO });
    (plus, minus)
}

/// Shift `ζ` off the spectrum of `L0` for the regulator `(L0 - ζ)^{-1}`.
///
/// For a pure derivative `d^k/dθ^k` the classical choice `(-1)^{k/2}` (k even)
/// or `1` (k odd) is tried first; it is kept only when it is separated from
/// the symbol values. Otherwise candidates `1, -1, i, -i, 2, -2, 2i, …` are
/// scanned for one at distance more than 1/2 from every `σ₀(m)`.
pub fn choose_zeta(spec: &DiffOpSpec) -> Result<Complex64> {
    const SEPARATION: f64 = 0.5;
    const CANDIDATES: usize = 64;

    let separated = |zeta: Complex64| {
        let radius = spec.symbol_escape_radius(zeta.norm() + SEPARATION);
        (-radius..=radius).all(|m| (spec.symbol(m) - zeta).norm() > SEPARATION)
    };

    let pure = spec.const_coeffs.len() == 1 && spec.const_coeffs[0] == ONE;
    if pure {
        let k = spec.k();
        let classic = if k.is_multiple_of(2) {
            Complex64::new(if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0)
        } else {
            ONE
        };
        if separated(classic) {
            return Ok(classic);
        }
    }

    let units = [ONE, -ONE, Complex64::i(), -Complex64::i()];
    (1..)
        .flat_map(|r| units.iter().map(move |&u| u * r as f64))
        .take(CANDIDATES)
        .find(|&z| separated(z))
        .ok_or(Error::NoShift { tried: CANDIDATES })
}

/// Diagonal regulator `(L0 - ζ Id)^{-1}` on the window.
pub fn assemble_regulator(spec: &DiffOpSpec, zeta: Complex64, w: BandWindow) -> Result<OperatorMatrix> {
    for m in w.modes() {
        if spec.symbol(m) - zeta == ZERO {
            return Err(Error::ShiftOnSymbol { zeta, mode: m });
        }
    }
    let k = spec.k() as f64;
    Ok(OperatorMatrix::diagonal(w, |m| ONE / (spec.symbol(m) - zeta))
        .with_orders(SobolevOrder(-k), SobolevOrder(0.0)))
}

/// Matrix of `L0 + P_N L1` on the window: `σ₀(m)` on the diagonal plus
/// `Σ_j Toeplitz(a_j) · diag((i m)^j)`.
pub fn assemble_finite_section_ode(spec: &DiffOpSpec, w: BandWindow) -> OperatorMatrix {
    let k = spec.k() as f64;
    OperatorMatrix::from_fn(w, |r, c| {
        let mut v = spec
            .var_coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a.get(r - c) * ik_pow(c, j))
            .sum::<Complex64>();
        if r == c {
            v += spec.symbol(c);
        }
        v
    })
    .with_orders(SobolevOrder(k), SobolevOrder(0.0))
}

/// Coefficients of `L1 e_m = Σ_j a_j (i m)^j e_m`.
fn variable_part_on_mode(spec: &DiffOpSpec, m: i64) -> Option<CoeffVec> {
    let mut acc: Option<CoeffVec> = None;
    for (j, a) in spec.var_coeffs.iter().enumerate() {
        let term = a.shifted(m).scale(ik_pow(m, j));
        acc = Some(match acc {
            Some(prev) => prev.add(&term),
            None => term,
        });
    }
    acc
}

/// Matrix of `L0 + I_N L1` on the window. Each column applies `L1` to one
/// basis mode, samples it on the N-point grid and interpolates back.
pub fn assemble_collocation_ode(spec: &DiffOpSpec, w: BandWindow) -> Result<OperatorMatrix> {
    assemble_collocation_ode_with(spec, w, Exec::default())
}

pub fn assemble_collocation_ode_with(
    spec: &DiffOpSpec,
    w: BandWindow,
    exec: Exec,
) -> Result<OperatorMatrix> {
    let grid = GridTransform::new(w.n())?;
    let columns: Vec<Result<Option<CoeffVec>>> = exec.map_range(w.n(), |c| {
        let m = w.mode_at(c);
        variable_part_on_mode(spec, m)
            .map(|f| grid.interpolate(&grid.evaluate(&f)))
            .transpose()
    });
    let mut out = OperatorMatrix::diagonal(w, |m| spec.symbol(m))
        .with_orders(SobolevOrder(spec.k() as f64), SobolevOrder(0.0));
    for (c, col) in columns.into_iter().enumerate() {
        if let Some(col) = col? {
            for r in 0..w.n() {
                out.entries[(r, c)] += col.coeffs()[r];
            }
        }
    }
    Ok(out)
}

/// Assembles the operator of a differential spec by the chosen method.
pub fn assemble_ode(spec: &DiffOpSpec, w: BandWindow, mode: Discretization) -> Result<OperatorMatrix> {
    match mode {
        Discretization::FiniteSection => Ok(assemble_finite_section_ode(spec, w)),
        Discretization::Collocation => assemble_collocation_ode(spec, w),
    }
}

/// `g - 1` as coefficients.
pub(crate) fn minus_one(g: &CoeffVec) -> CoeffVec {
    g.sub(&CoeffVec::constant(ONE))
}

/// Matrix of the discretized singular integral operator
/// `Id - X M(g-1) C⁻` on the window, with `X = P_N` (finite section) or
/// `X = I_N` (collocation, products formed on the N-point grid).
pub fn assemble_sie(g: &CoeffVec, w: BandWindow, mode: Discretization) -> Result<OperatorMatrix> {
    assemble_sie_with(g, w, mode, Exec::default())
}

pub fn assemble_sie_with(
    g: &CoeffVec,
    w: BandWindow,
    mode: Discretization,
    exec: Exec,
) -> Result<OperatorMatrix> {
    let h = minus_one(g);
    match mode {
        Discretization::FiniteSection => Ok(OperatorMatrix::from_fn(w, |r, c| {
            let delta = if r == c { ONE } else { ZERO };
            // -M(h) C⁻ e_c = +h e_c for c < 0.
            if c < 0 { delta + h.get(r - c) } else { delta }
        })),
        Discretization::Collocation => {
            let grid = GridTransform::new(w.n())?;
            let neg = w.n_minus();
            let columns: Vec<CoeffVec> = exec.map_range(neg, |c| grid.alias(&h.shifted(w.mode_at(c))));
            let mut out = OperatorMatrix::identity(w);
            for (c, col) in columns.into_iter().enumerate() {
                for r in 0..w.n() {
                    out.entries[(r, c)] += col.coeffs()[r];
                }
            }
            Ok(out)
        }
    }
}

/// `K(h): u ↦ C⁺((C⁻u) h)` on the window: entry `-h_{j+k}` coupling column
/// mode `-j` (`j ≥ 1`) to row mode `k ≥ 0`.
pub fn assemble_hankel(h: &CoeffVec, w: BandWindow) -> OperatorMatrix {
    OperatorMatrix::from_fn(w, |row, col| {
        if row >= 0 && col < 0 { -h.get(row - col) } else { ZERO }
    })
}

/// `‖A‖_{s→t}`: largest singular value of `W_t A W_s^{-1}` with
/// `W_r = diag((1+|m|)^r)`.
pub fn operator_norm_weighted(a: &OperatorMatrix, s: SobolevOrder, t: SobolevOrder) -> Result<f64> {
    let w = a.window;
    let n = w.n();
    let scaled = Mat::from_fn(n, n, |r, c| {
        a.entries[(r, c)] * (t.weight(w.mode_at(r)) / s.weight(w.mode_at(c)))
    });
    linalg::spectral_norm(scaled.as_ref())
}
