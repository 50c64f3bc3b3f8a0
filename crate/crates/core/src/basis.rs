//! Energy eigenfunctions of the oscillator and the spectral representation
//! of states over them.
//!
//! Eigenfunctions are generated by the normalized three-term recurrence
//!
//! ```text
//! h_0(ξ)     = π^{-1/4} exp(-ξ²/2)
//! h_1(ξ)     = √2 ξ h_0(ξ)
//! h_{n+1}(ξ) = ξ √(2/(n+1)) h_n(ξ) - √(n/(n+1)) h_{n-1}(ξ)
//! ```
//!
//! with `ξ = x/α` and `ψ_n(x) = α^{-1/2} h_n(x/α)`. Raw Hermite polynomials
//! overflow long before the modes used here, the normalized recurrence does not.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::params::OscillatorParams;
use crate::wave::{Complex, SampledWave};

/// Default number of modes above the ground state.
pub const DEFAULT_N_MAX: usize = 128;
/// Truncation tolerance for smooth states.
pub const SMOOTH_TRUNCATION_TOL: f64 = 1e-8;
/// Truncation tolerance for states with kinks (e.g. the triangle).
pub const KINK_TRUNCATION_TOL: f64 = 1e-4;
/// Minimum number of grid points per shortest local wavelength of the top mode.
pub const POINTS_PER_WAVELENGTH: f64 = 6.0;
/// Margin beyond the classical turning point the grid must cover, in units of α.
pub const TURNING_POINT_MARGIN: f64 = 4.0;

/// Fills `out[n] = h_n(xi)` for `n = 0..out.len()`.
pub fn hermite_functions_into(xi: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = PI.powf(-0.25) * (-0.5 * xi * xi).exp();
    if out.len() > 1 {
        out[1] = std::f64::consts::SQRT_2 * xi * out[0];
    }
    for n in 1..out.len().saturating_sub(1) {
        let nf = n as f64;
        out[n + 1] = xi * (2.0 / (nf + 1.0)).sqrt() * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
    }
}

/// Dimensionless Hermite functions `h_0(xi) ..= h_{n_max}(xi)`.
pub fn hermite_functions(n_max: usize, xi: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    hermite_functions_into(xi, &mut out);
    out
}

/// `Σ c_n h_n(xi)` without storing the table.
pub fn hermite_series(c: &[Complex], xi: f64) -> Complex {
    if c.is_empty() {
        return Complex::new(0.0, 0.0);
    }
    let mut prev = PI.powf(-0.25) * (-0.5 * xi * xi).exp();
    let mut acc = c[0] * prev;
    if c.len() == 1 {
        return acc;
    }
    let mut cur = std::f64::consts::SQRT_2 * xi * prev;
    acc += c[1] * cur;
    for (n, &cn) in c.iter().enumerate().skip(2) {
        let m = (n - 1) as f64;
        let next = xi * (2.0 / (m + 1.0)).sqrt() * cur - (m / (m + 1.0)).sqrt() * prev;
        acc += cn * next;
        prev = cur;
        cur = next;
    }
    acc
}

/// Largest mode a symmetric grid can carry: the extent must clear the
/// turning point `√(2n+1) α` by [`TURNING_POINT_MARGIN`] α and the spacing
/// must give [`POINTS_PER_WAVELENGTH`] samples per local wavelength
/// `2πα/√(2n+1)`.
pub fn check_resolution(params: &OscillatorParams, grid: &Grid, n_max: usize) -> Result<()> {
    let alpha = params.alpha();
    let k_max = (2.0 * n_max as f64 + 1.0).sqrt();
    let needed_extent = (k_max + TURNING_POINT_MARGIN) * alpha;
    if grid.half_extent() < needed_extent {
        return Err(Error::Resolution(format!(
            "mode {n_max} needs half extent >= {needed_extent:.4}, grid has {:.4}",
            grid.half_extent()
        )));
    }
    let wavelength = 2.0 * PI * alpha / k_max;
    if grid.spacing() * POINTS_PER_WAVELENGTH > wavelength {
        return Err(Error::Resolution(format!(
            "mode {n_max} has local wavelength {wavelength:.4}, spacing {:.4} gives fewer than {POINTS_PER_WAVELENGTH} points",
            grid.spacing()
        )));
    }
    Ok(())
}

/// Eigenfunctions `ψ_0 ..= ψ_{n_max}` sampled on a grid.
#[derive(Debug, Clone)]
pub struct EigenbasisTable {
    params: OscillatorParams,
    grid: Grid,
    n_max: usize,
    rows: Vec<Vec<f64>>,
}

impl EigenbasisTable {
    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.rows[n]
    }

    /// Mode `n` as a sampled wave.
    pub fn eigenstate(&self, n: usize) -> Result<SampledWave> {
        if n > self.n_max {
            return Err(Error::InvalidArgument(format!("mode {n} beyond table n_max {}", self.n_max)));
        }
        SampledWave::new(self.params, self.grid, self.rows[n].iter().map(|&v| Complex::new(v, 0.0)).collect())
    }

    fn check_wave(&self, f: &SampledWave) -> Result<()> {
        if f.grid() != &self.grid || f.params() != &self.params {
            return Err(Error::IncompatibleOperands("wave and basis table use different grids or params".into()));
        }
        Ok(())
    }
}

/// Tabulates the eigenfunctions on `grid`.
pub fn build_basis(params: &OscillatorParams, grid: &Grid, n_max: usize) -> Result<EigenbasisTable> {
    grid.require_symmetric()?;
    check_resolution(params, grid, n_max)?;
    let alpha = params.alpha();
    let norm = alpha.powf(-0.5);
    let columns: Vec<Vec<f64>> = grid
        .points()
        .into_par_iter()
        .map(|x| {
            let mut col = hermite_functions(n_max, x / alpha);
            col.iter_mut().for_each(|v| *v *= norm);
            col
        })
        .collect();
    let rows = (0..=n_max).map(|n| columns.iter().map(|col| col[n]).collect()).collect();
    Ok(EigenbasisTable { params: *params, grid: *grid, n_max, rows })
}

/// Projection residual that exceeded the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationWarning {
    pub residual: f64,
    pub tolerance: f64,
}

/// Expansion coefficients `c_n` over the energy eigenfunctions.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    params: OscillatorParams,
    c: Vec<Complex>,
    residual: f64,
    warning: Option<TruncationWarning>,
}

impl SpectralCoeffs {
    pub fn new(params: OscillatorParams, c: Vec<Complex>) -> Result<Self> {
        Self::with_residual(params, c, 0.0)
    }

    pub fn with_residual(params: OscillatorParams, c: Vec<Complex>, residual: f64) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient vector".into()));
        }
        Ok(Self { params, c, residual, warning: None })
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.c
    }

    /// `‖f‖² - Σ|c_n|²` of the projected state (0 for states built directly from coefficients).
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn warning(&self) -> Option<TruncationWarning> {
        self.warning
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest occupancy among the top two modes (covers both parities).
    pub fn tail_occupancy(&self) -> f64 {
        self.c.iter().rev().take(2).map(|c| c.norm_sqr()).fold(0.0, f64::max)
    }

    /// `Σ |c_n|² ħω(n+½) / Σ |c_n|²`.
    pub fn energy(&self) -> f64 {
        let w: f64 = self.c.iter().enumerate().map(|(n, c)| c.norm_sqr() * self.params.energy_level(n)).sum();
        w / self.norm_sqr()
    }

    /// Scales the coefficients to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::DegenerateState(format!("coefficient norm {n}")));
        }
        Ok(Self { c: self.c.iter().map(|c| c / n).collect(), ..self.clone() })
    }

    /// Truncates or zero-pads to `n_max`.
    pub fn resized(&self, n_max: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(n_max + 1, Complex::new(0.0, 0.0));
        Self { c, ..self.clone() }
    }

    /// `Σ c_n ψ_n(x)` at arbitrary positions.
    pub fn eval_at(&self, xs: &[f64]) -> Vec<Complex> {
        let alpha = self.params.alpha();
        let norm = alpha.powf(-0.5);
        xs.par_iter().map(|&x| hermite_series(&self.c, x / alpha) * norm).collect()
    }

    /// Samples the expansion on `grid` without a precomputed table.
    pub fn to_wave(&self, grid: &Grid) -> SampledWave {
        let values = self.eval_at(&grid.points());
        SampledWave::new(self.params, *grid, values).expect("length matches grid")
    }
}

/// Trapezoid projection `c_n = ⟨ψ_n|f⟩` with the default smooth-state tolerance.
pub fn project(f: &SampledWave, basis: &EigenbasisTable) -> Result<SpectralCoeffs> {
    project_with_tolerance(f, basis, SMOOTH_TRUNCATION_TOL)
}

/// Projection that attaches a [`TruncationWarning`] when `‖f‖² - Σ|c_n|²`
/// exceeds `tolerance`.
pub fn project_with_tolerance(f: &SampledWave, basis: &EigenbasisTable, tolerance: f64) -> Result<SpectralCoeffs> {
    basis.check_wave(f)?;
    let weighted: Vec<Complex> = f.values().iter().enumerate().map(|(k, v)| v * basis.grid.weight(k)).collect();
    let c: Vec<Complex> =
        basis.rows.par_iter().map(|row| row.iter().zip(&weighted).map(|(&r, w)| w * r).sum()).collect();
    let captured: f64 = c.iter().map(|c| c.norm_sqr()).sum();
    let residual = f.norm_sqr() - captured;
    let warning = (residual.abs() > tolerance).then_some(TruncationWarning { residual, tolerance });
    Ok(SpectralCoeffs { params: basis.params, c, residual, warning })
}

/// Pointwise `Σ c_n ψ_n(x_k)` on the table's grid.
pub fn synthesize(coeffs: &SpectralCoeffs, basis: &EigenbasisTable) -> Result<SampledWave> {
    if coeffs.n_max() > basis.n_max {
        return Err(Error::IncompatibleOperands(format!(
            "coefficients reach mode {}, table only {}",
            coeffs.n_max(),
            basis.n_max
        )));
    }
    if coeffs.params != basis.params {
        return Err(Error::IncompatibleOperands("coefficients and table use different params".into()));
    }
    let n = basis.grid.len();
    let values: Vec<Complex> =
        (0..n).into_par_iter().map(|k| coeffs.c.iter().zip(&basis.rows).map(|(c, row)| c * row[k]).sum()).collect();
    SampledWave::new(basis.params, basis.grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use crate::wave::{inner_product, l2_distance, normalize};

    fn table(n_max: usize) -> EigenbasisTable {
        build_basis(&OscillatorParams::default(), &make_grid(24.0, 1024).unwrap(), n_max).unwrap()
    }

    #[test]
    fn ground_row_is_gaussian() {
        let t = table(0);
        let g = t.grid();
        for k in 0..g.len() {
            let x = g.point(k);
            let expected = PI.powf(-0.25) * (-x * x / 2.0).exp();
            assert!((t.row(0)[k] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn first_row_is_odd_gaussian() {
        let t = table(1);
        let g = t.grid();
        for k in 0..g.len() {
            let x = g.point(k);
            let expected = 2f64.sqrt() * PI.powf(-0.25) * x * (-x * x / 2.0).exp();
            assert!((t.row(1)[k] - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn parity_is_exact() {
        let t = table(128);
        let n = t.grid().len();
        for m in 0..=128 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            for k in 0..n {
                assert!((t.row(m)[n - 1 - k] - sign * t.row(m)[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_unresolved_modes() {
        let p = OscillatorParams::default();
        let narrow = make_grid(12.0, 1024).unwrap();
        assert_eq!(build_basis(&p, &narrow, 128).unwrap_err().code(), "resolution-error");
        let coarse = make_grid(24.0, 128).unwrap();
        assert_eq!(build_basis(&p, &coarse, 128).unwrap_err().code(), "resolution-error");
        let asym = Grid::new(-20.0, 24.0, 1024).unwrap();
        assert_eq!(build_basis(&p, &asym, 10).unwrap_err().code(), "grid-symmetry-error");
    }

    #[test]
    fn project_eigenstate() {
        let t = table(40);
        let c = project(&t.eigenstate(3).unwrap(), &t).unwrap();
        for (n, cn) in c.coeffs().iter().enumerate() {
            let expected = if n == 3 { 1.0 } else { 0.0 };
            assert!((cn - Complex::new(expected, 0.0)).norm() < 1e-10, "n={n} c={cn}");
        }
        assert!(c.warning().is_none());
    }

    #[test]
    fn synthesize_ground() {
        let t = table(10);
        let mut c = vec![Complex::new(0.0, 0.0); 11];
        c[0] = Complex::new(1.0, 0.0);
        let w = synthesize(&SpectralCoeffs::new(*t.params(), c).unwrap(), &t).unwrap();
        assert!(w.max_abs_diff(&t.eigenstate(0).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn round_trip_superposition() {
        let t = table(20);
        let f = normalize(&t.eigenstate(0).unwrap().add(&t.eigenstate(1).unwrap()).unwrap()).unwrap();
        let back = synthesize(&project(&f, &t).unwrap(), &t).unwrap();
        assert!(l2_distance(&f, &back).unwrap() < 1e-10);
    }

    #[test]
    fn coefficient_count_mismatch() {
        let t = table(5);
        let c = SpectralCoeffs::new(*t.params(), vec![Complex::new(1.0, 0.0); 7]).unwrap();
        assert_eq!(synthesize(&c, &t).unwrap_err().code(), "incompatible-operands");
    }

    #[test]
    fn eval_at_matches_table() {
        let t = table(30);
        let f = normalize(
            &t.eigenstate(7).unwrap().add(&t.eigenstate(30).unwrap().scaled(Complex::new(0.0, 2.0))).unwrap(),
        )
        .unwrap();
        let c = project(&f, &t).unwrap();
        let direct = c.to_wave(t.grid());
        assert!(direct.max_abs_diff(&f).unwrap() < 1e-10);
    }

    #[test]
    fn gram_matrix_is_identity() {
        let t = build_basis(&OscillatorParams::default(), &make_grid(16.0, 2048).unwrap(), 40).unwrap();
        let states: Vec<_> = (0..=40).map(|n| t.eigenstate(n).unwrap()).collect();
        for m in 0..=40 {
            for n in 0..=40 {
                let g = inner_product(&states[m], &states[n]).unwrap();
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!((g.re - expected).abs() < 1e-10 && g.im.abs() < 1e-15, "({m},{n}) = {g}");
            }
        }
    }
}
