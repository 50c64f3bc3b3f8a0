use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::params::OscillatorParams;

/// Complex amplitude type used throughout the crate.
pub type Complex = Complex64;

/// A complex wave function sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWave {
    params: OscillatorParams,
    grid: Grid,
    values: Vec<Complex>,
}

impl SampledWave {
    pub fn new(params: OscillatorParams, grid: Grid, values: Vec<Complex>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!("{} values for a {}-point grid", values.len(), grid.len())));
        }
        Ok(Self { params, grid, values })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(params: OscillatorParams, grid: Grid, f: impl Fn(f64) -> Complex) -> Self {
        let values = grid.points().into_iter().map(f).collect();
        Self { params, grid, values }
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex> {
        self.values
    }

    /// Same grid and params, new values.
    pub fn with_values(&self, values: Vec<Complex>) -> Result<Self> {
        Self::new(self.params, self.grid, values)
    }

    pub fn map(&self, f: impl Fn(f64, Complex) -> Complex) -> Self {
        let values = self.values.iter().enumerate().map(|(k, &v)| f(self.grid.point(k), v)).collect();
        Self { params: self.params, grid: self.grid, values }
    }

    pub fn scaled(&self, factor: Complex) -> Self {
        self.map(|_, v| v * factor)
    }

    /// `x -> f(-x)`; requires a symmetric grid.
    pub fn reflected(&self) -> Result<Self> {
        self.grid.require_symmetric()?;
        let values = self.values.iter().rev().copied().collect();
        Ok(Self { params: self.params, grid: self.grid, values })
    }

    pub fn conj(&self) -> Self {
        self.map(|_, v| v.conj())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().enumerate().map(|(k, v)| v.norm_sqr() * self.grid.weight(k)).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.im.abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Probability mass in the outer `fraction` of the grid on each side.
    pub fn edge_mass(&self, fraction: f64) -> f64 {
        let n = self.grid.len();
        let m = ((n as f64 * fraction).ceil() as usize).max(1).min(n / 2);
        let h = self.grid.spacing();
        self.values[..m].iter().chain(self.values[n - m..].iter()).map(|v| v.norm_sqr() * h).sum()
    }

    pub(crate) fn check_compatible(&self, other: &SampledWave) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::IncompatibleOperands(format!("grids differ: {:?} vs {:?}", self.grid, other.grid)));
        }
        if self.params != other.params {
            return Err(Error::IncompatibleOperands("oscillator parameters differ".into()));
        }
        Ok(())
    }

    pub fn sub(&self, other: &SampledWave) -> Result<Self> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self { params: self.params, grid: self.grid, values })
    }

    pub fn add(&self, other: &SampledWave) -> Result<Self> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { params: self.params, grid: self.grid, values })
    }

    /// Pointwise `max_k | |f_k| - |g_k| |`.
    pub fn max_abs_modulus_diff(&self, other: &SampledWave) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a.norm() - b.norm()).abs()).fold(0.0, f64::max))
    }

    /// Pointwise `max_k |f_k - g_k|`.
    pub fn max_abs_diff(&self, other: &SampledWave) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Trapezoid-rule `∫ f*(x) g(x) dx`.
pub fn inner_product(f: &SampledWave, g: &SampledWave) -> Result<Complex> {
    f.check_compatible(g)?;
    let grid = f.grid();
    Ok(f.values.iter().zip(&g.values).enumerate().map(|(k, (a, b))| a.conj() * b * grid.weight(k)).sum())
}

/// Returns `f / ||f||`.
pub fn normalize(f: &SampledWave) -> Result<SampledWave> {
    let n = f.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::DegenerateState(format!("norm is {n}")));
    }
    Ok(f.scaled(Complex::new(1.0 / n, 0.0)))
}

/// `sqrt(∫ |f - g|² dx)`.
pub fn l2_distance(f: &SampledWave, g: &SampledWave) -> Result<f64> {
    Ok(f.sub(g)?.norm())
}
