//! Closed-form evolutions: displaced eigenstates (the displaced ground state
//! being the `n = 0` case) and squeezed Gaussians.

use std::f64::consts::PI;

use crate::angles::continued_arctan;
use crate::basis::hermite_functions;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::moments::{centroid_trajectory, FirstMoments};
use crate::params::OscillatorParams;
use crate::wave::{Complex, SampledWave};

use super::{require_edge_decay, require_extent};

/// Normalized displaced ground state `exp[iθ - (x - a cos ωt)²/2α²]` with
/// `θ = -a sin ωt (x - ½ a cos ωt)/α² - ½ωt`.
pub fn displaced_ground_state(a: f64, t: f64, params: &OscillatorParams, grid: &Grid) -> Result<SampledWave> {
    if !a.is_finite() {
        return Err(Error::InvalidArgument(format!("displacement {a}")));
    }
    require_extent(grid, a.abs() + 4.0 * params.alpha(), "displaced ground state")?;
    let alpha = params.alpha();
    let a2 = alpha * alpha;
    let (s, c) = (params.omega() * t).sin_cos();
    let norm = (PI * a2).powf(-0.25);
    let w = SampledWave::from_fn(*params, *grid, |x| {
        let theta = -a * s * (x - 0.5 * a * c) / a2 - 0.5 * params.omega() * t;
        let d = x - a * c;
        Complex::from_polar(norm * (-d * d / (2.0 * a2)).exp(), theta)
    });
    require_edge_decay(&w, "displaced ground state")?;
    Ok(w)
}

/// Eigenstate `n` whose centroid starts at `(x0, p0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacedEigenstateSpec {
    pub n: usize,
    pub x0: f64,
    pub p0: f64,
}

/// `ψ_n(ξ) e^{iθ_n}` with `ξ = x - x̄(t)`, `θ_n = [p̄ξ + ½p̄x̄ - E_n t]/ħ` and
/// `(x̄, p̄)` on the classical orbit.
pub fn displaced_eigenstate(
    spec: &DisplacedEigenstateSpec,
    t: f64,
    params: &OscillatorParams,
    grid: &Grid,
) -> Result<SampledWave> {
    let alpha = params.alpha();
    let amplitude = spec.x0.hypot(spec.p0 / (params.mass() * params.omega()));
    let reach = amplitude + ((2 * spec.n + 1) as f64).sqrt() * alpha + 4.0 * alpha;
    require_extent(grid, reach, "displaced eigenstate")?;
    let c = centroid_trajectory(&FirstMoments { x_mean: spec.x0, p_mean: spec.p0 }, t, params);
    let hbar = params.hbar();
    let e_n = params.energy_level(spec.n);
    let norm = alpha.powf(-0.5);
    let w = SampledWave::from_fn(*params, *grid, |x| {
        let xi = x - c.x_mean;
        let h = hermite_functions(spec.n, xi / alpha)[spec.n] * norm;
        let theta = (c.p_mean * xi + 0.5 * c.p_mean * c.x_mean - e_n * t) / hbar;
        Complex::from_polar(1.0, theta) * h
    });
    require_edge_decay(&w, "displaced eigenstate")?;
    Ok(w)
}

/// Which quadrature is narrow at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Squeeze {
    /// `Δx² = α²(ε - A)` at `t = 0`.
    Position,
    /// `Δx² = α²(ε + A)` at `t = 0`.
    Momentum,
}

/// Squeezed Gaussian with moment-oscillation amplitude `amp` (`K = ½`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedSpec {
    pub amp: f64,
    pub squeeze: Squeeze,
}

impl SqueezedSpec {
    /// `ε = (A² + ¼)^{1/2}`.
    pub fn eps(&self) -> f64 {
        (self.amp * self.amp + 0.25).sqrt()
    }

    /// `A` with the sign that puts the `t = 0` extreme where requested.
    pub fn signed_amp(&self) -> f64 {
        match self.squeeze {
            Squeeze::Position => self.amp,
            Squeeze::Momentum => -self.amp,
        }
    }

    /// `Δx²(t)`, `Δxp(t)` and `ωτ(t)` of the family.
    pub fn trajectory(&self, t: f64, params: &OscillatorParams) -> (f64, f64, f64) {
        let a = self.signed_amp();
        let eps = self.eps();
        let wt = params.omega() * t;
        let dx2 = params.alpha().powi(2) * (eps - a * (2.0 * wt).cos());
        let dxp = params.hbar() * a * (2.0 * wt).sin();
        let wtau = continued_arctan(2.0 * (eps + a), wt);
        (dx2, dxp, wtau)
    }
}

/// Normalized squeezed state
/// `(2πΔx²)^{-1/4} exp[(iΔxp/ħ - ½) x²/(2Δx²) - ½iωτ]`.
pub fn squeezed_state(spec: &SqueezedSpec, t: f64, params: &OscillatorParams, grid: &Grid) -> Result<SampledWave> {
    if !(spec.amp.is_finite() && spec.amp >= 0.0) {
        return Err(Error::InvalidArgument(format!("squeeze amplitude {}", spec.amp)));
    }
    let max_dx = params.alpha() * (spec.eps() + spec.amp).sqrt();
    require_extent(grid, 6.0 * max_dx, "squeezed state")?;
    let (dx2, dxp, wtau) = spec.trajectory(t, params);
    let pref = (2.0 * PI * dx2).powf(-0.25);
    let hbar = params.hbar();
    let w = SampledWave::from_fn(*params, *grid, |x| {
        let q = x * x / (2.0 * dx2);
        Complex::new(-0.5 * q, dxp / hbar * q - 0.5 * wtau).exp() * pref
    });
    require_edge_decay(&w, "squeezed state")?;
    Ok(w)
}
