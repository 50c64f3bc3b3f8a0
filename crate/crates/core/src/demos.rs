//! Worked scenarios: two displaced Gaussians, the triangular state, squeezed
//! states and seeded random superpositions.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::basis::{hermite_functions, SpectralCoeffs};
use crate::error::{Error, Result};
use crate::evolve::{displaced_ground_state, squeezed_state, Squeeze, SqueezedSpec};
use crate::grid::Grid;
use crate::moments::SecondMoments;
use crate::params::OscillatorParams;
use crate::wave::{Complex, SampledWave};

/// `ψ₁ + bψ₂`, two ground-state packets released at rest from `a₁` and `a₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoGaussianSpec {
    pub a1: f64,
    pub a2: f64,
    pub rel_amp: f64,
}

impl TwoGaussianSpec {
    /// Centers at `20α` and `17α`, relative amplitude 0.4.
    pub fn fig1(params: &OscillatorParams) -> Self {
        let alpha = params.alpha();
        Self { a1: 20.0 * alpha, a2: 17.0 * alpha, rel_amp: 0.4 }
    }

    /// Factor that normalizes `ψ₁ + bψ₂`; the same for all times.
    pub fn norm_factor(&self, params: &OscillatorParams) -> f64 {
        let d = (self.a1 - self.a2) / params.alpha();
        let b = self.rel_amp;
        let overlap = (-d * d / 4.0).exp();
        (1.0 + b * b + 2.0 * b * overlap).sqrt().recip()
    }
}

/// Normalized two-packet state at time `t`.
pub fn two_gaussian_state(
    spec: &TwoGaussianSpec,
    t: f64,
    params: &OscillatorParams,
    grid: &Grid,
) -> Result<SampledWave> {
    if !(spec.a1.is_finite() && spec.a2.is_finite() && spec.rel_amp.is_finite()) {
        return Err(Error::InvalidArgument(format!("{spec:?}")));
    }
    let reach = spec.a1.abs().max(spec.a2.abs()) + 6.0 * params.alpha();
    if grid.half_extent() < reach {
        return Err(Error::GridCoverage(format!(
            "two-packet state needs half extent {reach:.3}, grid has {:.3}",
            grid.half_extent()
        )));
    }
    let first = displaced_ground_state(spec.a1, t, params, grid)?;
    let second = displaced_ground_state(spec.a2, t, params, grid)?;
    let n = spec.norm_factor(params);
    let sum = first.add(&second.scaled(Complex::new(spec.rel_amp, 0.0)))?;
    Ok(sum.scaled(Complex::new(n, 0.0)))
}

/// `ψ(x) ∝ 1 - |x|/a` on `|x| ≤ a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSpec {
    pub a: f64,
}

impl TriangleSpec {
    /// Half-width `30^{1/4} α`, at which the triangle is stable.
    pub fn stable(params: &OscillatorParams) -> Self {
        Self { a: 30f64.powf(0.25) * params.alpha() }
    }

    /// `(a²/10, 3ħ²/a², 0)`.
    pub fn exact_moments(&self, params: &OscillatorParams) -> SecondMoments {
        SecondMoments { dx2: self.a * self.a / 10.0, dp2: 3.0 * params.hbar().powi(2) / (self.a * self.a), dxp: 0.0 }
    }

    fn amplitude(&self) -> f64 {
        (1.5 / self.a).sqrt()
    }

    fn value(&self, x: f64) -> f64 {
        self.amplitude() * (1.0 - x.abs() / self.a).max(0.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidArgument(format!("triangle half-width {}", self.a)));
        }
        Ok(())
    }
}

/// Normalized real triangle sampled on `grid`.
pub fn triangle_state(spec: &TriangleSpec, params: &OscillatorParams, grid: &Grid) -> Result<SampledWave> {
    spec.validate()?;
    if grid.half_extent() <= spec.a {
        return Err(Error::GridCoverage(format!(
            "triangle half-width {} exceeds grid half extent {}",
            spec.a,
            grid.half_extent()
        )));
    }
    Ok(SampledWave::from_fn(*params, *grid, |x| Complex::new(spec.value(x), 0.0)))
}

/// Coefficients `c_n = 2∫₀^a ψ ψ_n dx` (odd modes vanish), by Gauss–Legendre
/// quadrature on the smooth half of the state.
pub fn triangle_coeffs(spec: &TriangleSpec, params: &OscillatorParams, n_max: usize) -> Result<SpectralCoeffs> {
    spec.validate()?;
    let alpha = params.alpha();
    let degree = NonZeroUsize::new(2 * n_max + 64).expect("positive degree");
    let rule = GaussLegendre::new(degree);
    let mut acc = vec![0.0; n_max + 1];
    for &(node, weight) in rule.as_node_weight_pairs() {
        let x = 0.5 * spec.a * (node + 1.0);
        let w = spec.a * weight * spec.value(x) / alpha.sqrt();
        for (a, h) in acc.iter_mut().zip(hermite_functions(n_max, x / alpha)) {
            *a += w * h;
        }
    }
    let c = acc.into_iter().enumerate().map(|(n, v)| Complex::new(if n % 2 == 0 { v } else { 0.0 }, 0.0)).collect();
    SpectralCoeffs::new(*params, c)
}

/// `(c₀², 1 - c₀²)`: weight of the ground state in the triangle and of the
/// orthogonal remainder.
pub fn gaussian_overlap_report(spec: &TriangleSpec, params: &OscillatorParams) -> Result<(f64, f64)> {
    let c0 = triangle_coeffs(spec, params, 0)?.coeffs()[0].re;
    let c0_sq = c0 * c0;
    Ok((c0_sq, 1.0 - c0_sq))
}

/// `(2π)^{-1/2} ∫ e^{-iρξ} (1 - |ξ|/λ)₊ dξ`.
pub fn triangle_fourier(lambda: f64, rho: f64) -> f64 {
    if rho == 0.0 {
        return lambda / (2.0 * PI).sqrt();
    }
    let s = (0.5 * lambda * rho).sin();
    4.0 * s * s / ((2.0 * PI).sqrt() * lambda * rho * rho)
}

/// Normalized coefficients with independent complex-normal entries for
/// `n ≤ n_top`, zero-padded to `n_max`.
pub fn random_coeffs(
    rng: &mut impl Rng,
    params: &OscillatorParams,
    n_top: usize,
    n_max: usize,
) -> Result<SpectralCoeffs> {
    if n_top > n_max {
        return Err(Error::InvalidArgument(format!("n_top {n_top} above n_max {n_max}")));
    }
    let mut c: Vec<Complex> =
        (0..=n_top).map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    c.resize(n_max + 1, Complex::new(0.0, 0.0));
    SpectralCoeffs::new(*params, c)?.normalized()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Named scenarios with their grids and basis depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    TwoGaussianFig1,
    TriangleStable,
    TriangleWide,
    Squeezed,
}

/// Grid half extent (in units of `α`), point count and basis depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioLayout {
    pub half_extent: f64,
    pub n_points: usize,
    pub n_max: usize,
}

impl Scenario {
    pub const ALL: [Scenario; 4] =
        [Scenario::TwoGaussianFig1, Scenario::TriangleStable, Scenario::TriangleWide, Scenario::Squeezed];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::TwoGaussianFig1 => "two-gaussian-fig1",
            Scenario::TriangleStable => "triangle-stable",
            Scenario::TriangleWide => "triangle-wide",
            Scenario::Squeezed => "squeezed",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown demo {name:?}")))
    }

    pub fn description(&self) -> &'static str {
        match self {
            Scenario::TwoGaussianFig1 => "packets at 20α and 17α released at rest, relative amplitude 0.4",
            Scenario::TriangleStable => "triangle of half-width 30^(1/4) α; its moments do not oscillate",
            Scenario::TriangleWide => "triangle of half-width 5α",
            Scenario::Squeezed => "position-squeezed Gaussian with A = 1",
        }
    }

    pub fn layout(&self) -> ScenarioLayout {
        match self {
            Scenario::TwoGaussianFig1 => ScenarioLayout { half_extent: 34.0, n_points: 2048, n_max: 400 },
            Scenario::TriangleStable | Scenario::TriangleWide => {
                ScenarioLayout { half_extent: 28.0, n_points: 2048, n_max: 256 }
            }
            Scenario::Squeezed => ScenarioLayout { half_extent: 24.0, n_points: 1024, n_max: 128 },
        }
    }

    pub fn grid(&self, params: &OscillatorParams) -> Result<Grid> {
        let l = self.layout();
        Grid::symmetric(l.half_extent * params.alpha(), l.n_points)
    }

    /// States with a kink have algebraically decaying spectra.
    pub fn has_kink(&self) -> bool {
        matches!(self, Scenario::TriangleStable | Scenario::TriangleWide)
    }

    pub fn triangle(&self, params: &OscillatorParams) -> Option<TriangleSpec> {
        match self {
            Scenario::TriangleStable => Some(TriangleSpec::stable(params)),
            Scenario::TriangleWide => Some(TriangleSpec { a: 5.0 * params.alpha() }),
            _ => None,
        }
    }

    pub fn squeezed(&self) -> Option<SqueezedSpec> {
        matches!(self, Scenario::Squeezed).then_some(SqueezedSpec { amp: 1.0, squeeze: Squeeze::Position })
    }

    /// Second moments at `t = 0` where they are known in closed form.
    pub fn exact_moments(&self, params: &OscillatorParams) -> Option<SecondMoments> {
        self.triangle(params).map(|t| t.exact_moments(params))
    }

    pub fn initial_state(&self, params: &OscillatorParams, grid: &Grid) -> Result<SampledWave> {
        match self {
            Scenario::TwoGaussianFig1 => two_gaussian_state(&TwoGaussianSpec::fig1(params), 0.0, params, grid),
            Scenario::TriangleStable | Scenario::TriangleWide => {
                triangle_state(&self.triangle(params).expect("triangle scenario"), params, grid)
            }
            Scenario::Squeezed => squeezed_state(&self.squeezed().expect("squeezed scenario"), 0.0, params, grid),
        }
    }

    /// Closed-form state at time `t`, for the scenarios that have one.
    pub fn analytic_state(&self, t: f64, params: &OscillatorParams, grid: &Grid) -> Option<Result<SampledWave>> {
        match self {
            Scenario::TwoGaussianFig1 => Some(two_gaussian_state(&TwoGaussianSpec::fig1(params), t, params, grid)),
            Scenario::Squeezed => Some(squeezed_state(&self.squeezed().expect("squeezed scenario"), t, params, grid)),
            _ => None,
        }
    }

    /// Coefficients of the initial state computed off the grid, where that is possible.
    pub fn exact_coeffs(&self, params: &OscillatorParams, n_max: usize) -> Option<Result<SpectralCoeffs>> {
        self.triangle(params).map(|t| triangle_coeffs(&t, params, n_max))
    }
}
