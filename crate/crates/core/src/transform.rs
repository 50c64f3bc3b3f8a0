//! Reductions of an arbitrary state to a stable state at rest at the origin,
//! and the maps that rebuild the evolution from the stable one.
//!
//! Shifts and rescalings of sampled waves go through the eigenbasis: the wave
//! is projected once and the Hermite series is evaluated at the mapped
//! points, so no grid interpolation is involved.

use crate::angles::continued_arctan;
use crate::basis::{
    project_with_tolerance, EigenbasisTable, SpectralCoeffs, KINK_TRUNCATION_TOL, SMOOTH_TRUNCATION_TOL,
};
use crate::error::{Error, Result};
use crate::evolve::evolve_spectral;
use crate::moments::{
    centroid_trajectory, first_moments, moment_constants, second_moments, second_moments_at, FirstMoments,
    MomentConstants, SecondMoments,
};
use crate::params::OscillatorParams;
use crate::wave::{Complex, SampledWave};

/// Mass allowed in the outer 2% of the grid after a shift or rescaling.
pub const TRANSFORM_EDGE_MASS: f64 = 1e-10;
/// Edge mass allowed for kinked states, whose truncated expansions ripple out
/// to the turning point of the highest mode.
pub const KINK_EDGE_MASS: f64 = 1e-6;
/// `|Δxp|/ħ` below which the stable form carries no phase chirp.
pub const CHIRP_THRESHOLD: f64 = 1e-12;
/// Largest centroid offset (in units of `α` and `ħ/α`) accepted by [`to_stable`].
pub const CENTERED_TOL: f64 = 1e-6;

/// Band-limited resampling through an eigenbasis table.
#[derive(Debug, Clone, Copy)]
pub struct Resampler<'a> {
    basis: &'a EigenbasisTable,
    tolerance: f64,
    edge_mass: f64,
}

impl<'a> Resampler<'a> {
    /// Accepts projections whose residual is below the smooth-state tolerance.
    pub fn new(basis: &'a EigenbasisTable) -> Self {
        Self { basis, tolerance: SMOOTH_TRUNCATION_TOL, edge_mass: TRANSFORM_EDGE_MASS }
    }

    /// Looser residual limit for states with a kink.
    pub fn kink(basis: &'a EigenbasisTable) -> Self {
        Self { basis, tolerance: KINK_TRUNCATION_TOL, edge_mass: KINK_EDGE_MASS }
    }

    pub fn with_tolerance(basis: &'a EigenbasisTable, tolerance: f64) -> Result<Self> {
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::InvalidArgument(format!("resampling tolerance {tolerance}")));
        }
        Ok(Self { basis, tolerance, edge_mass: TRANSFORM_EDGE_MASS })
    }

    /// Replaces the edge-mass limit used by the coverage checks.
    pub fn with_edge_mass(self, edge_mass: f64) -> Result<Self> {
        if edge_mass.is_nan() || edge_mass <= 0.0 {
            return Err(Error::InvalidArgument(format!("edge mass limit {edge_mass}")));
        }
        Ok(Self { edge_mass, ..self })
    }

    pub fn basis(&self) -> &'a EigenbasisTable {
        self.basis
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn edge_mass(&self) -> f64 {
        self.edge_mass
    }

    fn require_covered(&self, w: &SampledWave, what: &str) -> Result<()> {
        let m = w.edge_mass(0.02);
        if m > self.edge_mass {
            return Err(Error::GridCoverage(format!("{what}: mass {m:.3e} near the grid edges")));
        }
        Ok(())
    }

    /// Projects `f`, failing when the expansion misses more than the tolerance.
    pub fn coeffs(&self, f: &SampledWave) -> Result<SpectralCoeffs> {
        let c = project_with_tolerance(f, self.basis, self.tolerance)?;
        if let Some(w) = c.warning() {
            return Err(Error::Interpolation(format!(
                "projection residual {:.3e} exceeds {:.1e} at n_max = {}",
                w.residual,
                w.tolerance,
                c.n_max()
            )));
        }
        Ok(c)
    }

    /// `g(x) = f(map(x))` on the grid of `f`.
    pub fn resample(&self, f: &SampledWave, map: impl Fn(f64) -> f64) -> Result<SampledWave> {
        let c = self.coeffs(f)?;
        let xs: Vec<f64> = f.grid().points().into_iter().map(map).collect();
        let w = f.with_values(c.eval_at(&xs))?;
        self.require_covered(&w, "resampled state")?;
        Ok(w)
    }
}

/// Centroid removed from a state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CentroidFrame {
    pub x0: f64,
    pub p0: f64,
}

/// Stable state `φ` together with the data that rebuilds the original.
#[derive(Debug, Clone, PartialEq)]
pub struct StableForm {
    pub wave: SampledWave,
    /// Spatial scale `Δx/(α√K)`.
    pub s: f64,
    /// `α²ħK/Δxp`; `None` when `Δxp` vanishes.
    pub b2: Option<f64>,
    /// Invariants of the original (centered) state.
    pub constants: MomentConstants,
}

/// `φ(x) = e^{-ip₀x/ħ} ψ(x + x₀)`.
pub fn remove_centroid(f: &SampledWave, r: &Resampler) -> Result<(SampledWave, CentroidFrame)> {
    let c = r.coeffs(f)?;
    let m1 = first_moments(&c)?;
    let frame = CentroidFrame { x0: m1.x_mean, p0: m1.p_mean };
    let hbar = f.params().hbar();
    let xs: Vec<f64> = f.grid().points().iter().map(|x| x + frame.x0).collect();
    let values = c
        .eval_at(&xs)
        .into_iter()
        .zip(f.grid().points())
        .map(|(v, x)| v * Complex::from_polar(1.0, -frame.p0 * x / hbar))
        .collect();
    let w = f.with_values(values)?;
    r.require_covered(&w, "centered state")?;
    Ok((w, frame))
}

/// Inverse of [`remove_centroid`] after evolving the centered state to `t`:
/// `ψ(x,t) = e^{iγ} e^{ip̄(x - ½x̄)/ħ} φ(x - x̄, t)` with `γ = -p₀x₀/2ħ`.
pub fn attach_centroid(phi_t: &SampledWave, frame: &CentroidFrame, t: f64, r: &Resampler) -> Result<SampledWave> {
    if frame.x0 == 0.0 && frame.p0 == 0.0 {
        return Ok(phi_t.clone());
    }
    let params = phi_t.params();
    let hbar = params.hbar();
    let bar = centroid_trajectory(&FirstMoments { x_mean: frame.x0, p_mean: frame.p0 }, t, params);
    let gamma = -frame.p0 * frame.x0 / (2.0 * hbar);
    let c = r.coeffs(phi_t)?;
    let points = phi_t.grid().points();
    let xs: Vec<f64> = points.iter().map(|x| x - bar.x_mean).collect();
    let values = c
        .eval_at(&xs)
        .into_iter()
        .zip(points)
        .map(|(v, x)| v * Complex::from_polar(1.0, gamma + bar.p_mean * (x - 0.5 * bar.x_mean) / hbar))
        .collect();
    let w = phi_t.with_values(values)?;
    r.require_covered(&w, "state with centroid")?;
    Ok(w)
}

/// Stable form of a centered state, with second moments from its spectral expansion.
pub fn to_stable(f: &SampledWave, r: &Resampler) -> Result<StableForm> {
    let c = r.coeffs(f)?;
    let m1 = first_moments(&c)?;
    require_centered(&m1, f.params())?;
    let m2 = second_moments(&c)?;
    stable_from(&c, f, &m2, r)
}

/// Stable form using externally supplied second moments (e.g. exact values for
/// a state whose spectral tail is too heavy for [`second_moments`]).
pub fn to_stable_with_moments(f: &SampledWave, m2: &SecondMoments, r: &Resampler) -> Result<StableForm> {
    let c = r.coeffs(f)?;
    stable_from(&c, f, m2, r)
}

fn require_centered(m1: &FirstMoments, params: &OscillatorParams) -> Result<()> {
    if m1.x_mean.abs() > CENTERED_TOL * params.alpha() || m1.p_mean.abs() > CENTERED_TOL * params.momentum_scale() {
        return Err(Error::InvalidArgument(format!(
            "state is not centered: ⟨x⟩ = {:.3e}, ⟨p⟩ = {:.3e}",
            m1.x_mean, m1.p_mean
        )));
    }
    Ok(())
}

fn stable_from(c: &SpectralCoeffs, f: &SampledWave, m2: &SecondMoments, r: &Resampler) -> Result<StableForm> {
    let params = f.params();
    if !(m2.dx2 > 0.0 && m2.dx2.is_finite()) {
        return Err(Error::Moment(format!("Δx² = {}", m2.dx2)));
    }
    let constants = moment_constants(m2, params)?;
    let alpha = params.alpha();
    let hbar = params.hbar();
    let s = m2.dx2.sqrt() / (alpha * constants.k.sqrt());
    let chirp = m2.dxp.abs() / hbar >= CHIRP_THRESHOLD;
    let beta = if chirp { m2.dxp / (2.0 * hbar * alpha * alpha * constants.k) } else { 0.0 };
    let points = f.grid().points();
    let xs: Vec<f64> = points.iter().map(|x| s * x).collect();
    let root = s.sqrt();
    let values =
        c.eval_at(&xs).into_iter().zip(points).map(|(v, x)| v * Complex::from_polar(root, -beta * x * x)).collect();
    let wave = f.with_values(values)?;
    r.require_covered(&wave, "stable state")?;
    let b2 = chirp.then(|| alpha * alpha * hbar * constants.k / m2.dxp);
    Ok(StableForm { wave, s, b2, constants })
}

/// Distorted time `τ(t) = ω⁻¹ arctan[((ε+A)/K) tan ω(t-t₀)]`, continued so
/// that it is increasing and equals `t - t₀` at every quarter period from `t₀`.
pub fn distorted_time(c: &MomentConstants, t: f64, params: &OscillatorParams) -> f64 {
    if c.amp == 0.0 {
        return t - c.t0;
    }
    let w = params.omega();
    continued_arctan((c.eps + c.amp) / c.k, w * (t - c.t0)) / w
}

/// Evolution of a stable state, sampled at arbitrary positions.
pub trait StableEvolution {
    /// `φ(y, τ)` at each `y` in `ys`.
    fn stable_values(&self, tau: f64, ys: &[f64]) -> Result<Vec<Complex>>;
}

impl StableEvolution for SpectralCoeffs {
    fn stable_values(&self, tau: f64, ys: &[f64]) -> Result<Vec<Complex>> {
        Ok(evolve_spectral(self, tau).eval_at(ys))
    }
}

impl<F> StableEvolution for F
where
    F: Fn(f64, &[f64]) -> Result<Vec<Complex>>,
{
    fn stable_values(&self, tau: f64, ys: &[f64]) -> Result<Vec<Complex>> {
        self(tau, ys)
    }
}

/// Rebuilds the centered state at time `t` from the evolution of its stable form:
/// `ψ(x,t) = √σ e^{iΔxp x²/(2ħΔx²)} φ(σx, τ(t) - τ(0))` with `σ = √K α/Δx(t)`.
pub fn evolve_via_stable(sf: &StableForm, oracle: &impl StableEvolution, t: f64) -> Result<SampledWave> {
    evolve_via_stable_with_edge_mass(sf, oracle, t, TRANSFORM_EDGE_MASS)
}

/// [`evolve_via_stable`] with an explicit limit on the mass near the grid edges.
pub fn evolve_via_stable_with_edge_mass(
    sf: &StableForm,
    oracle: &impl StableEvolution,
    t: f64,
    edge_mass: f64,
) -> Result<SampledWave> {
    let params = sf.wave.params();
    let c = &sf.constants;
    let m = second_moments_at(c, t, params);
    let sigma = c.k.sqrt() * params.alpha() / m.dx2.sqrt();
    let tau = distorted_time(c, t, params) - distorted_time(c, 0.0, params);
    let points = sf.wave.grid().points();
    let ys: Vec<f64> = points.iter().map(|x| sigma * x).collect();
    let phi = oracle.stable_values(tau, &ys)?;
    if phi.len() != points.len() {
        return Err(Error::IncompatibleOperands(format!(
            "stable evolution returned {} values for {} points",
            phi.len(),
            points.len()
        )));
    }
    let curvature = m.dxp / (2.0 * params.hbar() * m.dx2);
    let root = sigma.sqrt();
    let values = phi.into_iter().zip(points).map(|(v, x)| v * Complex::from_polar(root, curvature * x * x)).collect();
    let w = sf.wave.with_values(values)?;
    let m = w.edge_mass(0.02);
    if m > edge_mass {
        return Err(Error::GridCoverage(format!("rescaled state: mass {m:.3e} near the grid edges")));
    }
    Ok(w)
}

/// `χ(x) = √s ψ(sx)`, which keeps the norm of `ψ`.
pub fn scale_state(f: &SampledWave, s: f64, r: &Resampler) -> Result<SampledWave> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!("scale factor {s}")));
    }
    if s == 1.0 {
        return Ok(f.clone());
    }
    let w = r.resample(f, |x| s * x)?;
    Ok(w.scaled(Complex::new(s.sqrt(), 0.0)))
}

/// `e^{ip'x/ħ} ψ(x)`.
pub fn boost_momentum(f: &SampledWave, p_boost: f64) -> SampledWave {
    let hbar = f.params().hbar();
    f.map(|x, v| v * Complex::from_polar(1.0, p_boost * x / hbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_basis;
    use crate::evolve::{displaced_ground_state, squeezed_state, Squeeze, SqueezedSpec};
    use crate::grid::make_grid;
    use crate::moments::wave_moments;
    use crate::wave::l2_distance;

    fn setup() -> (OscillatorParams, EigenbasisTable) {
        let p = OscillatorParams::default();
        let g = make_grid(24.0, 1024).unwrap();
        (p, build_basis(&p, &g, 128).unwrap())
    }

    #[test]
    fn removes_displacement() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let f = displaced_ground_state(2.0, 0.0, &p, b.grid()).unwrap();
        let (phi, frame) = remove_centroid(&f, &r).unwrap();
        assert!((frame.x0 - 2.0).abs() < 1e-8 && frame.p0.abs() < 1e-8);
        let g0 = displaced_ground_state(0.0, 0.0, &p, b.grid()).unwrap();
        assert!(l2_distance(&phi, &g0).unwrap() < 1e-8);
    }

    #[test]
    fn boosted_gaussian_frame() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let g0 = displaced_ground_state(0.0, 0.0, &p, b.grid()).unwrap();
        let f = boost_momentum(&g0, 0.8);
        let (phi, frame) = remove_centroid(&f, &r).unwrap();
        assert!(frame.x0.abs() < 1e-10 && (frame.p0 - 0.8).abs() < 1e-8);
        assert!(l2_distance(&phi, &g0).unwrap() < 1e-8);
    }

    #[test]
    fn attach_matches_displaced_closed_form() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let frame = CentroidFrame { x0: 2.0, p0: 0.0 };
        for t in [0.3, 1.1, 2.9] {
            let phi_t = displaced_ground_state(0.0, t, &p, b.grid()).unwrap();
            let psi = attach_centroid(&phi_t, &frame, t, &r).unwrap();
            let exact = displaced_ground_state(2.0, t, &p, b.grid()).unwrap();
            assert!(l2_distance(&psi, &exact).unwrap() < 1e-8);
        }
    }

    #[test]
    fn attach_inverts_remove_at_zero() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let f = boost_momentum(&displaced_ground_state(-1.5, 0.4, &p, b.grid()).unwrap(), 0.7);
        let (phi, frame) = remove_centroid(&f, &r).unwrap();
        let back = attach_centroid(&phi, &frame, 0.0, &r).unwrap();
        assert!(l2_distance(&back, &f).unwrap() < 1e-8);
    }

    #[test]
    fn squeezed_state_reduces_to_ground() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let spec = SqueezedSpec { amp: 1.0, squeeze: Squeeze::Position };
        let f = squeezed_state(&spec, 0.0, &p, b.grid()).unwrap();
        let sf = to_stable(&f, &r).unwrap();
        assert!(sf.b2.is_none());
        assert!((sf.constants.k - 0.5).abs() < 1e-8);
        let g0 = displaced_ground_state(0.0, 0.0, &p, b.grid()).unwrap();
        assert!(l2_distance(&sf.wave, &g0).unwrap() < 1e-8);
    }

    #[test]
    fn chirped_state_reduces_to_ground() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let spec = SqueezedSpec { amp: 0.8, squeeze: Squeeze::Momentum };
        let f = squeezed_state(&spec, 0.37, &p, b.grid()).unwrap();
        let sf = to_stable(&f, &r).unwrap();
        assert!(sf.b2.is_some());
        let g0 = displaced_ground_state(0.0, 0.0, &p, b.grid()).unwrap();
        // The stable form is fixed only up to a global phase.
        let ov = crate::wave::inner_product(&g0, &sf.wave).unwrap();
        assert!((ov.norm() - 1.0).abs() < 1e-8);
        let again = to_stable(&sf.wave, &r).unwrap();
        assert!((again.s - 1.0).abs() < 1e-8);
    }

    #[test]
    fn off_center_input_rejected() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let f = displaced_ground_state(1.0, 0.0, &p, b.grid()).unwrap();
        assert_eq!(to_stable(&f, &r).unwrap_err().code(), "invalid-argument");
    }

    #[test]
    fn distorted_time_flat_when_stable() {
        let p = OscillatorParams::default();
        let c = MomentConstants { eps: 0.7, amp: 0.0, k: 0.7, t0: 0.0 };
        for t in [-3.0, 0.0, 0.4, 10.0] {
            assert_eq!(distorted_time(&c, t, &p), t);
        }
    }

    #[test]
    fn distorted_time_quarter_period() {
        let p = OscillatorParams::default();
        let c = MomentConstants { eps: 2f64.sqrt(), amp: 1.0, k: 1.0, t0: 0.0 };
        let q = p.period() / 4.0;
        for k in -4..8 {
            let t = k as f64 * q;
            assert!((distorted_time(&c, t, &p) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn ground_state_via_stable_is_phase_rotation() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let g0 = displaced_ground_state(0.0, 0.0, &p, b.grid()).unwrap();
        let sf = to_stable(&g0, &r).unwrap();
        assert!((sf.s - 1.0).abs() < 1e-8);
        let oracle = r.coeffs(&sf.wave).unwrap();
        for t in [0.5, 2.0] {
            let psi = evolve_via_stable(&sf, &oracle, t).unwrap();
            let exact = g0.scaled(Complex::from_polar(1.0, -0.5 * t));
            assert!(l2_distance(&psi, &exact).unwrap() < 1e-8);
        }
    }

    #[test]
    fn scaling_moves_spreads() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let spec = SqueezedSpec { amp: 0.6, squeeze: Squeeze::Position };
        let f = squeezed_state(&spec, 0.3, &p, b.grid()).unwrap();
        let (_, m) = wave_moments(&f).unwrap();
        let s = 1.4;
        let (_, ms) = wave_moments(&scale_state(&f, s, &r).unwrap()).unwrap();
        assert!((ms.dx2 - m.dx2 / (s * s)).abs() < 1e-6);
        assert!((ms.dp2 - m.dp2 * s * s).abs() < 1e-6);
        assert!((ms.dxp - m.dxp).abs() < 1e-6);
    }

    #[test]
    fn scale_factor_validated() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let g0 = displaced_ground_state(0.0, 0.0, &p, b.grid()).unwrap();
        assert_eq!(scale_state(&g0, 0.0, &r).unwrap_err().code(), "invalid-argument");
        assert_eq!(scale_state(&g0, 1.0, &r).unwrap(), g0);
        // Stretching by 6 pushes the tail past the grid edge.
        assert_eq!(scale_state(&g0, 1.0 / 6.0, &r).unwrap_err().code(), "grid-coverage-error");
    }

    #[test]
    fn zero_boost_is_identity() {
        let (p, b) = setup();
        let g0 = displaced_ground_state(0.0, 0.0, &p, b.grid()).unwrap();
        assert_eq!(boost_momentum(&g0, 0.0), g0);
    }

    #[test]
    fn unresolved_state_is_an_interpolation_error() {
        let (p, b) = setup();
        let r = Resampler::new(&b);
        let f = SampledWave::from_fn(p, *b.grid(), |x| Complex::new((1.0 - x.abs()).max(0.0), 0.0));
        let f = crate::wave::normalize(&f).unwrap();
        assert_eq!(scale_state(&f, 1.2, &r).unwrap_err().code(), "interpolation-error");
    }
}
