//! Quadrature of `ψ(x,t) = ∫ K(x,x',t) ψ(x') dx'` with the oscillator kernel
//!
//! ```text
//! K(x,x',t) = (-i)^k e^{-iπ/4} / (α √(2π|sin ωt|))
//!             · exp[i((x² + x'²) cos ωt - 2xx') / (2α² sin ωt)],   k = ⌊ωt/π⌋.
//! ```
//!
//! The factor `(-i)^k` carries the phase through each caustic at `ωt = kπ`.
//! Negative times use `K(x,x',-t) = K*(x',x,t)`.

use std::f64::consts::{FRAC_PI_4, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::OscillatorParams;
use crate::wave::{Complex, SampledWave};

/// Kernel evaluation is refused when `|sin ωt|` falls below this.
pub const DEFAULT_SIN_THRESHOLD: f64 = 1e-3;
/// Largest kernel phase change per grid step before a warning is recorded.
pub const MAX_PHASE_STEP: f64 = FRAC_PI_4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub value: Complex,
    /// Number of caustics crossed, `⌊ω|t|/π⌋`.
    pub maslov_index: i64,
}

/// `⌊ω|t|/π⌋`.
pub fn maslov_index(t: f64, params: &OscillatorParams) -> i64 {
    (params.omega() * t.abs() / PI).floor() as i64
}

fn check_caustic(t: f64, params: &OscillatorParams, sin_threshold: f64) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::NearCaustic("t = 0: the kernel is a delta function".into()));
    }
    let s = (params.omega() * t).sin();
    if s.abs() < sin_threshold {
        return Err(Error::NearCaustic(format!(
            "|sin ωt| = {:.3e} below {sin_threshold:.1e}; use the half/quarter-period maps",
            s.abs()
        )));
    }
    Ok(s)
}

/// Prefactor `(-i)^k e^{-iπ/4} / (α √(2π|sin ωt|))` for `t > 0`.
fn kernel_prefactor(t: f64, params: &OscillatorParams) -> Complex {
    let s = (params.omega() * t).sin();
    let k = maslov_index(t, params);
    let maslov = Complex::new(0.0, -1.0).powi((k % 4) as i32);
    maslov * Complex::from_polar(1.0, -FRAC_PI_4) / (params.alpha() * (2.0 * PI * s.abs()).sqrt())
}

pub fn propagator_kernel(x: f64, x_prime: f64, t: f64, params: &OscillatorParams) -> Result<KernelSample> {
    propagator_kernel_with_threshold(x, x_prime, t, params, DEFAULT_SIN_THRESHOLD)
}

pub fn propagator_kernel_with_threshold(
    x: f64,
    x_prime: f64,
    t: f64,
    params: &OscillatorParams,
    sin_threshold: f64,
) -> Result<KernelSample> {
    check_caustic(t, params, sin_threshold)?;
    if t < 0.0 {
        let k = propagator_kernel_with_threshold(x_prime, x, -t, params, sin_threshold)?;
        return Ok(KernelSample { value: k.value.conj(), maslov_index: k.maslov_index });
    }
    let (s, c) = (params.omega() * t).sin_cos();
    let a2 = params.alpha() * params.alpha();
    let phase = ((x * x + x_prime * x_prime) * c - 2.0 * x * x_prime) / (2.0 * a2 * s);
    Ok(KernelSample {
        value: kernel_prefactor(t, params) * Complex::from_polar(1.0, phase),
        maslov_index: maslov_index(t, params),
    })
}

/// Result of a propagator evolution plus its quadrature diagnostics.
#[derive(Debug, Clone)]
pub struct PropagatorEvolution {
    pub wave: SampledWave,
    /// Largest kernel phase change per grid step over the supports of the
    /// input and output states.
    pub max_phase_step: f64,
    /// `max_phase_step > MAX_PHASE_STEP`.
    pub oscillation_warning: bool,
}

/// Radius outside which `|ψ|` stays below `rel` times its peak.
fn support_radius(f: &SampledWave, rel: f64) -> f64 {
    let peak = f.max_abs();
    let g = f.grid();
    f.values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm() > rel * peak)
        .map(|(k, _)| g.point(k).abs())
        .fold(0.0, f64::max)
}

pub fn evolve_propagator(f: &SampledWave, t: f64) -> Result<PropagatorEvolution> {
    evolve_propagator_with_threshold(f, t, DEFAULT_SIN_THRESHOLD)
}

/// Trapezoid quadrature of the propagator integral, `O(N²)`.
///
/// The trapezoid sum equals the exact integral plus copies of the evolved
/// state boosted by multiples of `2πħ/dx`; those copies sit a distance
/// `2πα²|sin ωt|/dx` away. The evolution is refused as a resolution error
/// when that distance does not clear the grid plus the input support.
pub fn evolve_propagator_with_threshold(f: &SampledWave, t: f64, sin_threshold: f64) -> Result<PropagatorEvolution> {
    let params = *f.params();
    let s = check_caustic(t, &params, sin_threshold)?;
    if t < 0.0 {
        let fwd = evolve_propagator_with_threshold(&f.conj(), -t, sin_threshold)?;
        return Ok(PropagatorEvolution { wave: fwd.wave.conj(), ..fwd });
    }
    let grid = *f.grid();
    let a2 = params.alpha() * params.alpha();
    let dx = grid.spacing();
    let alias_distance = 2.0 * PI * a2 * s.abs() / dx;
    let r_in = support_radius(f, 1e-10);
    let reach = grid.x_max().abs().max(grid.x_min().abs()) + r_in;
    if alias_distance <= reach {
        return Err(Error::Resolution(format!(
            "quadrature images {alias_distance:.3} away, need more than {reach:.3}; refine the grid"
        )));
    }

    let c = (params.omega() * t).cos();
    let xs = grid.points();
    let chirp = |x: f64| Complex::from_polar(1.0, x * x * c / (2.0 * a2 * s));
    let g: Vec<(f64, Complex)> = f
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm_sqr() > 0.0)
        .map(|(k, v)| (xs[k], v * chirp(xs[k]) * grid.weight(k)))
        .collect();
    let pref = kernel_prefactor(t, &params);
    let values: Vec<Complex> = xs
        .par_iter()
        .map(|&x| {
            let acc: Complex = g
                .iter()
                .map(|&(xp, v)| {
                    let (sin, cos) = (x * xp / (a2 * s)).sin_cos();
                    v * Complex::new(cos, -sin)
                })
                .sum();
            pref * chirp(x) * acc
        })
        .collect();
    let wave = f.with_values(values)?;

    let r_out = support_radius(&wave, 1e-10);
    let max_phase_step = (r_in * c.abs() + r_out) * dx / (a2 * s.abs());
    Ok(PropagatorEvolution { wave, max_phase_step, oscillation_warning: max_phase_step > MAX_PHASE_STEP })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_at_eighth_period() {
        let p = OscillatorParams::default();
        let t = p.period() / 8.0;
        let expected = 1.0 / (2.0 * PI / 2f64.sqrt()).sqrt();
        for (x, xp) in [(0.0, 0.0), (1.3, -2.0), (5.0, 4.0)] {
            let k = propagator_kernel(x, xp, t, &p).unwrap();
            assert!((k.value.norm() - expected).abs() < 1e-14);
            assert_eq!(k.maslov_index, 0);
        }
    }

    #[test]
    fn symmetric_in_arguments() {
        let p = OscillatorParams::new(1.0, 2.0, 0.7).unwrap();
        for t in [0.3, 2.0, 5.5, 11.0] {
            let a = propagator_kernel(0.4, -1.7, t, &p).unwrap();
            let b = propagator_kernel(-1.7, 0.4, t, &p).unwrap();
            assert!((a.value - b.value).norm() < 1e-14);
        }
    }

    #[test]
    fn time_reversal_conjugates() {
        let p = OscillatorParams::default();
        for t in [0.3, 2.0, 4.0] {
            let fwd = propagator_kernel(0.9, -0.2, t, &p).unwrap();
            let back = propagator_kernel(-0.2, 0.9, -t, &p).unwrap();
            assert!((back.value - fwd.value.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn maslov_index_counts_caustics() {
        let p = OscillatorParams::default();
        assert_eq!(maslov_index(PI - 0.01, &p), 0);
        assert_eq!(maslov_index(PI + 0.01, &p), 1);
        assert_eq!(maslov_index(2.0 * PI + 0.01, &p), 2);
    }

    #[test]
    fn caustics_refused() {
        let p = OscillatorParams::default();
        assert_eq!(propagator_kernel(0.0, 0.0, PI, &p).unwrap_err().code(), "near-caustic-error");
        assert_eq!(propagator_kernel(0.0, 0.0, 1e-5, &p).unwrap_err().code(), "near-caustic-error");
        assert!(propagator_kernel(0.0, 0.0, 2e-3, &p).is_ok());
    }
}
