//! First and second moments, the invariants `ε, A, K, t₀` of second-moment
//! dynamics, their closed-form trajectories and the energy split.
//!
//! Moments of spectral coefficients use ladder-operator matrix elements:
//! with `⟨a⟩ = Σ √(n+1) c_n* c_{n+1}`, `⟨a²⟩ = Σ √((n+1)(n+2)) c_n* c_{n+2}`
//! and `⟨N⟩ = Σ n |c_n|²`,
//!
//! ```text
//! ⟨x⟩ = √2 α Re⟨a⟩              ⟨p⟩ = √2 (ħ/α) Im⟨a⟩
//! ⟨x²⟩ = α²(⟨N⟩ + ½ + Re⟨a²⟩)    ⟨p²⟩ = (ħ/α)²(⟨N⟩ + ½ - Re⟨a²⟩)
//! ½⟨xp + px⟩ = ħ Im⟨a²⟩
//! ```
//!
//! [`wave_moments`] computes the same quantities by quadrature on a sampled
//! wave with an FFT derivative, independently of the ladder algebra.

use std::f64::consts::PI;

use rustfft::FftPlanner;

use crate::basis::SpectralCoeffs;
use crate::error::{Error, Result};
use crate::params::OscillatorParams;
use crate::wave::{Complex, SampledWave};

/// Coefficient norms farther than this from 1 are rejected.
pub const NORM_TOL: f64 = 1e-3;
/// Default limit on the occupancy of the top modes for second moments.
pub const DEFAULT_TAIL_LIMIT: f64 = 1e-10;
/// Slack on `K ≥ ½` before input moments are declared corrupt.
pub const UNCERTAINTY_TOL: f64 = 1e-10;

/// Centroid `(⟨x⟩, ⟨p⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FirstMoments {
    pub x_mean: f64,
    pub p_mean: f64,
}

/// `(Δx², Δp², Δxp)` with `Δxp = ½⟨xp + px⟩ - ⟨x⟩⟨p⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMoments {
    pub dx2: f64,
    pub dp2: f64,
    pub dxp: f64,
}

impl SecondMoments {
    /// `Δx²Δp² - Δxp²`.
    pub fn determinant(&self) -> f64 {
        self.dx2 * self.dp2 - self.dxp * self.dxp
    }

    /// `Δx Δp / ħ`.
    pub fn uncertainty_product(&self, params: &OscillatorParams) -> f64 {
        (self.dx2 * self.dp2).sqrt() / params.hbar()
    }

    /// Positivity and the Schrödinger–Robertson bound `Δx²Δp² - Δxp² ≥ ħ²/4`.
    pub fn validate(&self, params: &OscillatorParams) -> Result<()> {
        if !(self.dx2 > 0.0 && self.dp2 > 0.0) {
            return Err(Error::Moment(format!("non-positive spreads {self:?}")));
        }
        let h2 = params.hbar() * params.hbar();
        if self.determinant() / h2 < 0.25 - 1e-12 {
            return Err(Error::UncertaintyViolation(format!("Δx²Δp² - Δxp² = {:.6e} ħ²", self.determinant() / h2)));
        }
        Ok(())
    }
}

/// Invariants of second-moment dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentConstants {
    /// Quantal energy in units of ħω.
    pub eps: f64,
    /// Oscillation amplitude, stored non-negative.
    pub amp: f64,
    /// `√(Δx²Δp² - Δxp²)/ħ`.
    pub k: f64,
    /// Phase reference in `(-T/4, T/4]`; 0 when `amp == 0`.
    pub t0: f64,
}

struct Ladder {
    a: Complex,
    a2: Complex,
    number: f64,
}

fn ladder(coeffs: &SpectralCoeffs) -> Result<Ladder> {
    let c = coeffs.coeffs();
    let norm = coeffs.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Normalization(format!("Σ|c_n|² = {norm}")));
    }
    let mut a = Complex::new(0.0, 0.0);
    let mut a2 = Complex::new(0.0, 0.0);
    let mut number = 0.0;
    for n in 0..c.len() {
        let nf = n as f64;
        number += nf * c[n].norm_sqr();
        if n + 1 < c.len() {
            a += c[n].conj() * c[n + 1] * (nf + 1.0).sqrt();
        }
        if n + 2 < c.len() {
            a2 += c[n].conj() * c[n + 2] * ((nf + 1.0) * (nf + 2.0)).sqrt();
        }
    }
    Ok(Ladder { a: a / norm, a2: a2 / norm, number: number / norm })
}

pub fn first_moments(coeffs: &SpectralCoeffs) -> Result<FirstMoments> {
    let l = ladder(coeffs)?;
    let p = coeffs.params();
    Ok(FirstMoments {
        x_mean: std::f64::consts::SQRT_2 * p.alpha() * l.a.re,
        p_mean: std::f64::consts::SQRT_2 * p.momentum_scale() * l.a.im,
    })
}

/// Second moments with the default tail limit.
pub fn second_moments(coeffs: &SpectralCoeffs) -> Result<SecondMoments> {
    second_moments_with_tail_limit(coeffs, DEFAULT_TAIL_LIMIT)
}

/// Second moments, refusing expansions whose top-mode occupancy exceeds
/// `tail_limit` (the truncated `⟨p²⟩` would be underestimated).
pub fn second_moments_with_tail_limit(coeffs: &SpectralCoeffs, tail_limit: f64) -> Result<SecondMoments> {
    let tail = coeffs.tail_occupancy();
    if tail > tail_limit {
        return Err(Error::Truncation(format!(
            "top-mode occupancy {tail:.3e} exceeds {tail_limit:.1e} at n_max = {}",
            coeffs.n_max()
        )));
    }
    let l = ladder(coeffs)?;
    let p = coeffs.params();
    let first = FirstMoments {
        x_mean: std::f64::consts::SQRT_2 * p.alpha() * l.a.re,
        p_mean: std::f64::consts::SQRT_2 * p.momentum_scale() * l.a.im,
    };
    let x2 = p.alpha().powi(2) * (l.number + 0.5 + l.a2.re);
    let p2 = p.momentum_scale().powi(2) * (l.number + 0.5 - l.a2.re);
    let sym = p.hbar() * l.a2.im;
    Ok(SecondMoments {
        dx2: x2 - first.x_mean * first.x_mean,
        dp2: p2 - first.p_mean * first.p_mean,
        dxp: sym - first.x_mean * first.p_mean,
    })
}

/// Classical orbit of the centroid.
pub fn centroid_trajectory(init: &FirstMoments, t: f64, params: &OscillatorParams) -> FirstMoments {
    let (s, c) = (params.omega() * t).sin_cos();
    let mw = params.mass() * params.omega();
    FirstMoments { x_mean: init.x_mean * c + init.p_mean / mw * s, p_mean: init.p_mean * c - mw * init.x_mean * s }
}

/// `ε`, `A`, `K`, `t₀` from a snapshot taken at `t = 0`.
pub fn moment_constants(m2: &SecondMoments, params: &OscillatorParams) -> Result<MomentConstants> {
    if !(m2.dx2 > 0.0 && m2.dp2 > 0.0) {
        return Err(Error::Moment(format!("non-positive spreads {m2:?}")));
    }
    let a2 = params.alpha().powi(2);
    let u = m2.dx2 / a2;
    let v = m2.dp2 * a2 / params.hbar().powi(2);
    let w = m2.dxp / params.hbar();
    let k2 = u * v - w * w;
    if k2 < 0.25 - UNCERTAINTY_TOL {
        return Err(Error::UncertaintyViolation(format!("K² = {k2:.12}")));
    }
    let eps = 0.5 * (u + v);
    let a_sin = -w;
    let a_cos = 0.5 * (v - u);
    let amp = a_sin.hypot(a_cos);
    let t0 = if amp == 0.0 { 0.0 } else { a_sin.atan2(a_cos) / (2.0 * params.omega()) };
    Ok(MomentConstants { eps, amp, k: k2.sqrt(), t0 })
}

/// `Δxp = ħA sin 2ω(t-t₀)`, `Δx² = α²[ε - A cos 2ω(t-t₀)]`,
/// `Δp² = (ħ/α)²[ε + A cos 2ω(t-t₀)]`.
pub fn second_moments_at(c: &MomentConstants, t: f64, params: &OscillatorParams) -> SecondMoments {
    let (s, co) = (2.0 * params.omega() * (t - c.t0)).sin_cos();
    SecondMoments {
        dx2: params.alpha().powi(2) * (c.eps - c.amp * co),
        dp2: params.momentum_scale().powi(2) * (c.eps + c.amp * co),
        dxp: params.hbar() * c.amp * s,
    }
}

/// Classical energy of the centroid and the quantal remainder `ħωε`.
pub fn energy_split(f1: &FirstMoments, m2: &SecondMoments, params: &OscillatorParams) -> (f64, f64) {
    let m = params.mass();
    let w2 = params.omega().powi(2);
    let e_c = f1.p_mean.powi(2) / (2.0 * m) + 0.5 * m * w2 * f1.x_mean.powi(2);
    let e_q = m2.dp2 / (2.0 * m) + 0.5 * m * w2 * m2.dx2;
    (e_c, e_q)
}

/// Spectral derivative of samples on a uniform grid, treating the data as
/// periodic. Accurate for states that decay before the grid edges.
pub fn spectral_derivative(values: &[Complex], spacing: f64) -> Vec<Complex> {
    let n = values.len();
    let mut buf = values.to_vec();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let span = n as f64 * spacing;
    for (m, v) in buf.iter_mut().enumerate() {
        let freq = if 2 * m < n {
            m as f64
        } else if 2 * m == n {
            0.0
        } else {
            m as f64 - n as f64
        };
        *v *= Complex::new(0.0, 2.0 * PI * freq / span);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

/// First and second moments by quadrature on the sampled wave.
pub fn wave_moments(f: &SampledWave) -> Result<(FirstMoments, SecondMoments)> {
    let g = f.grid();
    let hbar = f.params().hbar();
    let v = f.values();
    let dv = spectral_derivative(v, g.spacing());
    let (mut n, mut x1, mut x2, mut p1, mut p2, mut xp) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for k in 0..v.len() {
        let w = g.weight(k);
        let x = g.point(k);
        let rho = v[k].norm_sqr();
        // ψ* (-iħ ψ')
        let pd = v[k].conj() * dv[k] * Complex::new(0.0, -hbar);
        n += w * rho;
        x1 += w * x * rho;
        x2 += w * x * x * rho;
        p1 += w * pd.re;
        p2 += w * hbar * hbar * dv[k].norm_sqr();
        xp += w * x * pd.re;
    }
    if n.is_nan() || n <= 0.0 {
        return Err(Error::DegenerateState("zero norm".into()));
    }
    let first = FirstMoments { x_mean: x1 / n, p_mean: p1 / n };
    let second = SecondMoments {
        dx2: x2 / n - first.x_mean.powi(2),
        dp2: p2 / n - first.p_mean.powi(2),
        dxp: xp / n - first.x_mean * first.p_mean,
    };
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> OscillatorParams {
        OscillatorParams::new(1.3, 0.7, 2.1).unwrap()
    }

    fn coeffs(v: &[(f64, f64)]) -> SpectralCoeffs {
        SpectralCoeffs::new(p(), v.iter().map(|&(r, i)| Complex::new(r, i)).collect()).unwrap().normalized().unwrap()
    }

    #[test]
    fn ground_state_moments() {
        let params = p();
        let c = coeffs(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let f = first_moments(&c).unwrap();
        assert_eq!(f, FirstMoments::default());
        let m = second_moments(&c).unwrap();
        let a2 = params.alpha().powi(2);
        assert!((m.dx2 - a2 / 2.0).abs() < 1e-15);
        assert!((m.dp2 - params.hbar().powi(2) / (2.0 * a2)).abs() < 1e-14);
        assert_eq!(m.dxp, 0.0);
        let k = moment_constants(&m, &params).unwrap();
        assert!((k.eps - 0.5).abs() < 1e-15 && (k.k - 0.5).abs() < 1e-15 && k.amp < 1e-15);
    }

    #[test]
    fn real_coefficients_have_no_momentum() {
        let c = coeffs(&[(0.3, 0.0), (0.5, 0.0), (-0.2, 0.0), (0.7, 0.0)]);
        assert_eq!(first_moments(&c).unwrap().p_mean, 0.0);
    }

    #[test]
    fn unnormalized_rejected() {
        let c = SpectralCoeffs::new(p(), vec![Complex::new(2.0, 0.0)]).unwrap();
        assert_eq!(first_moments(&c).unwrap_err().code(), "normalization-error");
    }

    #[test]
    fn heavy_tail_rejected() {
        let c = coeffs(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(second_moments(&c).unwrap_err().code(), "truncation-error");
    }

    #[test]
    fn centroid_quarter_and_full_period() {
        let params = p();
        let init = FirstMoments { x_mean: 1.7, p_mean: 0.0 };
        let q = centroid_trajectory(&init, params.period() / 4.0, &params);
        assert!(q.x_mean.abs() < 1e-14);
        assert!((q.p_mean + params.mass() * params.omega() * 1.7).abs() < 1e-14);
        let init = FirstMoments { x_mean: 0.4, p_mean: -2.2 };
        let full = centroid_trajectory(&init, params.period(), &params);
        assert!((full.x_mean - init.x_mean).abs() < 1e-14 && (full.p_mean - init.p_mean).abs() < 1e-14);
        for i in 0..50 {
            let t = i as f64 * 0.17;
            let c = centroid_trajectory(&FirstMoments { x_mean: 1.5, p_mean: 0.0 }, t, &params);
            assert!((c.x_mean - 1.5 * (params.omega() * t).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn unit_amplitude_constants_round_trip() {
        let params = OscillatorParams::default();
        let c = MomentConstants { eps: 2f64.sqrt(), amp: 1.0, k: 1.0, t0: 0.0 };
        let m = second_moments_at(&c, 0.0, &params);
        let back = moment_constants(&m, &params).unwrap();
        assert!((back.eps - 2f64.sqrt()).abs() < 1e-14);
        assert!((back.amp - 1.0).abs() < 1e-14);
        assert!((back.k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn corrupt_moments_rejected() {
        let params = OscillatorParams::default();
        let m = SecondMoments { dx2: 0.3, dp2: 0.3, dxp: 0.0 };
        assert_eq!(moment_constants(&m, &params).unwrap_err().code(), "uncertainty-violation");
        assert_eq!(m.validate(&params).unwrap_err().code(), "uncertainty-violation");
    }

    #[test]
    fn stable_constants_report_zero_phase() {
        let params = OscillatorParams::default();
        let m = SecondMoments { dx2: 1.5, dp2: 1.5, dxp: 0.0 };
        let c = moment_constants(&m, &params).unwrap();
        assert_eq!(c.amp, 0.0);
        assert_eq!(c.t0, 0.0);
        for t in [0.0, 1.0, 4.0] {
            assert_eq!(second_moments_at(&c, t, &params), m);
        }
    }

    #[test]
    fn ground_energy_split() {
        let params = p();
        let c = coeffs(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let (ec, eq) = energy_split(&first_moments(&c).unwrap(), &second_moments(&c).unwrap(), &params);
        assert_eq!(ec, 0.0);
        assert!((eq - 0.5 * params.hbar() * params.omega()).abs() < 1e-14);
    }

    #[test]
    fn spectral_derivative_of_gaussian() {
        let g = crate::grid::make_grid(12.0, 512).unwrap();
        let v: Vec<Complex> = g.points().iter().map(|&x| Complex::new((-x * x / 2.0).exp(), 0.0)).collect();
        let d = spectral_derivative(&v, g.spacing());
        for (k, x) in g.points().into_iter().enumerate() {
            assert!((d[k].re + x * (-x * x / 2.0).exp()).abs() < 1e-12);
        }
    }
}
