use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Physical constants of the oscillator. The length scale
/// `alpha = sqrt(hbar / (mass * omega))` is derived once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    hbar: f64,
    mass: f64,
    omega: f64,
    alpha: f64,
}

impl OscillatorParams {
    pub fn new(hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("omega", omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { hbar, mass, omega, alpha: (hbar / (mass * omega)).sqrt() })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Natural length scale of the oscillator.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Classical period `2π/ω`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Natural momentum scale `ħ/α`.
    pub fn momentum_scale(&self) -> f64 {
        self.hbar / self.alpha
    }

    /// `ħω(n + ½)`.
    pub fn energy_level(&self, n: usize) -> f64 {
        self.hbar * self.omega * (n as f64 + 0.5)
    }
}

impl Default for OscillatorParams {
    /// Dimensionless units, ħ = m = ω = 1.
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, omega: 1.0, alpha: 1.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_matches_definition() {
        let p = OscillatorParams::new(1.054_571_817e-34, 2.838e-25, 2.0 * PI * 3e4).unwrap();
        let expected = (p.hbar() / (p.mass() * p.omega())).sqrt();
        assert!(((p.alpha() - expected) / expected).abs() < 1e-15);
        assert!((p.period() - 1.0 / 3e4).abs() < 1e-18);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(OscillatorParams::new(0.0, 1.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, -1.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, f64::NAN).is_err());
    }
}
