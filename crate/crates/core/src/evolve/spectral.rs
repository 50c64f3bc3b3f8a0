use crate::basis::{project, synthesize, EigenbasisTable, SpectralCoeffs};
use crate::error::Result;
use crate::wave::{Complex, SampledWave};

/// `c_n -> exp(-iωt(n+½)) c_n`.
pub fn evolve_spectral(coeffs: &SpectralCoeffs, t: f64) -> SpectralCoeffs {
    let omega = coeffs.params().omega();
    let c = coeffs
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, &cn)| cn * Complex::from_polar(1.0, -omega * t * (n as f64 + 0.5)))
        .collect();
    SpectralCoeffs::with_residual(*coeffs.params(), c, coeffs.residual()).expect("non-empty")
}

/// A state held as its projection, ready to be evolved to any time on the
/// table's grid.
#[derive(Debug, Clone)]
pub struct SpectralEvolver<'a> {
    basis: &'a EigenbasisTable,
    coeffs: SpectralCoeffs,
}

impl<'a> SpectralEvolver<'a> {
    pub fn new(f: &SampledWave, basis: &'a EigenbasisTable) -> Result<Self> {
        Ok(Self { basis, coeffs: project(f, basis)? })
    }

    pub fn from_coeffs(coeffs: SpectralCoeffs, basis: &'a EigenbasisTable) -> Self {
        Self { basis, coeffs }
    }

    pub fn coeffs(&self) -> &SpectralCoeffs {
        &self.coeffs
    }

    pub fn coeffs_at(&self, t: f64) -> SpectralCoeffs {
        evolve_spectral(&self.coeffs, t)
    }

    pub fn wave_at(&self, t: f64) -> Result<SampledWave> {
        synthesize(&self.coeffs_at(t), self.basis)
    }
}
