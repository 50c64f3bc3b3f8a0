//! One-dimensional harmonic-oscillator wave functions evolved three ways
//! (spectral expansion, propagator quadrature, closed forms), with moment
//! dynamics and the reduction of any state to a stable state at the origin.

mod angles;
pub mod basis;
pub mod demos;
pub mod error;
pub mod evolve;
pub mod fourier;
pub mod grid;
pub mod io;
pub mod moments;
pub mod params;
pub mod transform;
pub mod wave;

pub use basis::{build_basis, project, project_with_tolerance, synthesize, EigenbasisTable, SpectralCoeffs};
pub use error::{Error, Result};
pub use grid::{make_grid, Grid};
pub use params::OscillatorParams;
pub use wave::{inner_product, l2_distance, normalize, Complex, SampledWave};

/// Default grid half extent in units of `α`.
pub const DEFAULT_EXTENT_ALPHA: f64 = 24.0;
/// Default number of grid points.
pub const DEFAULT_POINTS: usize = 1024;

/// Symmetric grid of `DEFAULT_POINTS` points over `±DEFAULT_EXTENT_ALPHA · α`.
pub fn default_grid(params: &OscillatorParams) -> Grid {
    Grid::symmetric(DEFAULT_EXTENT_ALPHA * params.alpha(), DEFAULT_POINTS).expect("valid default grid")
}
