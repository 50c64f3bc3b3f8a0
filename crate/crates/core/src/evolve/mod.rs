//! The three evolution backends (spectral expansion, propagator quadrature,
//! closed-form families) and the exact quarter/half-period maps.

mod analytic;
mod periodicity;
mod propagator;
mod spectral;

pub use analytic::{
    displaced_eigenstate, displaced_ground_state, squeezed_state, DisplacedEigenstateSpec, Squeeze, SqueezedSpec,
};
pub use periodicity::{half_period_map, quarter_period_map, reflect_real_initial};
pub use propagator::{
    evolve_propagator, evolve_propagator_with_threshold, maslov_index, propagator_kernel,
    propagator_kernel_with_threshold, KernelSample, PropagatorEvolution, DEFAULT_SIN_THRESHOLD, MAX_PHASE_STEP,
};
pub use spectral::{evolve_spectral, SpectralEvolver};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::wave::SampledWave;

/// Probability mass allowed in the outer 2% of the grid for a closed-form state.
pub(crate) const COVERAGE_EDGE_MASS: f64 = 1e-12;

pub(crate) fn require_extent(grid: &Grid, needed: f64, what: &str) -> Result<()> {
    if grid.half_extent() < needed {
        return Err(Error::GridCoverage(format!(
            "{what} needs half extent {needed:.4}, grid has {:.4}",
            grid.half_extent()
        )));
    }
    Ok(())
}

pub(crate) fn require_edge_decay(w: &SampledWave, what: &str) -> Result<()> {
    let m = w.edge_mass(0.02);
    if m > COVERAGE_EDGE_MASS {
        return Err(Error::GridCoverage(format!("{what}: mass {m:.3e} near the grid edges")));
    }
    Ok(())
}
