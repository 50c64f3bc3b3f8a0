//! Initial states: a named demo or a wave file.

use std::path::{Path, PathBuf};

use oscillator::basis::{KINK_TRUNCATION_TOL, SMOOTH_TRUNCATION_TOL};
use oscillator::demos::Scenario;
use oscillator::io::read_wave;
use oscillator::moments::SecondMoments;
use oscillator::{
    build_basis, project_with_tolerance, EigenbasisTable, OscillatorParams, Result, SampledWave, SpectralCoeffs,
};

use crate::config::RunConfig;
use crate::log::Log;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Demo(Scenario),
    File(PathBuf),
}

impl Source {
    pub fn from_args(demo: Option<&str>, input: Option<&Path>) -> Result<Self> {
        match (demo, input) {
            (Some(name), None) => Ok(Source::Demo(Scenario::from_name(name)?)),
            (None, Some(path)) => Ok(Source::File(path.to_owned())),
            _ => Err(oscillator::Error::InvalidArgument("give exactly one of --demo and --input".into())),
        }
    }
}

/// A loaded initial state with the grid and basis depth it should be evolved on.
pub struct Loaded {
    pub name: String,
    pub scenario: Option<Scenario>,
    pub wave: SampledWave,
    pub n_max: usize,
    /// The state has a kink, so its spectrum decays algebraically.
    pub kink: bool,
    pub tolerance: f64,
}

fn truncation_tolerance(cfg: &RunConfig, kink: bool) -> f64 {
    cfg.tolerance.unwrap_or(if kink { KINK_TRUNCATION_TOL } else { SMOOTH_TRUNCATION_TOL })
}

impl Loaded {
    pub fn load(source: &Source, cfg: &RunConfig, kink: bool, log: &mut Log) -> Result<Self> {
        match source {
            Source::Demo(s) => {
                let params = cfg.params()?;
                let layout = s.layout();
                let grid = cfg.grid_or(&params, layout.half_extent, layout.n_points)?;
                let kink = kink || s.has_kink();
                Ok(Loaded {
                    name: s.name().to_owned(),
                    scenario: Some(*s),
                    wave: s.initial_state(&params, &grid)?,
                    n_max: cfg.n_max_or(layout.n_max),
                    kink,
                    tolerance: truncation_tolerance(cfg, kink),
                })
            }
            Source::File(path) => {
                let wave = read_wave(path)?;
                if cfg.has_param_override() || cfg.extent.is_some() || cfg.points.is_some() {
                    log.line("note: parameters and grid come from the input file; overrides ignored");
                }
                let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "wave".into());
                Ok(Loaded {
                    name,
                    scenario: None,
                    wave,
                    n_max: cfg.n_max(),
                    kink,
                    tolerance: truncation_tolerance(cfg, kink),
                })
            }
        }
    }

    pub fn params(&self) -> &OscillatorParams {
        self.wave.params()
    }

    pub fn exact_moments(&self) -> Option<SecondMoments> {
        self.scenario.and_then(|s| s.exact_moments(self.params()))
    }

    pub fn basis(&self) -> Result<EigenbasisTable> {
        build_basis(self.params(), self.wave.grid(), self.n_max)
    }

    /// Expansion of the initial state. Demos with off-grid coefficients use them.
    pub fn coeffs(&self, basis: &EigenbasisTable, log: &mut Log) -> Result<SpectralCoeffs> {
        let c = match self.scenario.and_then(|s| s.exact_coeffs(self.params(), self.n_max)) {
            Some(c) => c?,
            None => project_with_tolerance(&self.wave, basis, self.tolerance)?,
        };
        log.line(&format!(
            "spectral n_max={} residual={:.3e} tail={:.3e}",
            c.n_max(),
            c.residual(),
            c.tail_occupancy()
        ));
        if let Some(w) = c.warning() {
            log.line(&format!("warning: projection residual {:.3e} above tolerance {:.1e}", w.residual, w.tolerance));
        }
        Ok(c)
    }
}
