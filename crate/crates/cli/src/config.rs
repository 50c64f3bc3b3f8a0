//! Run configuration: a flat `key = value` file merged under command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use oscillator::basis::DEFAULT_N_MAX;
use oscillator::{Error, Grid, OscillatorParams, Result, DEFAULT_EXTENT_ALPHA, DEFAULT_POINTS};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Spectral,
    Propagator,
    Analytic,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Backend as ValueEnum>::from_str(s, true).map_err(|_| Error::Parse(format!("unknown backend {s:?}")))
    }
}

/// Every setting is optional so that a config file and flags can be layered.
/// `extent` is the grid half extent in units of `α`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub hbar: Option<f64>,
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub extent: Option<f64>,
    pub points: Option<usize>,
    pub nmax: Option<usize>,
    pub backend: Option<Backend>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub tolerance: Option<f64>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Parse(format!("bad value {value:?} for {key}")))
}

impl RunConfig {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "hbar" => cfg.hbar = Some(parse_value(key, value)?),
                "mass" => cfg.mass = Some(parse_value(key, value)?),
                "omega" => cfg.omega = Some(parse_value(key, value)?),
                "extent" => cfg.extent = Some(parse_value(key, value)?),
                "points" => cfg.points = Some(parse_value(key, value)?),
                "nmax" => cfg.nmax = Some(parse_value(key, value)?),
                "backend" => cfg.backend = Some(value.parse()?),
                "seed" => cfg.seed = Some(parse_value(key, value)?),
                "out-dir" | "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
                "tolerance" => cfg.tolerance = Some(parse_value(key, value)?),
                _ => return Err(Error::Parse(format!("line {}: unknown key {key:?}", i + 1))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Settings present in `flags` win.
    pub fn overridden_by(self, flags: RunConfig) -> Self {
        RunConfig {
            hbar: flags.hbar.or(self.hbar),
            mass: flags.mass.or(self.mass),
            omega: flags.omega.or(self.omega),
            extent: flags.extent.or(self.extent),
            points: flags.points.or(self.points),
            nmax: flags.nmax.or(self.nmax),
            backend: flags.backend.or(self.backend),
            seed: flags.seed.or(self.seed),
            out_dir: flags.out_dir.or(self.out_dir),
            tolerance: flags.tolerance.or(self.tolerance),
        }
    }

    pub fn params(&self) -> Result<OscillatorParams> {
        OscillatorParams::new(self.hbar.unwrap_or(1.0), self.mass.unwrap_or(1.0), self.omega.unwrap_or(1.0))
    }

    pub fn has_param_override(&self) -> bool {
        self.hbar.is_some() || self.mass.is_some() || self.omega.is_some()
    }

    /// Symmetric grid from the overrides, falling back to the given layout.
    pub fn grid_or(&self, params: &OscillatorParams, extent_alpha: f64, points: usize) -> Result<Grid> {
        let extent = self.extent.unwrap_or(extent_alpha);
        Grid::symmetric(extent * params.alpha(), self.points.unwrap_or(points))
    }

    pub fn grid(&self, params: &OscillatorParams) -> Result<Grid> {
        self.grid_or(params, DEFAULT_EXTENT_ALPHA, DEFAULT_POINTS)
    }

    pub fn n_max_or(&self, fallback: usize) -> usize {
        self.nmax.unwrap_or(fallback)
    }

    pub fn n_max(&self) -> usize {
        self.n_max_or(DEFAULT_N_MAX)
    }

    pub fn backend(&self) -> Backend {
        self.backend.unwrap_or(Backend::Spectral)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn out_dir(&self) -> &Path {
        self.out_dir.as_deref().unwrap_or(Path::new("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_key() {
        let cfg = RunConfig::parse(
            "# run\nhbar = 0.5\nmass=2\nomega = 3 # rad/s\n\nextent = 30\npoints = 512\nnmax = 64\n\
             backend = propagator\nseed = 7\nout-dir = /tmp/x\ntolerance = 1e-6\n",
        )
        .unwrap();
        assert_eq!(cfg.hbar, Some(0.5));
        assert_eq!(cfg.mass, Some(2.0));
        assert_eq!(cfg.omega, Some(3.0));
        assert_eq!(cfg.extent, Some(30.0));
        assert_eq!(cfg.points, Some(512));
        assert_eq!(cfg.nmax, Some(64));
        assert_eq!(cfg.backend, Some(Backend::Propagator));
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.out_dir, Some(PathBuf::from("/tmp/x")));
        assert_eq!(cfg.tolerance, Some(1e-6));
    }

    #[test]
    fn rejects_unknown_keys_and_values() {
        assert_eq!(RunConfig::parse("colour = red").unwrap_err().code(), "parse-error");
        assert_eq!(RunConfig::parse("points = many").unwrap_err().code(), "parse-error");
        assert_eq!(RunConfig::parse("backend = euler").unwrap_err().code(), "parse-error");
        assert_eq!(RunConfig::parse("hbar").unwrap_err().code(), "parse-error");
    }

    #[test]
    fn flags_override_file() {
        let file = RunConfig { hbar: Some(2.0), seed: Some(3), ..Default::default() };
        let flags = RunConfig { seed: Some(9), nmax: Some(10), ..Default::default() };
        let cfg = file.overridden_by(flags);
        assert_eq!((cfg.hbar, cfg.seed, cfg.nmax), (Some(2.0), Some(9), Some(10)));
    }

    #[test]
    fn defaults() {
        let cfg = RunConfig::default();
        let p = cfg.params().unwrap();
        assert_eq!(p, OscillatorParams::default());
        assert_eq!(cfg.grid(&p).unwrap().len(), DEFAULT_POINTS);
        assert_eq!(cfg.backend(), Backend::Spectral);
        assert_eq!(cfg.n_max(), DEFAULT_N_MAX);
    }

    #[test]
    fn extent_is_in_units_of_alpha() {
        let cfg = RunConfig { mass: Some(4.0), extent: Some(10.0), ..Default::default() };
        let p = cfg.params().unwrap();
        assert!((cfg.grid(&p).unwrap().half_extent() - 5.0).abs() < 1e-12);
    }
}
