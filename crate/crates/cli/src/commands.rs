//! `evolve`, `moments`, `stable` and `demo`.

use std::fs;
use std::path::PathBuf;

use oscillator::demos::Scenario;
use oscillator::evolve::{evolve_propagator, evolve_spectral};
use oscillator::io::{write_moments, write_stable, write_wave, MomentRow};
use oscillator::moments::{
    centroid_trajectory, energy_split, first_moments, moment_constants, second_moments, second_moments_at,
};
use oscillator::transform::{
    remove_centroid, to_stable, to_stable_with_moments, Resampler, KINK_EDGE_MASS, TRANSFORM_EDGE_MASS,
};
use oscillator::{synthesize, Error, Result, SampledWave};
use serde_json::json;

use crate::config::{Backend, RunConfig};
use crate::log::Log;
use crate::source::{Loaded, Source};
use crate::times::parse_times;

fn out_path(cfg: &RunConfig, file: &str) -> Result<PathBuf> {
    let dir = cfg.out_dir();
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    Ok(dir.join(file))
}

fn index_width(count: usize) -> usize {
    count.saturating_sub(1).to_string().len().max(3)
}

fn header(log: &mut Log, cmd: &str, cfg: &RunConfig, loaded: &Loaded) {
    let p = loaded.params();
    let g = loaded.wave.grid();
    log.line(&format!(
        "{cmd} input={} seed={} hbar={} mass={} omega={} grid=[{}, {}]x{} norm={:.12}",
        loaded.name,
        cfg.seed(),
        p.hbar(),
        p.mass(),
        p.omega(),
        g.x_min(),
        g.x_max(),
        g.len(),
        loaded.wave.norm()
    ));
}

/// One wave file per requested time, named `<input>_<index>.json`.
pub fn evolve(cfg: &RunConfig, source: &Source, kink: bool, times: &str, log: &mut Log) -> Result<Vec<PathBuf>> {
    let loaded = Loaded::load(source, cfg, kink, log)?;
    let params = *loaded.params();
    let times = parse_times(times, params.period())?;
    let backend = cfg.backend();
    header(log, "evolve", cfg, &loaded);
    log.line(&format!("backend={backend} times={}", times.len()));

    let spectral = match backend {
        Backend::Spectral => {
            let basis = loaded.basis()?;
            let c = loaded.coeffs(&basis, log)?;
            Some((basis, c))
        }
        _ => None,
    };
    if backend == Backend::Analytic {
        let has_closed_form =
            loaded.scenario.and_then(|s| s.analytic_state(0.0, &params, loaded.wave.grid())).is_some();
        if !has_closed_form {
            return Err(Error::InvalidArgument(format!("no closed form for {}", loaded.name)));
        }
    }

    let width = index_width(times.len());
    let mut written = Vec::with_capacity(times.len());
    for (i, &t) in times.iter().enumerate() {
        let wave: SampledWave = match (&spectral, backend) {
            (Some((basis, c)), _) => synthesize(&evolve_spectral(c, t), basis)?,
            (None, Backend::Propagator) => {
                let e = evolve_propagator(&loaded.wave, t)?;
                if e.oscillation_warning {
                    log.line(&format!("warning: t={t:.6e} kernel phase step {:.3} per grid point", e.max_phase_step));
                }
                e.wave
            }
            (None, _) => loaded
                .scenario
                .and_then(|s| s.analytic_state(t, &params, loaded.wave.grid()))
                .expect("closed form checked above")?,
        };
        let path = out_path(cfg, &format!("{}_{i:0width$}.json", loaded.name))?;
        write_wave(&path, &wave)?;
        log.line(&format!("t={t:.12e} norm={:.12} file={}", wave.norm(), path.display()));
        written.push(path);
    }
    Ok(written)
}

/// Moment time series from the conserved constants of the initial state.
pub fn moments(cfg: &RunConfig, source: &Source, kink: bool, times: &str, log: &mut Log) -> Result<PathBuf> {
    let loaded = Loaded::load(source, cfg, kink, log)?;
    let params = *loaded.params();
    let times = parse_times(times, params.period())?;
    header(log, "moments", cfg, &loaded);
    let basis = loaded.basis()?;
    let c = loaded.coeffs(&basis, log)?;
    let f1 = first_moments(&c)?;
    let m2 = match loaded.exact_moments() {
        Some(m) => {
            log.line("second moments: closed form");
            m
        }
        None => second_moments(&c)?,
    };
    let k = moment_constants(&m2, &params)?;
    log.line(&format!("constants eps={:.12e} A={:.12e} K={:.12e} t0={:.12e}", k.eps, k.amp, k.k, k.t0));
    let rows: Vec<MomentRow> = times
        .iter()
        .map(|&t| {
            let f = centroid_trajectory(&f1, t, &params);
            let m = second_moments_at(&k, t, &params);
            let (e_c, e_q) = energy_split(&f, &m, &params);
            MomentRow {
                t,
                x_mean: f.x_mean,
                p_mean: f.p_mean,
                dx2: m.dx2,
                dp2: m.dp2,
                dxp: m.dxp,
                k: k.k,
                eps: k.eps,
                e_c,
                e_q,
            }
        })
        .collect();
    let path = out_path(cfg, &format!("{}_moments.csv", loaded.name))?;
    write_moments(&path, &rows)?;
    log.line(&format!("rows={} file={}", rows.len(), path.display()));
    Ok(path)
}

/// Writes `<input>_stable.json` and reports the reduction as one JSON line.
pub fn stable(cfg: &RunConfig, source: &Source, kink: bool, log: &mut Log) -> Result<PathBuf> {
    let loaded = Loaded::load(source, cfg, kink, log)?;
    header(log, "stable", cfg, &loaded);
    let basis = loaded.basis()?;
    let edge_mass = if loaded.kink { KINK_EDGE_MASS } else { TRANSFORM_EDGE_MASS };
    let r = Resampler::with_tolerance(&basis, loaded.tolerance)?.with_edge_mass(edge_mass)?;
    let (sf, x0, p0) = match loaded.exact_moments() {
        Some(m) => (to_stable_with_moments(&loaded.wave, &m, &r)?, 0.0, 0.0),
        None => {
            let (centered, frame) = remove_centroid(&loaded.wave, &r)?;
            (to_stable(&centered, &r)?, frame.x0, frame.p0)
        }
    };
    let path = out_path(cfg, &format!("{}_stable.json", loaded.name))?;
    write_stable(&path, &sf)?;
    let k = sf.constants;
    log.line(
        &json!({
            "input": loaded.name,
            "s": sf.s,
            "b2": sf.b2,
            "eps": k.eps,
            "A": k.amp,
            "K": k.k,
            "t0": k.t0,
            "x0": x0,
            "p0": p0,
            "file": path.display().to_string(),
        })
        .to_string(),
    );
    Ok(path)
}

/// Lists the scenarios, or writes the initial state of one to `<name>.json`.
pub fn demo(cfg: &RunConfig, name: Option<&str>, log: &mut Log) -> Result<Option<PathBuf>> {
    let Some(name) = name else {
        for s in Scenario::ALL {
            let l = s.layout();
            log.line(&format!(
                "{:<18} ±{}α, {} points, n_max {}: {}",
                s.name(),
                l.half_extent,
                l.n_points,
                l.n_max,
                s.description()
            ));
        }
        return Ok(None);
    };
    let scenario = Scenario::from_name(name)?;
    let loaded = Loaded::load(&Source::Demo(scenario), cfg, false, log)?;
    header(log, "demo", cfg, &loaded);
    let path = out_path(cfg, &format!("{name}.json"))?;
    write_wave(&path, &loaded.wave)?;
    log.line(&format!("file={}", path.display()));
    Ok(Some(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_width_pads_to_three() {
        assert_eq!(index_width(1), 3);
        assert_eq!(index_width(1000), 3);
        assert_eq!(index_width(1001), 4);
    }
}
