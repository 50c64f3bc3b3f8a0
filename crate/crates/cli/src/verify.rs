//! Invariant checks run against the configured parameters, grid and basis.

use oscillator::demos::{random_coeffs, seeded_rng};
use oscillator::evolve::{
    displaced_ground_state, evolve_propagator, evolve_spectral, half_period_map, quarter_period_map,
};
use oscillator::fourier::verify_eigen_ft;
use oscillator::moments::{
    first_moments, moment_constants, second_moments, second_moments_at, wave_moments, SecondMoments,
};
use oscillator::transform::{
    attach_centroid, distorted_time, evolve_via_stable, remove_centroid, to_stable, Resampler,
};
use oscillator::{
    build_basis, l2_distance, synthesize, EigenbasisTable, Error, OscillatorParams, Result, SampledWave, SpectralCoeffs,
};

use crate::config::RunConfig;
use crate::log::Log;

const RANDOM_STATES: usize = 8;
const RANDOM_TOP_MODE: usize = 24;

struct Context {
    params: OscillatorParams,
    basis: EigenbasisTable,
    states: Vec<SpectralCoeffs>,
    waves: Vec<SampledWave>,
}

impl Context {
    fn new(cfg: &RunConfig) -> Result<Self> {
        let params = cfg.params()?;
        let grid = cfg.grid(&params)?;
        let basis = build_basis(&params, &grid, cfg.n_max())?;
        let mut rng = seeded_rng(cfg.seed());
        let top = RANDOM_TOP_MODE.min(basis.n_max());
        let states: Vec<SpectralCoeffs> =
            (0..RANDOM_STATES).map(|_| random_coeffs(&mut rng, &params, top, basis.n_max())).collect::<Result<_>>()?;
        let waves = states.iter().map(|c| synthesize(c, &basis)).collect::<Result<_>>()?;
        Ok(Context { params, basis, states, waves })
    }

    fn times(&self, count: usize) -> Vec<f64> {
        (1..=count).map(|j| self.params.period() * j as f64 / count as f64).collect()
    }
}

/// Worst error and the bound it must stay under.
struct Measured {
    worst: f64,
    bound: f64,
}

impl Measured {
    fn passed(&self) -> bool {
        self.worst < self.bound
    }
}

type Check = fn(&Context) -> Result<Measured>;

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

fn full_period(cx: &Context) -> Result<Measured> {
    let t = cx.params.period();
    let worst = max_of(cx.states.iter().zip(&cx.waves).map(|(c, w)| {
        let back = synthesize(&evolve_spectral(c, t), &cx.basis)?;
        l2_distance(&back, &w.scaled((-1.0).into()))
    }))?;
    Ok(Measured { worst, bound: 1e-10 })
}

fn half_period(cx: &Context) -> Result<Measured> {
    let t = cx.params.period() / 2.0;
    let worst = max_of(
        cx.states
            .iter()
            .zip(&cx.waves)
            .map(|(c, w)| l2_distance(&synthesize(&evolve_spectral(c, t), &cx.basis)?, &half_period_map(w)?)),
    )?;
    Ok(Measured { worst, bound: 1e-8 })
}

fn quarter_period(cx: &Context) -> Result<Measured> {
    let t = cx.params.period() / 4.0;
    let worst = max_of(
        cx.states
            .iter()
            .zip(&cx.waves)
            .map(|(c, w)| l2_distance(&synthesize(&evolve_spectral(c, t), &cx.basis)?, &quarter_period_map(w)?)),
    )?;
    Ok(Measured { worst, bound: 1e-8 })
}

fn fourier_eigenfunctions(cx: &Context) -> Result<Measured> {
    let worst = max_of((0..=20.min(cx.basis.n_max())).map(|n| verify_eigen_ft(&cx.basis, n)))?;
    Ok(Measured { worst, bound: 1e-8 })
}

fn propagator_agreement(cx: &Context) -> Result<Measured> {
    let p = &cx.params;
    let f = displaced_ground_state(1.5 * p.alpha(), 0.0, p, cx.basis.grid())?;
    let c = oscillator::project(&f, &cx.basis)?;
    let worst = max_of([1.0, 3.0, 5.0].map(|j| {
        let t = p.period() * j / 8.0;
        l2_distance(&evolve_propagator(&f, t)?.wave, &synthesize(&evolve_spectral(&c, t), &cx.basis)?)
    }))?;
    Ok(Measured { worst, bound: 1e-6 })
}

fn moment_error(m: &SecondMoments, reference: &SecondMoments, eps: f64, p: &OscillatorParams) -> f64 {
    let (a2, q2) = (p.alpha().powi(2), p.momentum_scale().powi(2));
    ((m.dx2 - reference.dx2).abs() / (a2 * eps))
        .max((m.dp2 - reference.dp2).abs() / (q2 * eps))
        .max((m.dxp - reference.dxp).abs() / (p.hbar() * eps))
}

fn closed_form_moments(cx: &Context) -> Result<Measured> {
    let p = &cx.params;
    let worst = max_of(cx.states.iter().flat_map(|c| {
        cx.times(16).into_iter().map(move |t| {
            let k = moment_constants(&second_moments(c)?, p)?;
            Ok(moment_error(&second_moments(&evolve_spectral(c, t))?, &second_moments_at(&k, t, p), k.eps, p))
        })
    }))?;
    Ok(Measured { worst, bound: 1e-8 })
}

fn k_constant(cx: &Context) -> Result<Measured> {
    let p = &cx.params;
    let worst = max_of(cx.states.iter().flat_map(|c| {
        cx.times(16).into_iter().map(move |t| {
            let k0 = moment_constants(&second_moments(c)?, p)?.k;
            let kt = moment_constants(&second_moments(&evolve_spectral(c, t))?, p)?.k;
            Ok((kt - k0).abs() / k0)
        })
    }))?;
    Ok(Measured { worst, bound: 1e-8 })
}

fn uncertainty_chain(cx: &Context) -> Result<Measured> {
    let p = &cx.params;
    // Largest violation of ε ≥ ΔxΔp/ħ ≥ K ≥ ½; zero when the chain holds.
    let worst = max_of(cx.states.iter().flat_map(|c| {
        cx.times(16).into_iter().map(move |t| {
            let m = second_moments(&evolve_spectral(c, t))?;
            let k = moment_constants(&m, p)?;
            let prod = m.uncertainty_product(p);
            Ok((prod - k.eps).max(k.k - prod).max(0.5 - k.k).max(0.0))
        })
    }))?;
    Ok(Measured { worst, bound: 1e-10 })
}

fn ladder_vs_quadrature(cx: &Context) -> Result<Measured> {
    let worst = max_of(cx.states.iter().zip(&cx.waves).map(|(c, w)| {
        let (q1, q2) = wave_moments(w)?;
        let (s1, s2) = (first_moments(c)?, second_moments(c)?);
        Ok([q1.x_mean - s1.x_mean, q1.p_mean - s1.p_mean, q2.dx2 - s2.dx2, q2.dp2 - s2.dp2, q2.dxp - s2.dxp]
            .into_iter()
            .fold(0.0f64, |a, d| a.max(d.abs())))
    }))?;
    Ok(Measured { worst, bound: 1e-8 })
}

fn distorted_time_rate(cx: &Context) -> Result<Measured> {
    let p = &cx.params;
    let h = 1e-5 * p.period();
    let worst = max_of(cx.states.iter().flat_map(|c| {
        cx.times(16).into_iter().map(move |t| {
            let k = moment_constants(&second_moments(c)?, p)?;
            let fd = (distorted_time(&k, t + h, p) - distorted_time(&k, t - h, p)) / (2.0 * h);
            let exact = k.k * p.alpha().powi(2) / second_moments_at(&k, t, p).dx2;
            Ok((fd - exact).abs() / exact)
        })
    }))?;
    Ok(Measured { worst, bound: 1e-6 })
}

fn reduction_pipeline(cx: &Context) -> Result<Measured> {
    let r = Resampler::new(&cx.basis);
    let worst = max_of(cx.states.iter().zip(&cx.waves).flat_map(|(c, w)| {
        let r = &r;
        cx.times(8).into_iter().map(move |t| {
            let (centered, frame) = remove_centroid(w, r)?;
            let sf = to_stable(&centered, r)?;
            let oracle = r.coeffs(&sf.wave)?;
            let rebuilt = attach_centroid(&evolve_via_stable(&sf, &oracle, t)?, &frame, t, r)?;
            rebuilt.max_abs_modulus_diff(&synthesize(&evolve_spectral(c, t), &cx.basis)?)
        })
    }))?;
    Ok(Measured { worst, bound: 1e-5 })
}

const CHECKS: [(&str, Check); 11] = [
    ("periodicity.full-period", full_period),
    ("periodicity.half-period", half_period),
    ("periodicity.quarter-period", quarter_period),
    ("fourier.eigenfunctions", fourier_eigenfunctions),
    ("propagator.agreement", propagator_agreement),
    ("moments.closed-form", closed_form_moments),
    ("moments.k-constant", k_constant),
    ("moments.uncertainty-chain", uncertainty_chain),
    ("moments.ladder-vs-quadrature", ladder_vs_quadrature),
    ("distorted-time.rate", distorted_time_rate),
    ("transform.reduction-pipeline", reduction_pipeline),
];

/// Runs every check and logs one line per check. Returns whether all passed.
pub fn verify(cfg: &RunConfig, log: &mut Log) -> Result<bool> {
    let params = cfg.params()?;
    let grid = cfg.grid(&params)?;
    log.line(&format!(
        "verify seed={} hbar={} mass={} omega={} grid=[{}, {}]x{} n_max={}",
        cfg.seed(),
        params.hbar(),
        params.mass(),
        params.omega(),
        grid.x_min(),
        grid.x_max(),
        grid.len(),
        cfg.n_max()
    ));
    let cx: std::result::Result<Context, Error> = Context::new(cfg);
    let mut failed = 0;
    for (id, check) in CHECKS {
        let outcome = cx.as_ref().map_err(Clone::clone).and_then(check);
        let line = match &outcome {
            Ok(m) if m.passed() => format!("check {id}: PASS {:.3e} (< {:.0e})", m.worst, m.bound),
            Ok(m) => format!("check {id}: FAIL {:.3e} (< {:.0e})", m.worst, m.bound),
            Err(e) => format!("check {id}: FAIL {}: {e}", e.code()),
        };
        if !matches!(&outcome, Ok(m) if m.passed()) {
            failed += 1;
        }
        log.line(&line);
    }
    log.line(&format!("verify: {} of {} checks passed", CHECKS.len() - failed, CHECKS.len()));
    Ok(failed == 0)
}
