//! File formats: wave and coefficient JSON documents, stable-form JSON and the
//! moment time-series CSV. Floats are written with 17 significant digits.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::basis::SpectralCoeffs;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::moments::MomentConstants;
use crate::params::OscillatorParams;
use crate::transform::StableForm;
use crate::wave::{Complex, SampledWave};

/// f64 serialized in scientific notation with 17 significant digits.
#[derive(Debug, Clone, Copy)]
struct Exact(f64);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom(format!("non-finite value {}", self.0)));
        }
        let text = format!("{:.16e}", self.0);
        RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

#[derive(Serialize)]
struct ParamsOut {
    hbar: Exact,
    mass: Exact,
    omega: Exact,
}

#[derive(Deserialize)]
struct ParamsIn {
    hbar: f64,
    mass: f64,
    omega: f64,
}

#[derive(Serialize)]
struct GridOut {
    x_min: Exact,
    x_max: Exact,
    n_points: usize,
}

#[derive(Deserialize)]
struct GridIn {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

#[derive(Serialize)]
struct WaveOut {
    params: ParamsOut,
    grid: GridOut,
    values: Vec<[Exact; 2]>,
}

#[derive(Deserialize)]
struct WaveIn {
    params: ParamsIn,
    grid: GridIn,
    values: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct CoeffsOut {
    params: ParamsOut,
    n_max: usize,
    c: Vec<[Exact; 2]>,
    residual: Exact,
}

#[derive(Deserialize)]
struct CoeffsIn {
    params: ParamsIn,
    n_max: usize,
    c: Vec<[f64; 2]>,
    residual: f64,
}

#[derive(Serialize)]
struct ConstantsOut {
    eps: Exact,
    amp: Exact,
    #[serde(rename = "K")]
    k: Exact,
    t0: Exact,
}

#[derive(Deserialize)]
struct ConstantsIn {
    eps: f64,
    amp: f64,
    #[serde(rename = "K")]
    k: f64,
    t0: f64,
}

#[derive(Serialize)]
struct StableOut {
    s: Exact,
    b2: Option<Exact>,
    constants: ConstantsOut,
    wave: WaveOut,
}

#[derive(Deserialize)]
struct StableIn {
    s: f64,
    b2: Option<f64>,
    constants: ConstantsIn,
    wave: WaveIn,
}

fn params_out(p: &OscillatorParams) -> ParamsOut {
    ParamsOut { hbar: Exact(p.hbar()), mass: Exact(p.mass()), omega: Exact(p.omega()) }
}

fn params_in(p: ParamsIn) -> Result<OscillatorParams> {
    OscillatorParams::new(p.hbar, p.mass, p.omega)
}

fn pairs_out(v: &[Complex]) -> Vec<[Exact; 2]> {
    v.iter().map(|z| [Exact(z.re), Exact(z.im)]).collect()
}

fn pairs_in(v: Vec<[f64; 2]>) -> Vec<Complex> {
    v.into_iter().map(|[re, im]| Complex::new(re, im)).collect()
}

fn wave_out(w: &SampledWave) -> WaveOut {
    let g = w.grid();
    WaveOut {
        params: params_out(w.params()),
        grid: GridOut { x_min: Exact(g.x_min()), x_max: Exact(g.x_max()), n_points: g.len() },
        values: pairs_out(w.values()),
    }
}

fn wave_in(w: WaveIn) -> Result<SampledWave> {
    let grid = Grid::new(w.grid.x_min, w.grid.x_max, w.grid.n_points)?;
    SampledWave::new(params_in(w.params)?, grid, pairs_in(w.values))
}

fn to_string<T: Serialize>(doc: &T) -> Result<String> {
    Ok(serde_json::to_string(doc)?)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    f.write_all(text.as_bytes())?;
    f.write_all(b"\n")?;
    f.flush()?;
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn wave_to_json(w: &SampledWave) -> Result<String> {
    to_string(&wave_out(w))
}

pub fn wave_from_json(text: &str) -> Result<SampledWave> {
    wave_in(parse(text, "wave file")?)
}

pub fn write_wave(path: &Path, w: &SampledWave) -> Result<()> {
    write_text(path, &wave_to_json(w)?)
}

pub fn read_wave(path: &Path) -> Result<SampledWave> {
    wave_from_json(&read_text(path)?)
}

pub fn coeffs_to_json(c: &SpectralCoeffs) -> Result<String> {
    to_string(&CoeffsOut {
        params: params_out(c.params()),
        n_max: c.n_max(),
        c: pairs_out(c.coeffs()),
        residual: Exact(c.residual()),
    })
}

pub fn coeffs_from_json(text: &str) -> Result<SpectralCoeffs> {
    let doc: CoeffsIn = parse(text, "coefficient file")?;
    if doc.c.len() != doc.n_max + 1 {
        return Err(Error::Parse(format!("n_max {} but {} coefficients", doc.n_max, doc.c.len())));
    }
    SpectralCoeffs::with_residual(params_in(doc.params)?, pairs_in(doc.c), doc.residual)
}

pub fn write_coeffs(path: &Path, c: &SpectralCoeffs) -> Result<()> {
    write_text(path, &coeffs_to_json(c)?)
}

pub fn read_coeffs(path: &Path) -> Result<SpectralCoeffs> {
    coeffs_from_json(&read_text(path)?)
}

pub fn stable_to_json(sf: &StableForm) -> Result<String> {
    let c = &sf.constants;
    to_string(&StableOut {
        s: Exact(sf.s),
        b2: sf.b2.map(Exact),
        constants: ConstantsOut { eps: Exact(c.eps), amp: Exact(c.amp), k: Exact(c.k), t0: Exact(c.t0) },
        wave: wave_out(&sf.wave),
    })
}

pub fn stable_from_json(text: &str) -> Result<StableForm> {
    let doc: StableIn = parse(text, "stable-form file")?;
    let c = doc.constants;
    Ok(StableForm {
        wave: wave_in(doc.wave)?,
        s: doc.s,
        b2: doc.b2,
        constants: MomentConstants { eps: c.eps, amp: c.amp, k: c.k, t0: c.t0 },
    })
}

pub fn write_stable(path: &Path, sf: &StableForm) -> Result<()> {
    write_text(path, &stable_to_json(sf)?)
}

pub fn read_stable(path: &Path) -> Result<StableForm> {
    stable_from_json(&read_text(path)?)
}

/// One row of the moment time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub t: f64,
    pub x_mean: f64,
    pub p_mean: f64,
    pub dx2: f64,
    pub dp2: f64,
    pub dxp: f64,
    pub k: f64,
    pub eps: f64,
    pub e_c: f64,
    pub e_q: f64,
}

pub const MOMENT_COLUMNS: [&str; 10] = ["t", "x_mean", "p_mean", "dx2", "dp2", "dxp", "K", "eps", "E_c", "E_q"];

impl MomentRow {
    fn fields(&self) -> [f64; 10] {
        [self.t, self.x_mean, self.p_mean, self.dx2, self.dp2, self.dxp, self.k, self.eps, self.e_c, self.e_q]
    }
}

pub fn write_moments_csv<W: Write>(out: W, rows: &[MomentRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(MOMENT_COLUMNS)?;
    for r in rows {
        w.write_record(r.fields().iter().map(|v| format!("{v:.15e}")))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_moments(path: &Path, rows: &[MomentRow]) -> Result<()> {
    write_moments_csv(BufWriter::new(File::create(path)?), rows)
}

pub fn read_moments(path: &Path) -> Result<Vec<MomentRow>> {
    let mut r = csv::Reader::from_reader(BufReader::new(File::open(path)?));
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != MOMENT_COLUMNS {
        return Err(Error::Parse(format!("unexpected moment columns {header:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            let v: Vec<f64> = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                .collect::<Result<_>>()?;
            Ok(MomentRow {
                t: v[0],
                x_mean: v[1],
                p_mean: v[2],
                dx2: v[3],
                dp2: v[4],
                dxp: v[5],
                k: v[6],
                eps: v[7],
                e_c: v[8],
                e_q: v[9],
            })
        })
        .collect()
}
