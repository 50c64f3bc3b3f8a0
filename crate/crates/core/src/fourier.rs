//! Dimensionless Fourier transform `Φ(ρ) = (2π)^{-1/2} ∫ e^{-iρξ} Ψ(ξ) dξ`
//! with `ξ = x/α`, `ρ = αp/ħ`, re-sampled as a function of `x` via `ρ = x/α`.
//!
//! Realized as a direct trapezoid quadrature, `O(N²)` per transform.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::basis::EigenbasisTable;
use crate::error::{Error, Result};
use crate::wave::{Complex, SampledWave};

/// Edge magnitude, relative to the peak, above which a transform is refused.
pub const EDGE_DECAY_TOL: f64 = 1e-12;

pub(crate) fn check_edge_decay(f: &SampledWave, tol: f64) -> Result<()> {
    let v = f.values();
    let peak = f.max_abs();
    let edge = v[0].norm().max(v[v.len() - 1].norm());
    if peak > 0.0 && edge > tol * peak.max(1.0) {
        return Err(Error::Aliasing(format!("edge amplitude {edge:.3e} does not decay (peak {peak:.3e})")));
    }
    Ok(())
}

/// Fourier transform in oscillator units. Output lives on the input grid.
pub fn fourier_dimensionless(f: &SampledWave) -> Result<SampledWave> {
    let grid = *f.grid();
    grid.require_symmetric()?;
    check_edge_decay(f, EDGE_DECAY_TOL)?;
    let alpha = f.params().alpha();
    let xs = grid.points();
    let weighted: Vec<(f64, Complex)> =
        f.values().iter().enumerate().map(|(k, v)| (xs[k] / alpha, v * grid.weight(k) / alpha)).collect();
    let pref = 1.0 / (2.0 * PI).sqrt();
    let values: Vec<Complex> = xs
        .par_iter()
        .map(|&x| {
            let rho = x / alpha;
            let s: Complex = weighted
                .iter()
                .map(|&(xi, w)| {
                    let (sin, cos) = (rho * xi).sin_cos();
                    w * Complex::new(cos, -sin)
                })
                .sum();
            s * pref
        })
        .collect();
    f.with_values(values)
}

/// `max_k |F(ψ_n)(x_k) - (-i)^n ψ_n(x_k)|`.
pub fn verify_eigen_ft(basis: &EigenbasisTable, n: usize) -> Result<f64> {
    let psi = basis.eigenstate(n)?;
    let ft = fourier_dimensionless(&psi)?;
    let phase = Complex::new(0.0, -1.0).powu(n as u32);
    ft.max_abs_diff(&psi.scaled(phase))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_basis;
    use crate::grid::make_grid;
    use crate::params::OscillatorParams;

    fn table() -> EigenbasisTable {
        build_basis(&OscillatorParams::default(), &make_grid(24.0, 1024).unwrap(), 30).unwrap()
    }

    #[test]
    fn ground_state_is_invariant() {
        assert!(verify_eigen_ft(&table(), 0).unwrap() < 1e-10);
    }

    #[test]
    fn first_excited_picks_up_minus_i() {
        let t = table();
        let psi1 = t.eigenstate(1).unwrap();
        let ft = fourier_dimensionless(&psi1).unwrap();
        assert!(ft.max_abs_diff(&psi1.scaled(Complex::new(0.0, -1.0))).unwrap() < 1e-10);
    }

    #[test]
    fn mode_twenty() {
        assert!(verify_eigen_ft(&table(), 20).unwrap() < 1e-8);
    }

    #[test]
    fn non_decaying_input_is_refused() {
        let g = make_grid(5.0, 101).unwrap();
        let flat = SampledWave::from_fn(OscillatorParams::default(), g, |_| Complex::new(1.0, 0.0));
        assert_eq!(fourier_dimensionless(&flat).unwrap_err().code(), "aliasing-error");
    }

    #[test]
    fn works_with_non_unit_alpha() {
        let p = OscillatorParams::new(1.0, 4.0, 1.0).unwrap();
        let g = make_grid(12.0, 1024).unwrap();
        let t = build_basis(&p, &g, 20).unwrap();
        for n in [0, 1, 5, 20] {
            assert!(verify_eigen_ft(&t, n).unwrap() < 1e-10);
        }
    }
}
