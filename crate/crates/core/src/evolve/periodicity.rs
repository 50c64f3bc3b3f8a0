use std::f64::consts::FRAC_PI_4;

use crate::error::Result;
use crate::fourier::fourier_dimensionless;
use crate::wave::{Complex, SampledWave};

/// `ψ(x, t + T/2) = -i ψ(-x, t)`.
pub fn half_period_map(f: &SampledWave) -> Result<SampledWave> {
    Ok(f.reflected()?.scaled(Complex::new(0.0, -1.0)))
}

/// `ψ(x, t + T/4) = e^{-iπ/4} Φ(x/α)` where `Φ` is the dimensionless
/// Fourier transform of `ψ(·, t)`.
pub fn quarter_period_map(f: &SampledWave) -> Result<SampledWave> {
    Ok(fourier_dimensionless(f)?.scaled(Complex::from_polar(1.0, -FRAC_PI_4)))
}

/// `ψ(x, T/2 - t) = -i ψ*(-x, t)`. Valid only when the state was real at
/// `t = 0`; the caller is responsible for that.
pub fn reflect_real_initial(f_t: &SampledWave) -> Result<SampledWave> {
    Ok(f_t.reflected()?.conj().scaled(Complex::new(0.0, -1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_basis;
    use crate::grid::{make_grid, Grid};
    use crate::params::OscillatorParams;

    #[test]
    fn parity_phases() {
        let t = build_basis(&OscillatorParams::default(), &make_grid(24.0, 1024).unwrap(), 3).unwrap();
        let g0 = t.eigenstate(0).unwrap();
        let g1 = t.eigenstate(1).unwrap();
        assert!(half_period_map(&g0).unwrap().max_abs_diff(&g0.scaled(Complex::new(0.0, -1.0))).unwrap() < 1e-15);
        assert!(half_period_map(&g1).unwrap().max_abs_diff(&g1.scaled(Complex::new(0.0, 1.0))).unwrap() < 1e-15);
        let q = quarter_period_map(&g0).unwrap();
        assert!(q.max_abs_diff(&g0.scaled(Complex::from_polar(1.0, -FRAC_PI_4))).unwrap() < 1e-10);
    }

    #[test]
    fn midpoint_reflection_is_self_consistent() {
        let t = build_basis(&OscillatorParams::default(), &make_grid(24.0, 1024).unwrap(), 0).unwrap();
        let at_quarter = t.eigenstate(0).unwrap().scaled(Complex::from_polar(1.0, -FRAC_PI_4));
        let r = reflect_real_initial(&at_quarter).unwrap();
        assert!(r.max_abs_diff(&at_quarter).unwrap() < 1e-15);
    }

    #[test]
    fn asymmetric_grid_refused() {
        let g = Grid::new(-3.0, 4.0, 11).unwrap();
        let w = SampledWave::from_fn(OscillatorParams::default(), g, |x| Complex::new((-x * x).exp(), 0.0));
        assert_eq!(half_period_map(&w).unwrap_err().code(), "grid-symmetry-error");
        assert_eq!(reflect_real_initial(&w).unwrap_err().code(), "grid-symmetry-error");
    }
}
