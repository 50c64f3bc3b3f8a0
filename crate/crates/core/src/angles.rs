use std::f64::consts::PI;

/// `arctan(ratio · tan u)` continued to a continuous, monotone function of
/// `u` (for `ratio > 0`): agrees with `u` at every multiple of `π/2`.
pub(crate) fn continued_arctan(ratio: f64, u: f64) -> f64 {
    let k = (u / PI).round();
    let v = u - k * PI;
    let (s, c) = v.sin_cos();
    k * PI + (ratio * s).atan2(c)
}
