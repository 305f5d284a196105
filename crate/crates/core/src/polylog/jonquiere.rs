//! `Li_s(z) = z/Γ(s) · ∫₀^∞ t^{s−1}/(eᵗ − z) dt` for `Re s > 0`, `z ∉ [1, ∞)`.
//!
//! For large `|Im s|` the integrand oscillates on the real axis and the
//! integral is exponentially small compared with it. The path is therefore
//! turned onto the ray `arg t = φ` with `φ = arg(s − 1)` (clamped to
//! `|φ| ≤ 1.4`), where `t^{s−1}` stops oscillating. Poles `log z + 2πik`
//! swept over by the rotation contribute residues `2πi·t_k^{s−1}/z`.

use std::f64::consts::PI;

use super::gamma::ln_gamma;
use super::quadrature::{exp_sinh, tanh_sinh};
use crate::error::{Error, Result};
use crate::special_fn::{ln_nonzero, Complex, EvalResult};

const MAX_RAY_ANGLE: f64 = 1.4;
const REL_TOL: f64 = 1e-15;

fn ray_angle(s: Complex) -> f64 {
    let sm1 = s - 1.0;
    if sm1.re <= 0.0 {
        0.0
    } else {
        sm1.im.atan2(sm1.re).clamp(-MAX_RAY_ANGLE, MAX_RAY_ANGLE)
    }
}

/// `∫₀^∞ t^{s−1}/(eᵗ − z) dt` and its error estimate.
pub fn jonquiere_integral(s: Complex, z: Complex) -> Result<EvalResult> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("the Jonquière integral needs Re s > 0, got s = {s}")));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Domain(format!("Li_s is cut along [1, ∞), got z = {z}")));
    }
    let phi = ray_angle(s);
    let dir = Complex::from_polar(1.0, phi);
    let sm1 = s - 1.0;
    // t^{s−1}/(eᵗ − z) = exp((s−1)log t − t)/(1 − z e^{−t}), safe for large t
    let integrand = |r: f64| {
        if r == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        let t = dir * r;
        let num = sm1 * Complex::new(r.ln(), phi) - t;
        let den = 1.0 - z * (-t).exp();
        num.exp() / den * dir
    };
    let split = 1f64.max(z.norm().ln() + 5.0);
    let head = tanh_sinh(integrand, 0.0, split, REL_TOL);
    let tail = exp_sinh(integrand, split, REL_TOL);
    let mut value = head.value + tail.value;
    let mut err = head.abs_err + tail.abs_err;
    if !(head.converged && tail.converged) {
        err = err.max(value.norm());
    }
    let lz = ln_nonzero(z);
    if phi != 0.0 && lz.re > 0.0 {
        // poles with arg strictly between 0 and φ: Im t_k between 0 and Re t_k·tan φ
        let reach = lz.re * phi.tan();
        let (lo, hi) = (reach.min(0.0), reach.max(0.0));
        let k_first = ((lo - lz.im) / (2.0 * PI)).floor() as i64;
        let k_last = ((hi - lz.im) / (2.0 * PI)).ceil() as i64;
        let sign = phi.signum();
        for k in k_first..=k_last {
            let t = lz + Complex::new(0.0, 2.0 * PI * k as f64);
            if !(t.im > lo && t.im < hi) {
                continue;
            }
            let res = (sm1 * ln_nonzero(t)).exp() / z;
            value += Complex::new(0.0, 2.0 * PI * sign) * res;
            err += 4.0 * f64::EPSILON * res.norm() * (1.0 + sm1.norm() * t.norm());
        }
    }
    Ok(EvalResult::new(value, err))
}

/// `Li_s(z)` from the Jonquière integral.
pub fn li_s_jonquiere(s: Complex, z: Complex) -> Result<EvalResult> {
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(EvalResult::new(Complex::new(0.0, 0.0), 0.0));
    }
    let integral = jonquiere_integral(s, z)?;
    let lg = ln_gamma(s);
    let scale = z * (-lg).exp();
    let value = scale * integral.value;
    // rounding in log Γ is absolute, so relative in Γ
    let err = scale.norm() * integral.abs_err_estimate + 4.0 * f64::EPSILON * (1.0 + lg.norm()) * value.norm();
    Ok(EvalResult::new(value, err))
}
