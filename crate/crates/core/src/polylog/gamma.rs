//! Complex log-gamma by Stirling's series after an upward shift, with the
//! reflection formula for the left half-plane.

use std::f64::consts::PI;

use crate::special_fn::{ln_nonzero, Complex};

/// `B_{2k}/(2k(2k−1))` for k = 1..=12.
const STIRLING: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
];

const SHIFT_TO: f64 = 18.0;

/// `log Γ(z)` up to a multiple of `2πi`; only `exp` of it is meaningful.
pub fn ln_gamma(z: Complex) -> Complex {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π/sin(πz)
        return Complex::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(1.0 - z);
    }
    let mut shift = Complex::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < SHIFT_TO {
        shift += ln_nonzero(w);
        w += 1.0;
    }
    stirling(w) - shift
}

fn stirling(z: Complex) -> Complex {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = Complex::new(0.0, 0.0);
    for c in STIRLING {
        series += term * c;
        term *= inv2;
    }
    (z - 0.5) * ln_nonzero(z) - z + 0.5 * (2.0 * PI).ln() + series
}

/// `log sin(πz)` without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex) -> Complex {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = e^{−iπz}(e^{2πiz} − 1)/(2i), with |e^{2πiz}| ≤ 1
    let i = Complex::new(0.0, 1.0);
    let q = (2.0 * PI * i * z).exp();
    -i * PI * z + ln_nonzero(q - 1.0) - ln_nonzero(2.0 * i)
}

/// `Γ(z)`.
pub fn gamma(z: Complex) -> Complex {
    ln_gamma(z).exp()
}

/// `1/Γ(z)`, zero at the poles.
pub fn rgamma(z: Complex) -> Complex {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Complex::new(0.0, 0.0);
    }
    (-ln_gamma(z)).exp()
}
