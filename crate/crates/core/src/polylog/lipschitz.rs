//! The Lipschitz series
//! `F(w) = Σ_{k∈ℤ} ((2k−1)i − w)^{s−1}`, with
//! `Li_s(−e^{πw}) = Γ(1−s)/π^{1−s} · F(w)` for `Re s < 0`.
//!
//! `F` has period `2i` in `w`; arguments are reduced to `Im w ∈ (−1, 1]`
//! before summing, so no term touches the cut of the principal power.

use std::f64::consts::PI;

use super::gamma::ln_gamma;
use crate::error::{Error, Result};
use crate::special_fn::{ln_nonzero, Complex, EvalResult};

/// Relative tail target for the default truncation.
pub const TAIL_TARGET: f64 = 1e-12;
/// Upper limit on the default truncation.
pub const KMAX_CAP: usize = 200_000;

/// Reduce `Im w` into `(−1, 1]`.
pub fn reduce_w(w: Complex) -> Complex {
    let mut im = w.im - 2.0 * ((w.im + 1.0) / 2.0).floor();
    if im <= -1.0 {
        im += 2.0;
    }
    Complex::new(w.re, im)
}

fn check(s: Complex) -> Result<()> {
    if !(s.re < 0.0) {
        return Err(Error::Domain(format!("the Lipschitz series needs Re s < 0, got s = {s}")));
    }
    Ok(())
}

fn zeta(k: i64, w: Complex) -> Complex {
    Complex::new(-w.re, (2 * k - 1) as f64 - w.im)
}

/// Bound on the omitted terms `k > kmax` and `k ≤ −kmax`.
///
/// For `k > K`, `|ζ_k| ≥ 2k − 1 − Im w` and `|arg ζ_k − π/2| ≤ |Re w|/(2K + 1 − Im w)`,
/// so the sum of `|ζ_k|^{σ−1}e^{−τ arg ζ_k}` is at most
/// `e^{−τπ/2 + |τ||Re w|/(2K+1−Im w)}·(2K − 1 − Im w)^σ/(2|σ|)` by comparison
/// with an integral. The negative side is the mirror image.
pub fn tail_bound(s: Complex, w: Complex, kmax: usize) -> f64 {
    let (sigma, tau) = (s.re, s.im);
    let k = kmax as f64;
    let side = |y: f64, turn: f64| {
        let gap = 2.0 * k - 1.0 - y;
        if gap <= 0.0 {
            return f64::INFINITY;
        }
        let tilt = tau.abs() * w.re.abs() / (2.0 * k + 1.0 - y);
        (turn + tilt + sigma * gap.ln()).exp() / (2.0 * sigma.abs())
    };
    side(w.im, -tau * PI / 2.0) + side(-w.im, tau * PI / 2.0)
}

fn term_norm_ln(s: Complex, w: Complex, k: i64) -> f64 {
    let l = ln_nonzero(zeta(k, w));
    (s.re - 1.0) * l.re - s.im * l.im
}

/// Smallest truncation with tail at most [`TAIL_TARGET`] times the largest kept term.
pub fn default_kmax(s: Complex, w: Complex) -> usize {
    let w = reduce_w(w);
    let mut biggest = term_norm_ln(s, w, 0).max(term_norm_ln(s, w, 1));
    let mut k = 2usize;
    loop {
        biggest = biggest
            .max(term_norm_ln(s, w, k as i64))
            .max(term_norm_ln(s, w, 1 - k as i64));
        if tail_bound(s, w, k).ln() <= TAIL_TARGET.ln() + biggest || k >= KMAX_CAP {
            return k;
        }
        k += 1;
    }
}

/// Compensated complex sum.
#[derive(Default)]
struct Neumaier {
    sum: Complex,
    comp: Complex,
    l1: f64,
}

impl Neumaier {
    fn add(&mut self, x: Complex) {
        let t = self.sum + x;
        let fix = |s: f64, x: f64, t: f64| if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        self.comp += Complex::new(fix(self.sum.re, x.re, t.re), fix(self.sum.im, x.im, t.im));
        self.sum = t;
        self.l1 += x.norm();
    }

    fn value(&self) -> Complex {
        self.sum + self.comp
    }
}

/// `F(w)` and `F′(w)` together, summed over `1 − K ≤ k ≤ K`.
pub fn lipschitz_with_derivative(s: Complex, w: Complex, kmax: Option<usize>) -> Result<(EvalResult, Complex)> {
    check(s)?;
    let w = reduce_w(w);
    let kmax = kmax.unwrap_or_else(|| default_kmax(s, w)).max(2);
    let (mut f, mut df) = (Neumaier::default(), Neumaier::default());
    let sm1 = s - 1.0;
    for k in (1 - kmax as i64)..=(kmax as i64) {
        let z = zeta(k, w);
        let t = (sm1 * ln_nonzero(z)).exp();
        f.add(t);
        df.add(t / z);
    }
    let err = tail_bound(s, w, kmax) + 4.0 * f64::EPSILON * f.l1;
    Ok((EvalResult::new(f.value(), err), -sm1 * df.value()))
}

/// `F(w)` truncated at `|k| ≤ kmax` (default from the tail bound), with the
/// tail bound plus summation rounding as the error estimate.
pub fn li_s_lipschitz(s: Complex, w: Complex, kmax: Option<usize>) -> Result<EvalResult> {
    lipschitz_with_derivative(s, w, kmax).map(|(f, _)| f)
}

/// `Γ(1−s)/π^{1−s}`, the factor turning `F(w)` into `Li_s(−e^{πw})`.
pub fn lipschitz_prefactor(s: Complex) -> Complex {
    let one_minus = 1.0 - s;
    (ln_gamma(one_minus) - one_minus * PI.ln()).exp()
}
