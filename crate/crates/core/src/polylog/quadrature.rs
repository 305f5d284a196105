//! Double-exponential quadrature for complex-valued integrands on `[a, b]`
//! (tanh-sinh) and `[a, ∞)` (exp-sinh), refined by halving the step.

use std::f64::consts::FRAC_PI_2;

use crate::special_fn::Complex;

/// A quadrature value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex,
    pub abs_err: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const T_MAX: f64 = 4.0;
const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;

/// Shared refinement loop over a node map `t ↦ (x, dx/dt)`.
fn refine(f: &dyn Fn(f64) -> Complex, node: &dyn Fn(f64) -> (f64, f64), rel_tol: f64) -> Quadrature {
    let mut sum = Complex::new(0.0, 0.0);
    let mut l1 = 0.0;
    let mut evaluations = 0;
    let mut add = |t: f64, sum: &mut Complex, l1: &mut f64| {
        let (x, w) = node(t);
        if w == 0.0 || !w.is_finite() {
            return;
        }
        let v = f(x) * w;
        evaluations += 1;
        if v.is_finite() {
            *sum += v;
            *l1 += v.norm();
        }
    };
    let h0 = 0.5;
    let n0 = (T_MAX / h0) as i64;
    for k in -n0..=n0 {
        add(k as f64 * h0, &mut sum, &mut l1);
    }
    let mut h = h0;
    let mut prev = sum * h;
    let mut prev_diff = f64::INFINITY;
    let mut abs_err = f64::INFINITY;
    let mut converged = false;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let n = (T_MAX / h) as i64;
        let mut k = -n + if n % 2 == 0 { 1 } else { 0 };
        while k <= n {
            add(k as f64 * h, &mut sum, &mut l1);
            k += 2;
        }
        let cur = sum * h;
        let diff = (cur - prev).norm();
        let floor = 8.0 * f64::EPSILON * l1 * h;
        abs_err = diff.min(diff * diff / prev_diff) + floor;
        prev = cur;
        if level >= MIN_LEVEL && diff <= (rel_tol * cur.norm()).max(floor) {
            converged = true;
            break;
        }
        prev_diff = diff;
    }
    Quadrature {
        value: prev,
        abs_err,
        evaluations,
        converged,
    }
}

/// `∫_a^b f(x) dx`; nodes approach each endpoint without rounding onto it.
pub fn tanh_sinh(f: impl Fn(f64) -> Complex, a: f64, b: f64, rel_tol: f64) -> Quadrature {
    let len = b - a;
    let node = move |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance to the nearer endpoint is len·e/(1+e)
        let near = len * e / (1.0 + e);
        let x = if u <= 0.0 { a + near } else { b - near };
        let cosh_u = 0.5 * (u.abs().exp() + (-u.abs()).exp());
        let w = 0.5 * len * FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        (x, w)
    };
    refine(&f, &node, rel_tol)
}

/// `∫_a^∞ f(x) dx` for integrands decaying at least exponentially.
pub fn exp_sinh(f: impl Fn(f64) -> Complex, a: f64, rel_tol: f64) -> Quadrature {
    let node = move |t: f64| {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        (a + e, FRAC_PI_2 * t.cosh() * e)
    };
    refine(&f, &node, rel_tol)
}
