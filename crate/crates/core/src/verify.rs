//! Checks on the zeros that share no code with the Newton iteration.
//!
//! * [`curve_g`] and [`curve_h`] trace the curves `Im φ = 0` and `Re φ = 0`
//!   in polar coordinates; [`curve_intersection_zero`] intersects them.
//! * [`winding_count`] counts zeros with the argument principle.
//! * [`brute_force_zero`] scans a polar grid for the minimum of `|φ|`.

use std::f64::consts::PI;

use crate::branch::{phi, BranchIndex};
use crate::error::{Error, Result};
use crate::special_fn::{li2_principal, ln_nonzero, Complex, KAPPA};
use crate::zero_finder::{approx_zero_b0, has_zero, polar_rectangle};

/// One point on an implicit curve.
///
/// For `g` the parameter is `θ` and the value is `r`; for `h` it is the other
/// way round. `residual` is the defining equation re-evaluated at the point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub param: f64,
    pub value: f64,
    pub residual: f64,
}

/// Result of an argument-principle count.
#[derive(Debug, Clone, PartialEq)]
pub struct WindingReport {
    pub branch: BranchIndex,
    pub count: i64,
    /// Smallest absolute phase increment between consecutive contour points.
    pub min_phase_step: f64,
    /// Largest absolute phase increment; always below `π/2` in a report.
    pub max_phase_step: f64,
    pub contour_points: usize,
    pub radius: f64,
    pub eps: f64,
    pub delta: f64,
}

/// Default small-circle radius for [`winding_count`].
pub const DEFAULT_EPS: f64 = 1e-4;
/// Default slit offset for [`winding_count`].
pub const DEFAULT_DELTA: f64 = 5e-5;

fn im_equation(bb: f64, r: f64, theta: f64) -> f64 {
    li2_principal(Complex::from_polar(r, theta)).value.im + 2.0 * PI * bb * r.ln()
}

fn re_equation(a: f64, bb: f64, r: f64, theta: f64) -> f64 {
    li2_principal(Complex::from_polar(r, theta)).value.re + 4.0 * PI * PI * a - 2.0 * PI * bb * theta
}

/// Bisection for the root of an increasing function on `[lo, hi]`.
fn bisect_increasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let (mut flo, mut fhi) = (f(lo), f(hi));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm < 0.0 {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if flo.abs() <= fhi.abs() {
        lo
    } else {
        hi
    }
}

/// `r = g_B(θ)`, the unique root of `Im Li₂(re^{iθ}) + 2πB·log r` for `B ≥ 1`.
pub fn curve_g(b: i64, theta: f64) -> Result<CurveSample> {
    if b < 1 {
        return Err(Error::Domain(format!("curve_g needs B >= 1, got {b}")));
    }
    if !(theta != 0.0 && theta.abs() < PI) {
        return Err(Error::Domain(format!("curve_g needs 0 < |θ| < π, got {theta}")));
    }
    let bb = b as f64;
    let f = |r: f64| im_equation(bb, r, theta);
    let mut lo = (-KAPPA / (2.0 * PI * bb)).exp();
    let mut hi = (KAPPA / (PI * (2.0 * bb - 1.0))).exp();
    while f(lo) > 0.0 {
        lo *= 0.5;
    }
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    let r = bisect_increasing(f, lo, hi);
    Ok(CurveSample {
        param: theta,
        value: r,
        residual: f(r),
    })
}

/// `g′(θ) = r·log|1 − re^{iθ}|/(2πB − arg(1 − re^{iθ}))` at `r = g(θ)`.
pub fn curve_g_slope(b: i64, theta: f64) -> Result<f64> {
    let r = curve_g(b, theta)?.value;
    let w = ln_nonzero(Complex::new(1.0, 0.0) - Complex::from_polar(r, theta));
    Ok(r * w.re / (2.0 * PI * b as f64 - w.im))
}

/// `θ = h_{A,B}(r)`, the unique root of `Re Li₂(re^{iθ}) + 4π²A − 2πBθ` in `(−π, π)`.
pub fn curve_h(b: BranchIndex, r: f64) -> Result<CurveSample> {
    if b.b < 1 || !has_zero(b) {
        return Err(Error::UnsupportedBranch { a: b.a, b: b.b });
    }
    if !(r > 0.8 && r < 2.0) {
        return Err(Error::Domain(format!("curve_h needs r in (0.8, 2), got {r}")));
    }
    let (a, bb) = (b.a as f64, b.b as f64);
    let f = |t: f64| re_equation(a, bb, r, t);
    let (fl, fh) = (f(-PI), f(PI));
    if !(fl > 0.0 && fh < 0.0) {
        return Err(Error::Domain(format!("Re φ_{b} has no zero on |z| = {r}")));
    }
    let theta = bisect_increasing(|t| -f(t), -PI, PI);
    Ok(CurveSample {
        param: r,
        value: theta,
        residual: f(theta),
    })
}

/// `h′(r) = −(1/r)·log|1 − re^{iθ}|/(2πB − arg(1 − re^{iθ}))` at `θ = h(r)`.
pub fn curve_h_slope(b: BranchIndex, r: f64) -> Result<f64> {
    let theta = curve_h(b, r)?.value;
    let w = ln_nonzero(Complex::new(1.0, 0.0) - Complex::from_polar(r, theta));
    Ok(-w.re / (r * (2.0 * PI * b.b as f64 - w.im)))
}

/// Sweep cap for [`curve_intersection_zero`].
pub const MAX_SWEEPS: usize = 200;

/// The zero of `φ_{A,B}` as the crossing of `r = g(θ)` and `θ = h(r)`,
/// found by alternating between the two curves.
pub fn curve_intersection_zero(b: BranchIndex, tol: f64) -> Result<Complex> {
    if b.b < 0 {
        return curve_intersection_zero(b.conjugate(), tol).map(|z| z.conj());
    }
    let rect = polar_rectangle(b)?;
    let mut theta = 0.5 * (rect.theta1 + rect.theta2);
    let mut z = Complex::from_polar(1.0, theta);
    for _ in 0..MAX_SWEEPS {
        let g = curve_g(b.b, theta.min(PI.next_down()))?;
        let h = curve_h(b, g.value)?;
        theta = h.value;
        let next = Complex::from_polar(g.value, theta);
        let step = (next - z).norm();
        z = next;
        let im_res = im_equation(b.b as f64, g.value, theta).abs();
        if step <= tol && im_res <= tol && h.residual.abs() <= tol {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence {
        what: "alternating projection between g and h",
        iterations: MAX_SWEEPS,
    })
}

/// A piece of the counting contour, parameterised over `[0, 1]`.
#[derive(Debug, Clone, Copy)]
enum Piece {
    /// `c + ρe^{it}` for `t` from `from` to `to`.
    Arc { c: f64, rho: f64, from: f64, to: f64 },
    /// `x + iy` with `x − c` geometric from `d0` to `d1` (signed distances).
    Slit { c: f64, y: f64, d0: f64, d1: f64 },
}

impl Piece {
    fn at(&self, t: f64) -> Complex {
        match *self {
            Piece::Arc { c, rho, from, to } => {
                let a = from + (to - from) * t;
                Complex::new(c + rho * a.cos(), rho * a.sin())
            }
            Piece::Slit { c, y, d0, d1 } => {
                let m = d0.abs().ln() + (d1.abs().ln() - d0.abs().ln()) * t;
                Complex::new(c + m.exp().copysign(d0), y)
            }
        }
    }
}

fn contour(b: BranchIndex, t: f64, eps: f64, delta: f64) -> Vec<Piece> {
    let al = (delta / t).asin();
    let be = (delta / eps).asin();
    let far = (t * t - delta * delta).sqrt();
    let near = (eps * eps - delta * delta).sqrt();
    if b.b == 0 {
        return vec![
            Piece::Arc { c: 1.0, rho: t, from: al, to: 2.0 * PI - al },
            Piece::Slit { c: 1.0, y: -delta, d0: far, d1: near },
            Piece::Arc { c: 1.0, rho: eps, from: -be, to: -2.0 * PI + be },
            Piece::Slit { c: 1.0, y: delta, d0: near, d1: far },
        ];
    }
    vec![
        Piece::Arc { c: 1.0, rho: t, from: al, to: PI - al },
        // upper edge of (−∞, 0], measured from 0
        Piece::Slit { c: 0.0, y: delta, d0: -(far - 1.0), d1: -near },
        Piece::Arc { c: 0.0, rho: eps, from: PI - be, to: -PI + be },
        Piece::Slit { c: 0.0, y: -delta, d0: -near, d1: -(far - 1.0) },
        Piece::Arc { c: 1.0, rho: t, from: PI + al, to: 2.0 * PI - al },
        Piece::Slit { c: 1.0, y: -delta, d0: far, d1: near },
        Piece::Arc { c: 1.0, rho: eps, from: -be, to: -2.0 * PI + be },
        Piece::Slit { c: 1.0, y: delta, d0: near, d1: far },
    ]
}

/// Threshold on a single phase step before it is subdivided.
const REFINE_STEP: f64 = PI / 4.0;
const INITIAL_SAMPLES: usize = 256;
const MAX_DEPTH: u32 = 40;

struct Tracker {
    b: BranchIndex,
    total: f64,
    min_step: f64,
    max_step: f64,
    points: usize,
}

impl Tracker {
    fn eval(&mut self, z: Complex) -> Result<Complex> {
        self.points += 1;
        let v = phi(self.b, z)?;
        if v.norm() == 0.0 || !v.is_finite() {
            return Err(Error::Inconclusive(format!(
                "φ_{} vanishes or overflows on the contour at {z}",
                self.b
            )));
        }
        Ok(v)
    }

    fn walk(&mut self, piece: &Piece, t0: f64, f0: Complex, t1: f64, f1: Complex, depth: u32) -> Result<()> {
        let step = (f1 / f0).arg();
        let wobble = (f1 - f0).norm() > 0.5 * f0.norm().min(f1.norm());
        if (step.abs() >= REFINE_STEP || wobble) && depth < MAX_DEPTH {
            let tm = 0.5 * (t0 + t1);
            let fm = self.eval(piece.at(tm))?;
            self.walk(piece, t0, f0, tm, fm, depth + 1)?;
            return self.walk(piece, tm, fm, t1, f1, depth + 1);
        }
        if step.abs() >= PI / 2.0 {
            return Err(Error::Inconclusive(format!(
                "phase step {step:.3} near {} on branch {} after maximum refinement",
                piece.at(t0),
                self.b
            )));
        }
        self.total += step;
        self.min_step = self.min_step.min(step.abs());
        self.max_step = self.max_step.max(step.abs());
        Ok(())
    }
}

/// Default outer radius: `4·max(2, |ρ| + 1)` with `ρ` the zero, or the
/// rectangle scale when the branch has none.
pub fn default_radius(b: BranchIndex) -> f64 {
    let rho = if b.b == 0 && b.a >= 1 {
        approx_zero_b0(b.a).map(|z| z.norm()).unwrap_or(1.0)
    } else {
        (KAPPA / PI).exp()
    };
    4.0 * (2.0f64).max(rho + 1.0)
}

/// Number of zeros of `φ_{A,B}` inside the cut plane, by the argument
/// principle.
///
/// The contour is the circle `|z − 1| = T` with the cut `[1, ∞)` (and
/// `(−∞, 0]` when `B ≠ 0`) removed by slits at height `±δ` and small circles
/// of radius `ε` about the branch points. Sampling is refined until every
/// phase step is below `π/4`; a step of `π/2` or more after maximal
/// refinement makes the count inconclusive.
pub fn winding_count(b: BranchIndex, t: f64, eps: f64, delta: f64) -> Result<WindingReport> {
    if !(eps > 0.0 && delta > 0.0 && delta < eps && eps <= 1e-3 && t > 2.0) {
        return Err(Error::Domain(format!(
            "winding contour needs 0 < δ < ε ≤ 1e-3 and T > 2, got T = {t}, ε = {eps}, δ = {delta}"
        )));
    }
    let mut tr = Tracker {
        b,
        total: 0.0,
        min_step: f64::INFINITY,
        max_step: 0.0,
        points: 0,
    };
    let pieces = contour(b, t, eps, delta);
    let first = tr.eval(pieces[0].at(0.0))?;
    let mut prev = first;
    for piece in &pieces {
        let start = tr.eval(piece.at(0.0))?;
        // join with the end of the previous piece
        let mut f0 = start;
        let join = (start / prev).arg();
        tr.total += join;
        tr.max_step = tr.max_step.max(join.abs());
        let n = INITIAL_SAMPLES;
        for i in 1..=n {
            let t1 = i as f64 / n as f64;
            let f1 = tr.eval(piece.at(t1))?;
            tr.walk(piece, (i - 1) as f64 / n as f64, f0, t1, f1, 0)?;
            f0 = f1;
        }
        prev = f0;
    }
    tr.total += (first / prev).arg();
    let turns = tr.total / (2.0 * PI);
    let count = turns.round();
    if (turns - count).abs() > 1e-6 {
        return Err(Error::Inconclusive(format!(
            "total phase {turns} turns is not an integer on branch {b}"
        )));
    }
    Ok(WindingReport {
        branch: b,
        count: count as i64,
        min_phase_step: tr.min_step,
        max_phase_step: tr.max_step,
        contour_points: tr.points,
        radius: t,
        eps,
        delta,
    })
}

/// [`winding_count`] with the default contour.
pub fn winding_count_default(b: BranchIndex) -> Result<WindingReport> {
    winding_count(b, default_radius(b), DEFAULT_EPS, DEFAULT_DELTA)
}

/// The count predicted by the existence theorem.
pub fn expected_count(b: BranchIndex) -> i64 {
    i64::from(has_zero(b))
}

/// Minimum of `|φ_{A,B}|` over a polar box, located on an `n × n` grid and
/// polished by repeated quadratic fits of `|φ|²`.
///
/// A box with `theta_lo == theta_hi` is scanned along the ray only. A grid
/// minimum on the boundary of the box is reported as inconclusive.
pub fn brute_force_zero(
    b: BranchIndex,
    r_lo: f64,
    r_hi: f64,
    theta_lo: f64,
    theta_hi: f64,
    n: usize,
) -> Result<Complex> {
    if n < 16 || !(0.0 <= r_lo && r_lo < r_hi) || !(theta_lo <= theta_hi) {
        return Err(Error::Domain(format!(
            "brute_force_zero needs n >= 16 and a valid polar box, got n = {n}, r = [{r_lo}, {r_hi}], θ = [{theta_lo}, {theta_hi}]"
        )));
    }
    let sq = |z: Complex| phi(b, z).map(|v| v.norm_sqr()).unwrap_or(f64::INFINITY);
    let dr = (r_hi - r_lo) / (n - 1) as f64;
    if theta_lo == theta_hi {
        let at = |r: f64| Complex::from_polar(r, theta_lo);
        let (i, _) = (0..n)
            .map(|i| sq(at(r_lo + dr * i as f64)))
            .enumerate()
            .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
        if i == 0 || i == n - 1 {
            return Err(Error::Inconclusive("minimum of |φ| on the boundary of the scan".into()));
        }
        let mut r = r_lo + dr * i as f64;
        let mut h = dr;
        for _ in 0..200 {
            let (fm, f0, fp) = (sq(at(r - h)), sq(at(r)), sq(at(r + h)));
            let curv = fm - 2.0 * f0 + fp;
            let step = if curv > 0.0 { -0.5 * h * (fp - fm) / curv } else { 0.0 };
            r += step.clamp(-h, h);
            h = (0.25 * h).max(2.0 * step.abs());
            if h <= 4.0 * f64::EPSILON * r.abs() {
                break;
            }
        }
        return Ok(at(r));
    }
    let dt = (theta_hi - theta_lo) / (n - 1) as f64;
    let mut best = (0, 0, f64::INFINITY);
    for i in 0..n {
        for j in 0..n {
            let v = sq(Complex::from_polar(r_lo + dr * i as f64, theta_lo + dt * j as f64));
            if v < best.2 {
                best = (i, j, v);
            }
        }
    }
    let (i, j, _) = best;
    if i == 0 || j == 0 || i == n - 1 || j == n - 1 {
        return Err(Error::Inconclusive("minimum of |φ| on the boundary of the grid".into()));
    }
    let mut z = Complex::from_polar(r_lo + dr * i as f64, theta_lo + dt * j as f64);
    let mut h = dr.max(z.norm() * dt);
    for _ in 0..200 {
        let f = |dx: f64, dy: f64| sq(z + Complex::new(dx * h, dy * h));
        let f00 = f(0.0, 0.0);
        let (fx, fxm, fy, fym) = (f(1.0, 0.0), f(-1.0, 0.0), f(0.0, 1.0), f(0.0, -1.0));
        let (fpp, fpm, fmp, fmm) = (f(1.0, 1.0), f(1.0, -1.0), f(-1.0, 1.0), f(-1.0, -1.0));
        let gx = 0.5 * (fx - fxm);
        let gy = 0.5 * (fy - fym);
        let hxx = fx - 2.0 * f00 + fxm;
        let hyy = fy - 2.0 * f00 + fym;
        let hxy = 0.25 * (fpp - fpm - fmp + fmm);
        let det = hxx * hyy - hxy * hxy;
        let (sx, sy) = if det > 0.0 && hxx > 0.0 {
            (-(hyy * gx - hxy * gy) / det, -(hxx * gy - hxy * gx) / det)
        } else {
            (-gx.signum(), -gy.signum())
        };
        let (sx, sy) = (sx.clamp(-1.0, 1.0), sy.clamp(-1.0, 1.0));
        let step = Complex::new(sx * h, sy * h);
        z += step;
        h = (0.25 * h).max(2.0 * step.norm());
        if h <= 4.0 * f64::EPSILON * z.norm() {
            break;
        }
    }
    Ok(z)
}
