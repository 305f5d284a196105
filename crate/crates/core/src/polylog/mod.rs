//! Zeros of `Li_s` beyond the dilogarithm.
//!
//! * [`eulerian`]: `Li_{−m}` is rational with the Eulerian polynomial `A_m`
//!   as numerator, so its zeros are exact-coefficient polynomial roots.
//! * [`lipschitz`]: for `Re s < 0`, `Li_s(−e^{πw})` is a non-vanishing
//!   multiple of a rapidly convergent lattice sum `F(w)`.
//! * [`jonquiere`]: for `Re s > 0`, an integral representation.
//!
//! [`find_polylog_zeros`] seeds Newton's method with the spiral
//! approximation [`spiral_zero_approx`].

pub mod eulerian;
pub mod gamma;
pub mod jonquiere;
pub mod lipschitz;
pub mod quadrature;

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special_fn::{ln_nonzero, Complex};

pub use eulerian::{
    eulerian, eulerian_zeros, li_neg_m, sobolev_K, sobolev_approx, sobolev_epsilon, EulerianPolynomial,
};
pub use jonquiere::li_s_jonquiere;
pub use lipschitz::li_s_lipschitz;

/// How a zero set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroMethod {
    Eulerian,
    LipschitzNewton,
    JonquiereNewton,
}

impl fmt::Display for ZeroMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroMethod::Eulerian => "eulerian",
            ZeroMethod::LipschitzNewton => "lipschitz-newton",
            ZeroMethod::JonquiereNewton => "jonquiere-newton",
        })
    }
}

/// Zeros of `Li_s` found from the spiral seeds.
///
/// `zeros`, `approx_indices`, `seeds` and `seed_distances` run in parallel;
/// `approx_indices[i]` is the seed index `j` that produced `zeros[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylogZeroSet {
    pub s: Complex,
    pub method: ZeroMethod,
    pub zeros: Vec<Complex>,
    pub approx_indices: Vec<usize>,
    pub seeds: Vec<Complex>,
    pub seed_distances: Vec<f64>,
    /// `w` with `z = −e^{πw}` and `Im w ∈ (−1, 1]`, when the zero was found in
    /// that coordinate (`None` for the origin and for the integral path).
    pub log_coords: Vec<Option<Complex>>,
    /// Seeds whose iteration was restarted with the already accepted zeros divided out.
    pub deflated: Vec<usize>,
    /// Seeds that produced no new zero.
    pub failed: Vec<usize>,
}

impl PolylogZeroSet {
    /// The zero set of `Li_{−m}`: the origin and the zeros of `A_m`.
    pub fn from_eulerian(m: usize) -> Result<Self> {
        let lambdas = eulerian_zeros(m)?;
        let s = Complex::new(-(m as f64), 0.0);
        let mut set = PolylogZeroSet {
            s,
            method: ZeroMethod::Eulerian,
            zeros: vec![Complex::new(0.0, 0.0)],
            approx_indices: vec![0],
            seeds: vec![spiral_zero_approx(s, 0)?],
            seed_distances: Vec::new(),
            log_coords: vec![None],
            deflated: Vec::new(),
            failed: Vec::new(),
        };
        // λ_j is stored at position m − 1 − j
        for j in 1..m {
            set.zeros.push(Complex::new(lambdas[m - 1 - j], 0.0));
            set.approx_indices.push(j);
            set.seeds.push(spiral_zero_approx(s, j)?);
            set.log_coords.push(None);
        }
        set.seed_distances = set.zeros.iter().zip(&set.seeds).map(|(z, c)| (z - c).norm()).collect();
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// `cot z` through `e^{±2iz}`, choosing the exponential that cannot overflow.
pub fn cot(z: Complex) -> Result<Complex> {
    let i = Complex::new(0.0, 1.0);
    let (q, flip) = if z.im >= 0.0 {
        ((2.0 * i * z).exp(), -1.0)
    } else {
        ((-2.0 * i * z).exp(), 1.0)
    };
    let den = 1.0 - q;
    if den.norm() == 0.0 {
        return Err(Error::Domain(format!("cot has a pole at {z}")));
    }
    Ok(i * flip * (1.0 + q) / den)
}

/// `w_j = −cot(π(2j+1)/(2(1−s)))`, the spiral seed in `w` with `z = −e^{πw}`.
pub fn spiral_w(s: Complex, j: usize) -> Result<Complex> {
    let one_minus = 1.0 - s;
    if one_minus.norm() == 0.0 {
        return Err(Error::Domain("spiral approximation needs s != 1".into()));
    }
    let arg = Complex::new(PI * (2 * j + 1) as f64, 0.0) / (2.0 * one_minus);
    Ok(-cot(arg)?)
}

/// `−exp(−π cot(π(2j+1)/(2(1−s))))`, the approximate `j`-th zero of `Li_s`.
pub fn spiral_zero_approx(s: Complex, j: usize) -> Result<Complex> {
    let z = -(PI * spiral_w(s, j)?).exp();
    if !z.is_finite() {
        return Err(Error::OutOfRange(format!("spiral seed {j} for s = {s} overflows")));
    }
    Ok(z)
}

fn expm1(z: Complex) -> Complex {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex::new(z.re.exp_m1() * c - 2.0 * half * half, z.re.exp() * s)
}

/// A zero in whichever coordinates it was computed.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Root {
    z: Complex,
    w: Option<Complex>,
}

impl Root {
    const ORIGIN: Root = Root {
        z: Complex { re: 0.0, im: 0.0 },
        w: None,
    };

    fn from_w(w: Complex) -> Root {
        Root { z: -(PI * w).exp(), w: Some(w) }
    }

    fn is_origin(&self) -> bool {
        self.z.re == 0.0 && self.z.im == 0.0
    }

    /// `|1 − z|`, accurate near `z = 1` when `w` is known.
    fn gap_to_one(&self) -> f64 {
        match self.w {
            Some(w) => expm1(PI * (w + Complex::new(0.0, 1.0))).norm(),
            None => (1.0 - self.z).norm(),
        }
    }

    fn distance(&self, other: &Root) -> f64 {
        match (self.w, other.w) {
            (Some(a), Some(b)) => (PI * b).exp().norm() * expm1(PI * (a - b)).norm(),
            _ => (self.z - other.z).norm(),
        }
    }

    /// Scale for telling zeros apart: distance to the nearer of 0 and 1, capped at 1.
    fn scale(&self) -> f64 {
        1f64.min(self.z.norm()).min(self.gap_to_one())
    }
}

/// Relative tolerance below which two zeros count as one.
pub const DISTINCT_TOL: f64 = 1e-8;

fn same_root(a: &Root, b: &Root) -> bool {
    a.distance(b) <= DISTINCT_TOL * a.scale().min(b.scale())
}

const LIPSCHITZ_MAX_STEPS: usize = 100;
const JONQUIERE_MAX_STEPS: usize = 60;
/// Below `Re w = −1.5` (`|z| < 0.009`) the power series replaces the lattice
/// sum, whose terms would cancel down to rounding noise.
const SERIES_RE_W: f64 = -1.5;
/// Below `Re w = −60` (`|z| < e^{−188}`) an iterate has fallen into the origin.
const ORIGIN_RE_W: f64 = -60.0;
const ORIGIN_Z: f64 = 1e-80;

/// `z·Li_s′(z)/Li_s(z) = Li_{s−1}(z)/Li_s(z)` from `Σ zⁿ n^{−s}`, for small `|z|`.
fn series_log_derivative(s: Complex, z: Complex) -> Option<Complex> {
    let (mut a, mut b) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
    let lz = ln_nonzero(z);
    for n in 1..4000u32 {
        let ln_n = (n as f64).ln();
        let t = (lz * n as f64 - s * ln_n).exp();
        a += t;
        let tb = t * n as f64;
        b += tb;
        // past the peak of n^{−Re s}|z|ⁿ the terms shrink geometrically
        if n as f64 * -lz.re > (1.0 - s.re).max(1.0) && tb.norm() <= 1e-18 * b.norm() {
            return (a.norm() > 0.0).then(|| b / a);
        }
    }
    None
}

/// Newton's method on `Li_s(z)`, divided by `Π(z − a)` over `known`, carried
/// out in `w` with `z = −e^{πw}`: the step `Δz` becomes `w += log(1 + Δz/z)/π`.
fn lipschitz_newton(s: Complex, w0: Complex, known: &[Root]) -> Option<Root> {
    let mut w = lipschitz::reduce_w(w0);
    let mut last = f64::INFINITY;
    for _ in 0..LIPSCHITZ_MAX_STEPS {
        // z·H′/H for H = Li_s/Π(z − a)
        let mut d = if w.re < SERIES_RE_W {
            series_log_derivative(s, -(PI * w).exp())?
        } else {
            let (f, df) = lipschitz::lipschitz_with_derivative(s, w, None).ok()?;
            if f.value.norm() == 0.0 {
                return Some(Root::from_w(w));
            }
            df / (PI * f.value)
        };
        for a in known {
            d -= match a.w {
                _ if a.is_origin() => Complex::new(1.0, 0.0),
                Some(wa) => -expm1(PI * (wa - w)).inv(),
                None => {
                    let z = -(PI * w).exp();
                    z / (z - a.z)
                }
            };
        }
        let q = 1.0 - d.inv();
        if q.norm() == 0.0 {
            return Some(Root::ORIGIN);
        }
        let step = ln_nonzero(q) / PI;
        w = lipschitz::reduce_w(w + step);
        if !w.is_finite() {
            return None;
        }
        if w.re < ORIGIN_RE_W {
            return Some(Root::ORIGIN);
        }
        let size = step.norm();
        if size <= 1e-14 * (1.0 + w.norm()) || (size < 1e-9 && size >= last) {
            return Some(Root::from_w(w));
        }
        last = size;
    }
    None
}

/// Newton's method on `Li_s(z)` with `Li_s′(z) = Li_{s−1}(z)/z`, divided by
/// `Π(z − a)` over `known`.
fn jonquiere_newton(s: Complex, z0: Complex, known: &[Root]) -> Option<Root> {
    let mut z = z0;
    let mut last = f64::INFINITY;
    for _ in 0..JONQUIERE_MAX_STEPS {
        let f = jonquiere::li_s_jonquiere(s, z).ok()?.value;
        if f.norm() == 0.0 {
            return Some(Root { z, w: None });
        }
        let g = jonquiere::li_s_jonquiere(s - 1.0, z).ok()?.value;
        let mut d = g / (z * f);
        for a in known {
            d -= (z - a.z).inv();
        }
        let step = -d.inv();
        z += step;
        if !z.is_finite() {
            return None;
        }
        if z.norm() < ORIGIN_Z {
            return Some(Root::ORIGIN);
        }
        let size = step.norm();
        // relative test, so iterates heading for the origin keep going
        if size <= 1e-14 * z.norm() || (size < 1e-9 * z.norm() && size >= last) {
            return Some(Root { z, w: None });
        }
        last = size;
    }
    None
}

/// Seeds Newton's method at `spiral_zero_approx(s, j)` for `j = 0..=jmax`.
///
/// `Re s < 0` iterates on the Lipschitz series, `Re s > 1` on the Jonquière
/// integral. When a seed lands on a zero that an earlier seed already
/// produced, it is restarted with all accepted zeros divided out. Seeds that
/// still fail are listed in `failed` and contribute nothing.
pub fn find_polylog_zeros(s: Complex, jmax: usize) -> Result<PolylogZeroSet> {
    let method = if s.re < 0.0 {
        ZeroMethod::LipschitzNewton
    } else if s.re > 1.0 {
        ZeroMethod::JonquiereNewton
    } else {
        return Err(Error::Domain(format!(
            "no zero hunt for 0 <= Re s <= 1, got s = {s}"
        )));
    };
    let seeds: Vec<Result<(Complex, Complex)>> = (0..=jmax)
        .map(|j| Ok((spiral_w(s, j)?, spiral_zero_approx(s, j)?)))
        .collect();
    let solve = |seed: &(Complex, Complex), known: &[Root]| match method {
        ZeroMethod::LipschitzNewton => lipschitz_newton(s, seed.0, known),
        _ => jonquiere_newton(s, seed.1, known),
    };
    let first: Vec<Option<Root>> = seeds
        .par_iter()
        .map(|seed| seed.as_ref().ok().and_then(|seed| solve(seed, &[])))
        .collect();

    let mut accepted: Vec<Root> = Vec::new();
    let mut set = PolylogZeroSet {
        s,
        method,
        zeros: Vec::new(),
        approx_indices: Vec::new(),
        seeds: Vec::new(),
        seed_distances: Vec::new(),
        log_coords: Vec::new(),
        deflated: Vec::new(),
        failed: Vec::new(),
    };
    for (j, (seed, root)) in seeds.iter().zip(first).enumerate() {
        let Ok(seed) = seed else {
            set.failed.push(j);
            continue;
        };
        let fresh = |r: &Root| !accepted.iter().any(|a| same_root(a, r));
        let root = match root {
            Some(r) if fresh(&r) => Some(r),
            _ => {
                let retry = solve(seed, &accepted).filter(|r| fresh(r));
                if retry.is_some() {
                    set.deflated.push(j);
                }
                retry
            }
        };
        let Some(root) = root else {
            set.failed.push(j);
            continue;
        };
        let seed_root = match method {
            ZeroMethod::LipschitzNewton => Root::from_w(seed.0),
            _ => Root { z: seed.1, w: None },
        };
        accepted.push(root);
        set.zeros.push(root.z);
        set.approx_indices.push(j);
        set.seeds.push(seed.1);
        set.seed_distances.push(if root.is_origin() {
            seed.1.norm()
        } else {
            root.distance(&seed_root)
        });
        set.log_coords.push(root.w);
    }
    Ok(set)
}
