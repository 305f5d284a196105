//! Existence, initial guesses and certified Newton iteration for the zeros of
//! `φ_{A,B}`.
//!
//! Each branch has at most one zero. It exists exactly when `B = 0, A ≥ 0`
//! or `−|B|/2 < A ≤ |B|/2`. For `B = 0, A ≥ 1` the zero is real and large
//! and negative; for `B ≥ 1` it lies in a thin polar rectangle hugging the
//! unit circle; `B ≤ −1` is the mirror image of `−B`.

use std::f64::consts::PI;

use crate::branch::{phi_derivative, phi_eval, BranchIndex};
use crate::error::{Error, Result};
use crate::special_fn::{bernoulli_b2, clausen, Complex, KAPPA};

/// Smallest tolerance [`find_zero`] will try to certify.
pub const TOL_FLOOR: f64 = 1e-14;

/// Iteration cap for [`find_zero`]. Reaching it means a bug, not a hard case.
pub const MAX_ITERATIONS: usize = 64;

/// Extra Newton steps taken after the a-priori bound first drops below tol.
const EXTRA_STEPS: usize = 2;

/// Region `r1 ≤ |z| ≤ r2`, `theta1 ≤ arg z ≤ theta2` known to contain the zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarRectangle {
    pub r1: f64,
    pub r2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl PolarRectangle {
    /// Closed membership, with a relative slack of a few ulps.
    pub fn contains(&self, z: Complex) -> bool {
        let (r, t) = (z.norm(), z.arg());
        let slack = 8.0 * f64::EPSILON;
        r >= self.r1 * (1.0 - slack)
            && r <= self.r2 * (1.0 + slack)
            && t >= self.theta1 - slack * PI
            && t <= self.theta2 + slack * PI
    }

    /// Strict membership in the open rectangle.
    pub fn contains_strictly(&self, z: Complex) -> bool {
        let (r, t) = (z.norm(), z.arg());
        r > self.r1 && r < self.r2 && t > self.theta1 && t < self.theta2
    }
}

/// Flags raised while certifying a zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CertificateFlags {
    /// The requested tolerance was below [`TOL_FLOOR`] and was raised to it.
    pub tol_clamped: bool,
    /// Floating-point resolution, not the contraction argument, sets the radius.
    pub float_floor_dominates: bool,
    /// Indices of iterates that fell outside the closed polar rectangle.
    pub rectangle_violations: Vec<usize>,
}

/// A zero together with an error radius and the Newton trace that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCertificate {
    pub branch: BranchIndex,
    pub zero: Complex,
    pub error_radius: f64,
    /// `c₀, c₁, …, c_N` with `zero = c_N`.
    pub iterations: Vec<Complex>,
    pub contraction_constant: f64,
    /// Bound on `|ρ − c_N|` from the convergence rate alone.
    pub a_priori_radius: f64,
    /// Bound on `|ρ − c_N|` from the last step length and the contraction constant.
    pub a_posteriori_radius: f64,
    /// Radius below which binary64 evaluation of `φ` cannot resolve the zero.
    pub float_floor: f64,
    pub tol: f64,
    pub flags: CertificateFlags,
}

impl ZeroCertificate {
    fn conjugate(self, branch: BranchIndex) -> Self {
        ZeroCertificate {
            branch,
            zero: self.zero.conj(),
            iterations: self.iterations.iter().map(|c| c.conj()).collect(),
            ..self
        }
    }
}

/// Whether `φ_{A,B}` has a zero.
pub fn has_zero(b: BranchIndex) -> bool {
    if b.b == 0 {
        return b.a >= 0;
    }
    // −|B|/2 < A ≤ |B|/2 without halving
    let (twice_a, abs_b) = (2 * b.a as i128, (b.b as i128).abs());
    -abs_b < twice_a && twice_a <= abs_b
}

fn require_zero(b: BranchIndex) -> Result<()> {
    if has_zero(b) {
        Ok(())
    } else {
        Err(Error::UnsupportedBranch { a: b.a, b: b.b })
    }
}

/// The starting point `c₀` of the Newton iteration.
pub fn initial_guess(b: BranchIndex) -> Result<Complex> {
    require_zero(b)?;
    if b.b < 0 {
        return initial_guess(b.conjugate()).map(|c| c.conj());
    }
    let (a, bb) = (b.a as f64, b.b as f64);
    Ok(match (b.a, b.b) {
        (0, 0) => Complex::new(0.0, 0.0),
        (_, 0) => Complex::new(-(PI * (8.0 * a - 1.0 / 3.0).sqrt()).exp(), 0.0),
        (0, _) => Complex::from_polar(1.0, PI / (12.0 * bb)),
        // 2πA/B can round past π and land below the cut
        _ if 2 * b.a == b.b => Complex::from_polar(1.0, PI),
        _ => Complex::from_polar(1.0, 2.0 * PI * a / bb),
    })
}

/// One Newton step `c − φ(c)/φ′(c)`.
pub fn newton_step(b: BranchIndex, c: Complex) -> Result<Complex> {
    let d = phi_derivative(b, c)?;
    if d.norm() == 0.0 {
        return Err(Error::Domain(format!("φ′ vanishes at {c} on branch {b}")));
    }
    let v = phi_eval(b, c)?.value;
    Ok(c - v / d)
}

/// The contraction constant `K` with `|ρ − c′| ≤ K|ρ − c|²` for one Newton step.
pub fn contraction_constant(b: BranchIndex) -> Result<f64> {
    require_zero(b)?;
    let (a, bb) = (b.a as f64, b.b.unsigned_abs() as f64);
    Ok(match (b.a, b.b) {
        (0, 0) => 0.0,
        (_, 0) => 1.0 / (2.0 * PI * a.sqrt()),
        (0, _) => 2.51 * bb,
        _ => 0.76 * bb,
    })
}

/// A-priori bound on `|ρ − cₙ|`, with `n` counted from `c₀`.
pub fn a_priori_bound(b: BranchIndex, n: usize) -> Result<f64> {
    require_zero(b)?;
    let e = 2f64.powi(n.min(1023) as i32);
    Ok(match (b.a, b.b) {
        (0, 0) => 0.0,
        (a, 0) => {
            let a = a as f64;
            2.0 * PI * a.sqrt() * (2.0 * PI * a).powf(-e)
        }
        _ => 1.25 * 0.95f64.powf(e),
    })
}

/// Newton's method from [`initial_guess`] with an error radius.
///
/// Steps continue until the a-priori bound is at most `tol`, then two more are
/// taken. The radius is the smaller of the a-priori bound and the bound
/// `K·(2δ)²` from the last step length `δ`, but never less than the
/// floating-point floor `|φ|/|φ′| + 2ε|ρ|` at the returned zero.
pub fn find_zero(b: BranchIndex, tol: f64) -> Result<ZeroCertificate> {
    require_zero(b)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if b.b < 0 {
        return find_zero(b.conjugate(), tol).map(|c| c.conjugate(b));
    }
    let mut flags = CertificateFlags::default();
    let tol_used = if tol < TOL_FLOOR {
        flags.tol_clamped = true;
        TOL_FLOOR
    } else {
        tol
    };
    let k = contraction_constant(b)?;
    if b == BranchIndex::PRINCIPAL {
        return Ok(ZeroCertificate {
            branch: b,
            zero: Complex::new(0.0, 0.0),
            error_radius: 0.0,
            iterations: vec![Complex::new(0.0, 0.0)],
            contraction_constant: k,
            a_priori_radius: 0.0,
            a_posteriori_radius: 0.0,
            float_floor: 0.0,
            tol: tol_used,
            flags,
        });
    }
    let rect = if b.b > 0 { Some(polar_rectangle(b)?) } else { None };

    let mut iterations = vec![initial_guess(b)?];
    let mut remaining = None;
    loop {
        let n = iterations.len() - 1;
        if remaining.is_none() && a_priori_bound(b, n)? <= tol_used {
            remaining = Some(EXTRA_STEPS);
        }
        if remaining == Some(0) {
            break;
        }
        if n >= MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                what: "Newton iteration for a dilogarithm zero",
                iterations: n,
            });
        }
        let next = newton_step(b, iterations[n])?;
        iterations.push(next);
        remaining = remaining.map(|r| r - 1);
    }
    if let Some(rect) = rect {
        flags.rectangle_violations = iterations
            .iter()
            .enumerate()
            .filter(|(_, c)| !rect.contains(**c))
            .map(|(i, _)| i)
            .collect();
    }

    let n = iterations.len() - 1;
    let zero = iterations[n];
    let a_priori = a_priori_bound(b, n)?;
    let delta = (iterations[n] - iterations[n - 1]).norm();
    let a_posteriori = k * (2.0 * delta).powi(2);
    let float_floor = float_floor(b, zero)?;
    let contraction = a_priori.min(a_posteriori);
    flags.float_floor_dominates = float_floor > contraction;
    Ok(ZeroCertificate {
        branch: b,
        zero,
        error_radius: contraction.max(float_floor),
        iterations,
        contraction_constant: k,
        a_priori_radius: a_priori,
        a_posteriori_radius: a_posteriori,
        float_floor,
        tol: tol_used,
        flags,
    })
}

fn float_floor(b: BranchIndex, z: Complex) -> Result<f64> {
    let v = phi_eval(b, z)?;
    let d = phi_derivative(b, z)?.norm();
    Ok(v.abs_err_estimate.max(v.value.norm()) / d + 2.0 * f64::EPSILON * z.norm())
}

/// First-order approximation
/// `e^{2πiA/B}·(1 + (−Cl₂(2πA/B) + iπ²B₂(|A|/B))/(2πB))` for `B ≥ 1`.
/// Negative `B` is handled by conjugation.
pub fn approx_zero_first_order(b: BranchIndex) -> Result<Complex> {
    require_zero(b)?;
    if b.b == 0 {
        return Err(Error::UnsupportedBranch { a: b.a, b: b.b });
    }
    if b.b < 0 {
        return approx_zero_first_order(b.conjugate()).map(|c| c.conj());
    }
    let (a, bb) = (b.a as f64, b.b as f64);
    let angle = 2.0 * PI * a / bb;
    let corr = Complex::new(-clausen(angle), PI * PI * bernoulli_b2(a.abs() / bb));
    Ok(Complex::from_polar(1.0, angle) * (1.0 + corr / (2.0 * PI * bb)))
}

/// `−exp(π√(8A − 1/3))`, the leading approximation to the zero of `φ_{A,0}`.
pub fn approx_zero_b0(a: i64) -> Result<Complex> {
    if a < 1 {
        return Err(Error::OutOfRange(format!("approx_zero_b0 needs A >= 1, got {a}")));
    }
    Ok(Complex::new(-(PI * (8.0 * a as f64 - 1.0 / 3.0).sqrt()).exp(), 0.0))
}

/// The polar rectangle `R_{A,B}` for `B ≥ 1`, `−B/2 < A ≤ B/2`.
pub fn polar_rectangle(b: BranchIndex) -> Result<PolarRectangle> {
    if b.b < 1 || !has_zero(b) {
        return Err(Error::UnsupportedBranch { a: b.a, b: b.b });
    }
    let (a, bb) = (b.a as f64, b.b as f64);
    let (r1, r2) = if b.a < 0 {
        (1.0, (KAPPA / (PI * (2.0 * bb - 1.0))).exp())
    } else {
        ((-KAPPA / (2.0 * PI * bb)).exp(), 1.0)
    };
    let theta1 = if b.a == 0 {
        PI / (24.0 * bb)
    } else {
        PI * (2.0 * a - 0.125) / bb
    };
    let theta2 = if 2 * b.a == b.b {
        PI
    } else {
        PI * (2.0 * a + 0.125) / bb
    };
    Ok(PolarRectangle {
        r1,
        r2,
        theta1,
        theta2,
    })
}
