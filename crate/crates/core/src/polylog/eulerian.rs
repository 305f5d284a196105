//! Eulerian polynomials, their zeros, and Sobolev's approximation to them.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::special_fn::Complex;

/// Largest index accepted by [`eulerian`].
pub const MAX_EULERIAN_INDEX: usize = 500;
/// Largest index accepted by [`eulerian_zeros`] and [`li_neg_m`].
pub const MAX_ZEROS_INDEX: usize = 60;

/// `A_m(z)`, the numerator of `Li_{−m}(z) = z·A_m(z)/(1 − z)^{m+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianPolynomial {
    pub m: usize,
    /// `coeffs[k]` multiplies `z^k`.
    pub coeffs: Vec<BigUint>,
}

impl EulerianPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn split(&self) -> Vec<(f64, f64)> {
        self.coeffs.iter().map(split_big).collect()
    }

    /// `A_m(x)` in double-double Horner form, returned as `(hi, lo)`.
    fn eval_dd(split: &[(f64, f64)], x: f64) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for &c in split.iter().rev() {
            acc = dd_add(dd_mul(acc, x), c);
        }
        acc
    }

    /// `A_m(x)` with compensated evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let (hi, lo) = Self::eval_dd(&self.split(), x);
        hi + lo
    }

    /// `A_m(z)` by complex Horner in double-double.
    pub fn eval_complex(&self, z: Complex) -> Complex {
        horner_complex(self.split().iter().rev(), z)
    }

    /// `Σ a_k y^{deg − k}`, the coefficient-reversed polynomial.
    fn eval_reversed(&self, y: Complex) -> Complex {
        horner_complex(self.split().iter(), y)
    }
}

/// Horner's rule with coefficients given highest power first, carried in
/// double-double so that cancellation among the huge coefficients is harmless.
fn horner_complex<'a>(coeffs: impl Iterator<Item = &'a (f64, f64)>, z: Complex) -> Complex {
    let neg = |a: (f64, f64)| (-a.0, -a.1);
    let (mut re, mut im) = ((0.0, 0.0), (0.0, 0.0));
    for &c in coeffs {
        let next_re = dd_add(dd_add(dd_mul(re, z.re), neg(dd_mul(im, z.im))), c);
        im = dd_add(dd_mul(re, z.im), dd_mul(im, z.re));
        re = next_re;
    }
    Complex::new(re.0 + re.1, im.0 + im.1)
}

fn split_big(c: &BigUint) -> (f64, f64) {
    let hi = c.to_f64().unwrap_or(f64::INFINITY);
    let rest = BigInt::from(c.clone()) - BigInt::from(BigUint::from_f64(hi).unwrap_or_default());
    (hi, rest.to_f64().unwrap_or(0.0))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn dd_mul(a: (f64, f64), x: f64) -> (f64, f64) {
    let p = a.0 * x;
    let e = a.0.mul_add(x, -p) + a.1 * x;
    two_sum(p, e)
}

fn dd_add(a: (f64, f64), c: (f64, f64)) -> (f64, f64) {
    let (s, e) = two_sum(a.0, c.0);
    two_sum(s, e + a.1 + c.1)
}

/// `A_m` from `A_{m+1}(z) = (1 + mz)A_m(z) + z(1 − z)A′_m(z)`, exactly.
pub fn eulerian(m: usize) -> Result<EulerianPolynomial> {
    if m > MAX_EULERIAN_INDEX {
        return Err(Error::OutOfRange(format!(
            "Eulerian index {m} exceeds {MAX_EULERIAN_INDEX}"
        )));
    }
    let mut coeffs = vec![BigUint::one()];
    for n in 1..m {
        // coefficient k of A_{n+1} is (k+1)·a_k + (n−k+1)·a_{k−1}
        let mut next = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = BigUint::zero();
            if k < coeffs.len() {
                c += &coeffs[k] * BigUint::from(k + 1);
            }
            if k >= 1 {
                c += &coeffs[k - 1] * BigUint::from(n + 1 - k);
            }
            next.push(c);
        }
        coeffs = next;
    }
    Ok(EulerianPolynomial { m, coeffs })
}

/// Sign-preserving evaluation of `A_m(x)` for `x < 0` that never overflows:
/// for `x < −1` the reversed polynomial at `1/x` stands in for `A_m(x)/x^{deg}`.
fn sign_eval(split: &[(f64, f64)], reversed: &[(f64, f64)], x: f64) -> f64 {
    if x >= -1.0 {
        let (hi, lo) = EulerianPolynomial::eval_dd(split, x);
        hi + lo
    } else {
        let (hi, lo) = EulerianPolynomial::eval_dd(reversed, 1.0 / x);
        let v = hi + lo;
        if (split.len() - 1) % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

fn bisect(
    split: &[(f64, f64)],
    reversed: &[(f64, f64)],
    mut lo: f64,
    mut hi: f64,
    seed: Option<f64>,
) -> f64 {
    let mut flo = sign_eval(split, reversed, lo);
    let mut first = seed.filter(|s| *s > lo && *s < hi);
    for _ in 0..4000 {
        let mid = first.take().unwrap_or_else(|| {
            // geometric midpoint while the bracket spans orders of magnitude
            if lo / hi > 4.0 {
                -(lo * hi).sqrt()
            } else {
                0.5 * (lo + hi)
            }
        });
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = sign_eval(split, reversed, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `m − 1` zeros of `A_m`, sorted ascending: `λ_{m−1} < … < λ₁ < 0`.
///
/// Zeros of `A_{m−1}` interlace those of `A_m`, so each zero is bracketed by
/// its neighbours one degree down, then bisected with double-double Horner
/// evaluation. The Sobolev approximation serves as the first midpoint.
pub fn eulerian_zeros(m: usize) -> Result<Vec<f64>> {
    if !(1..=MAX_ZEROS_INDEX).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "eulerian_zeros needs 1 <= m <= {MAX_ZEROS_INDEX}, got {m}"
        )));
    }
    let mut zeros: Vec<f64> = Vec::new();
    for n in 2..=m {
        let p = eulerian(n)?;
        let split = p.split();
        let reversed: Vec<_> = split.iter().rev().copied().collect();
        // every zero has modulus between 1/bound and bound
        let bound = 1.0 + p.coeffs.iter().filter_map(|c| c.to_f64()).fold(0.0, f64::max);
        let mut edges = vec![-bound];
        edges.extend(zeros.iter().copied());
        edges.push(-1.0 / bound);
        let mut next = Vec::with_capacity(n - 1);
        for (i, w) in edges.windows(2).enumerate() {
            let j = n - 1 - i;
            let seed = sobolev_approx(n, j).ok();
            next.push(bisect(&split, &reversed, w[0], w[1], seed));
        }
        zeros = next;
    }
    Ok(zeros)
}

/// `−exp(−π cot(π(2j+1)/(2(m+1))))`, approximating `λ_j`.
pub fn sobolev_approx(m: usize, j: usize) -> Result<f64> {
    if m < 2 || !(1..m).contains(&j) {
        return Err(Error::OutOfRange(format!(
            "sobolev_approx needs 1 <= j <= m-1, got m = {m}, j = {j}"
        )));
    }
    let x = PI * (2 * j + 1) as f64 / (2.0 * (m + 1) as f64);
    if 2 * (2 * j + 1) == 2 * (m + 1) {
        return Ok(-1.0);
    }
    Ok(-(-PI * x.cos() / x.sin()).exp())
}

/// The offset `ε_j` with `λ_j = −exp(−π cot(π(2j+1+ε_j)/(2(m+1))))`.
pub fn sobolev_epsilon(m: usize, j: usize, lambda: f64) -> f64 {
    let c = -(-lambda).ln() / PI;
    let acot = PI / 2.0 - c.atan();
    2.0 * (m + 1) as f64 / PI * acot - (2 * j + 1) as f64
}

/// `K = (1 + ¼√(9π² + log²M))·((π² + log²M)/(9π² + log²M))^{(m+1)/2}`.
///
/// `|ε_j| ≤ 2K/3` for every zero with `1/M ≤ |λ_j| ≤ M` once `K ≤ 1/3`.
#[allow(non_snake_case)]
pub fn sobolev_K(m: usize, big_m: f64) -> Result<f64> {
    if !(big_m > 1.0) || m < 1 {
        return Err(Error::Domain(format!("sobolev_K needs M > 1 and m >= 1, got M = {big_m}, m = {m}")));
    }
    let l2 = big_m.ln().powi(2);
    let nine = 9.0 * PI * PI;
    let base = (PI * PI + l2) / (nine + l2);
    Ok((1.0 + 0.25 * (nine + l2).sqrt()) * base.powf((m + 1) as f64 / 2.0))
}

/// `Li_{−m}(z) = z·A_m(z)/(1 − z)^{m+1}`.
pub fn li_neg_m(m: usize, z: Complex) -> Result<Complex> {
    if m > MAX_ZEROS_INDEX {
        return Err(Error::OutOfRange(format!("li_neg_m needs m <= {MAX_ZEROS_INDEX}, got {m}")));
    }
    let one = Complex::new(1.0, 0.0);
    if z == one {
        return Err(Error::Domain("Li_{-m} has a pole at z = 1".into()));
    }
    let p = eulerian(m)?;
    let q = one - z;
    if z.norm() <= 1.0 {
        return Ok(z * p.eval_complex(z) / q.powu(m as u32 + 1));
    }
    // z^{deg}·A(1/z) form keeps powers of large z bounded
    if m == 0 {
        return Ok(z / q);
    }
    Ok(p.eval_reversed(z.inv()) * (z / q).powu(m as u32) / q)
}
