//! Principal-branch dilogarithm, logarithm conventions, Clausen's function
//! and the second Bernoulli polynomial.
//!
//! Branch conventions follow the usual limits:
//!
//! * `log` has `arg ∈ (−π, π]`; on the negative real axis it takes the value
//!   from above (imaginary part `+π`), whatever the sign of a zero imaginary
//!   part.
//! * `Li₂` has its cut on `[1, ∞)`; points exactly on the cut evaluate to the
//!   limit from below, `Im Li₂(x) = −π log x`. Add `2πi·log x` for the limit
//!   from above.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// `π²/6 = Li₂(1)`.
pub const ZETA2: f64 = PI * PI / 6.0;

/// Maximum of Clausen's function, attained at `θ = π/3`.
pub const KAPPA: f64 = 1.014_941_606_409_653_6;

const TWO_PI_HI: f64 = TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

/// A value together with an absolute error bound for its evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex,
    pub abs_err_estimate: f64,
}

impl EvalResult {
    pub fn new(value: Complex, abs_err_estimate: f64) -> Self {
        debug_assert!(abs_err_estimate >= 0.0);
        EvalResult {
            value,
            abs_err_estimate,
        }
    }
}

/// Principal logarithm with `arg z ∈ (−π, π]`.
pub fn log_principal(z: Complex) -> Result<Complex> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    Ok(ln_nonzero(z))
}

/// `log_principal` for callers that have already excluded zero.
pub(crate) fn ln_nonzero(z: Complex) -> Complex {
    let arg = if z.im == 0.0 && z.re < 0.0 {
        PI
    } else {
        z.im.atan2(z.re)
    };
    Complex::new(z.re.hypot(z.im).ln(), arg)
}

/// `B_{2k}/(2k+1)!` for k = 1..=30.
const BERNOULLI_SERIES: [f64; 30] = [
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.315975652702203e-26,
    -1.740845657234001e-27,
    4.1576356446139e-29,
    -9.962148488284622e-31,
    2.3940344248961652e-32,
    -5.76834735536739e-34,
    1.393179479647008e-35,
    -3.3721219654850894e-37,
    8.178208777562102e-39,
    -1.987010831152386e-40,
    4.8357785180405507e-42,
    -1.1786937248718384e-43,
    2.877096408117257e-45,
    -7.032059098156028e-47,
    1.7208603145033145e-48,
    -4.2160723905604456e-50,
];

/// `|B_{2n}|/(2n·(2n+1)!)` for n = 1..=30.
const CLAUSEN_SERIES: [f64; 30] = [
    0.013888888888888888,
    6.944444444444444e-05,
    7.873519778281683e-07,
    1.1482216343327455e-08,
    1.8978869988971e-10,
    3.387301370953521e-12,
    6.372636443183181e-14,
    1.2462059912950672e-15,
    2.5105444608999545e-17,
    5.178258806090623e-19,
    1.0887357368300849e-20,
    2.325744114302087e-22,
    5.03519521314739e-24,
    1.1026499294381215e-25,
    2.4386585509007344e-27,
    5.440142678856253e-29,
    1.2228340131217352e-30,
    2.767263468967951e-32,
    6.3000905918320136e-34,
    1.4420868388418476e-35,
    3.3170939991595428e-37,
    7.663913557920658e-39,
    1.7778714733830659e-40,
    4.1396058982341375e-42,
    9.671557036081102e-44,
    2.2667187016766123e-45,
    5.327956311328254e-47,
    1.2557248389564336e-48,
    2.967000542247094e-50,
    7.026787317600742e-52,
];

/// Principal-branch dilogarithm.
///
/// The returned `abs_err_estimate` tracks rounding in the summations and in
/// the functional equations used to reach the convergent region.
pub fn li2_principal(z: Complex) -> EvalResult {
    let (mut value, err) = li2_inner(z);
    if z.im == 0.0 && z.re <= 1.0 {
        value.im = 0.0;
    }
    EvalResult::new(value, err)
}

fn li2_inner(z: Complex) -> (Complex, f64) {
    let one = Complex::new(1.0, 0.0);
    if z.re == 0.0 && z.im == 0.0 {
        return (Complex::new(0.0, 0.0), 0.0);
    }
    if z.re == 1.0 && z.im == 0.0 {
        return (Complex::new(ZETA2, 0.0), f64::EPSILON * ZETA2);
    }
    let r = z.norm();
    if r <= 0.5 {
        return li2_series(z);
    }
    if r >= 2.0 {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ½ log²(−z)
        let (inv, inv_err) = li2_inner(one / z);
        let l = ln_nonzero(-z);
        let half_sq = 0.5 * l * l;
        let value = -inv - ZETA2 - half_sq;
        let err = inv_err + 4.0 * f64::EPSILON * (ZETA2 + half_sq.norm() + inv.norm());
        return (value, err);
    }
    let d = (one - z).norm();
    if d <= 0.5 || d >= 2.0 {
        // Li₂(z) = −Li₂(1−z) + π²/6 − log z · log(1−z)
        let (refl, refl_err) = li2_inner(one - z);
        let prod = ln_nonzero(z) * ln_nonzero(one - z);
        let value = -refl + ZETA2 - prod;
        let err = refl_err + 4.0 * f64::EPSILON * (ZETA2 + prod.norm() + refl.norm());
        return (value, err);
    }
    li2_bernoulli(z)
}

/// Direct power series, used for `|z| ≤ 1/2`.
fn li2_series(z: Complex) -> (Complex, f64) {
    let mut sum = Complex::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut power = Complex::new(1.0, 0.0);
    for n in 1..=60u32 {
        power *= z;
        let term = power / f64::from(n * n);
        sum += term;
        let t = term.norm();
        abs_sum += t;
        if t <= 1e-18 * abs_sum {
            break;
        }
    }
    (sum, 4.0 * f64::EPSILON * abs_sum)
}

/// Expansion in `w = −log(1−z)` with Bernoulli-number coefficients:
/// `Li₂(z) = w − w²/4 + Σ B_{2k} w^{2k+1}/(2k+1)!`, convergent for `|w| < 2π`.
fn li2_bernoulli(z: Complex) -> (Complex, f64) {
    let w = -ln_nonzero(Complex::new(1.0, 0.0) - z);
    let w2 = w * w;
    let mut sum = w - 0.25 * w2;
    let mut abs_sum = w.norm() + 0.25 * w2.norm();
    let mut power = w;
    for &c in BERNOULLI_SERIES.iter() {
        power *= w2;
        let term = power * c;
        sum += term;
        let t = term.norm();
        abs_sum += t;
        if t <= 1e-18 * abs_sum {
            break;
        }
    }
    (sum, 6.0 * f64::EPSILON * abs_sum)
}

/// `Li₂(e^{2πix}) = π²B₂(x − ⌊x⌋) + i·Cl₂(2πx)`, from the closed forms on
/// the unit circle.
pub fn li2_unit_circle(x: f64) -> Complex {
    let frac = x - x.floor();
    let centered = if frac > 0.5 { frac - 1.0 } else { frac };
    Complex::new(PI * PI * bernoulli_b2(frac), clausen(2.0 * PI * centered))
}

/// Reduce an angle to `(−π, π]` with a two-constant fused step.
pub(crate) fn reduce_angle(theta: f64) -> f64 {
    let k = (theta / TWO_PI_HI).round();
    let mut t = (-k).mul_add(TWO_PI_HI, theta);
    t = (-k).mul_add(TWO_PI_LO, t);
    if t <= -PI {
        t += TWO_PI_HI;
    } else if t > PI {
        t -= TWO_PI_HI;
    }
    t
}

/// Clausen's function `Cl₂(θ) = −∫₀^θ log|2 sin(x/2)| dx`.
///
/// Odd and `2π`-periodic; evaluated from
/// `θ − θ log|θ| + Σ |B_{2n}| θ^{2n+1}/(2n(2n+1)!)` after reduction to `(−π, π]`.
pub fn clausen(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let t = reduce_angle(theta);
    if t == 0.0 {
        return 0.0;
    }
    let a = t.abs();
    let a2 = a * a;
    let mut sum = a - a * a.ln();
    let mut power = a;
    for &c in CLAUSEN_SERIES.iter() {
        power *= a2;
        let term = c * power;
        sum += term;
        if term <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum.copysign(t)
}

/// Second Bernoulli polynomial `B₂(x) = x² − x + 1/6`.
pub fn bernoulli_b2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn log_conventions() {
        assert_eq!(log_principal(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        let l = log_principal(c(-1.0, 0.0)).unwrap();
        assert!(l.re.abs() < 1e-16 && (l.im - PI).abs() < 1e-16);
        // the sign of a zero imaginary part does not move the value off the upper edge
        let l = log_principal(c(-std::f64::consts::E, -0.0)).unwrap();
        assert!((l.re - 1.0).abs() < 1e-15 && (l.im - PI).abs() < 1e-16);
        assert!(matches!(log_principal(c(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn li2_reference_values() {
        assert_eq!(li2_principal(c(0.0, 0.0)).value, c(0.0, 0.0));
        let v = li2_principal(c(1.0, 0.0)).value;
        assert!((v.re - ZETA2).abs() < 1e-15 && v.im == 0.0);
        let v = li2_principal(c(-1.0, 0.0)).value;
        assert!((v.re + PI * PI / 12.0).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn li2_matches_direct_series() {
        // |z| = 0.5: 200 terms of Σ zⁿ/n² leave a tail far below 1e-40
        let z = c(0.3, 0.4);
        let mut sum = c(0.0, 0.0);
        let mut p = c(1.0, 0.0);
        for n in 1..=200 {
            p *= z;
            sum += p / f64::from(n * n);
        }
        let v = li2_principal(z);
        assert!((v.value - sum).norm() < 1e-15);
        assert!(v.abs_err_estimate <= 1e-14 * (1.0 + v.value.norm()));
    }

    #[test]
    fn cut_takes_lower_limit() {
        for &x in &[1.2, 1.7, 3.0, 10.0, 1e6] {
            let v = li2_principal(c(x, 0.0)).value;
            assert!((v.im + PI * f64::ln(x)).abs() < 1e-12 * (1.0 + x.ln()), "x={x}");
            let below = li2_principal(c(x, -1e-12)).value;
            assert!((v - below).norm() < 1e-9);
            let above = li2_principal(c(x, 1e-12)).value;
            let jump = above - v;
            assert!((jump - c(0.0, 2.0 * PI * x.ln())).norm() < 1e-9);
        }
    }

    #[test]
    fn error_estimate_within_budget() {
        for k in 0..200 {
            let t = f64::from(k) * 0.1;
            let z = Complex::from_polar(0.05 + 0.05 * f64::from(k % 50), t);
            let v = li2_principal(z);
            assert!(
                v.abs_err_estimate <= 1e-14 * (1.0 + v.value.norm()),
                "z={z} est={}",
                v.abs_err_estimate
            );
        }
    }

    #[test]
    fn unit_circle_examples() {
        let v = li2_unit_circle(0.0);
        assert!((v.re - ZETA2).abs() < 1e-15 && v.im == 0.0);
        let v = li2_unit_circle(0.5);
        assert!((v.re + PI * PI / 12.0).abs() < 1e-15 && v.im.abs() < 1e-15);
        let v = li2_unit_circle(1.0 / 6.0);
        assert!((v.re - PI * PI * bernoulli_b2(1.0 / 6.0)).abs() < 1e-15);
        assert!((v.im - KAPPA).abs() < 1e-15);
    }

    #[test]
    fn clausen_examples() {
        assert_eq!(clausen(0.0), 0.0);
        assert!((clausen(PI / 3.0) - 1.014_941_6).abs() < 1e-7);
        assert!((clausen(PI / 3.0) - KAPPA).abs() < 1e-15);
        assert!((clausen(-1.3) + clausen(1.3)).abs() == 0.0);
        // periodic with huge arguments
        let t = 1e9 * 2.0 * PI + 0.7;
        assert!((clausen(t) - clausen(0.7)).abs() < 1e-6);
    }

    #[test]
    fn clausen_at_half_pi_is_catalan() {
        // Σ sin(πn/2)/n² = Σ_k (−1)^k/(2k+1)², summed with pairwise averaging
        // of partial sums (Euler transform of an alternating series)
        let mut partial = Vec::with_capacity(64);
        let mut s = 0.0;
        for k in 0..64 {
            let term = if k % 2 == 0 { 1.0 } else { -1.0 } / f64::from((2 * k + 1) * (2 * k + 1));
            s += term;
            partial.push(s);
        }
        while partial.len() > 1 {
            partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        }
        let catalan = partial[0];
        assert!((clausen(PI / 2.0) - catalan).abs() < 1e-14);
    }

    #[test]
    fn b2_values() {
        assert_eq!(bernoulli_b2(0.0), 1.0 / 6.0);
        assert!((bernoulli_b2(0.5) + 1.0 / 12.0).abs() < 1e-16);
        assert!((bernoulli_b2(1.0) - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn reduce_angle_range() {
        for &t in &[-7.0, -PI, PI, 3.0 * PI, 1e10, -1e10, 0.1] {
            let r = reduce_angle(t);
            assert!(r > -PI && r <= PI + 1e-15, "{t} -> {r}");
        }
    }
}
