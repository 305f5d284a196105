//! Branches `φ_{A,B}(z) = Li₂(z) + 4π²A + 2πiB·log z` and their monodromy.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::{li2_principal, ln_nonzero, Complex, EvalResult};

/// The integer pair `(A, B)` naming a branch of the dilogarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BranchIndex {
    pub a: i64,
    pub b: i64,
}

impl BranchIndex {
    pub const PRINCIPAL: BranchIndex = BranchIndex { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        BranchIndex { a, b }
    }

    /// The branch reached by conjugating `z`: `φ_{A,−B}(z̄) = conj φ_{A,B}(z)`.
    pub const fn conjugate(self) -> Self {
        BranchIndex { a: self.a, b: -self.b }
    }
}

impl fmt::Display for BranchIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `φ_{A,B}(z)`.
pub fn phi(b: BranchIndex, z: Complex) -> Result<Complex> {
    phi_eval(b, z).map(|r| r.value)
}

/// `φ_{A,B}(z)` with an absolute error bound for the evaluation.
pub fn phi_eval(b: BranchIndex, z: Complex) -> Result<EvalResult> {
    let li = li2_principal(z);
    let constant = 4.0 * PI * PI * b.a as f64;
    let mut value = li.value + constant;
    let mut err = li.abs_err_estimate + 2.0 * f64::EPSILON * (constant.abs() + li.value.norm());
    if b.b != 0 {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::Domain(format!(
                "φ on branch {b} is undefined at the branch point 0"
            )));
        }
        let log_term = Complex::new(0.0, 2.0 * PI * b.b as f64) * ln_nonzero(z);
        value += log_term;
        err += 4.0 * f64::EPSILON * (log_term.norm() + value.norm());
    }
    Ok(EvalResult::new(value, err))
}

/// `φ′_{A,B}(z) = (−log(1−z) + 2πiB)/z`, defined off the cuts.
pub fn phi_derivative(b: BranchIndex, z: Complex) -> Result<Complex> {
    if z.im == 0.0 {
        if z.re == 0.0 {
            return Err(Error::Domain("φ′ is undefined at 0".into()));
        }
        if z.re >= 1.0 {
            return Err(Error::Domain(format!("φ′ is undefined on the cut [1, ∞): z = {z}")));
        }
        if z.re < 0.0 && b.b != 0 {
            return Err(Error::Domain(format!(
                "φ′ on branch {b} is undefined on the cut (−∞, 0]: z = {z}"
            )));
        }
    }
    let num = -ln_nonzero(Complex::new(1.0, 0.0) - z) + Complex::new(0.0, 2.0 * PI * b.b as f64);
    Ok(num / z)
}

/// Continue around `0`: a positive loop maps `(A, B)` to `(A+B, B)`.
pub fn monodromy_rotate_zero(b: BranchIndex, positive: bool) -> BranchIndex {
    if positive {
        BranchIndex::new(b.a + b.b, b.b)
    } else {
        BranchIndex::new(b.a - b.b, b.b)
    }
}

/// Continue around `1`: a negative loop maps `(A, B)` to `(A, B+1)`.
pub fn monodromy_rotate_one(b: BranchIndex, positive: bool) -> BranchIndex {
    if positive {
        BranchIndex::new(b.a, b.b - 1)
    } else {
        BranchIndex::new(b.a, b.b + 1)
    }
}

/// Element of the Heisenberg group `H₃(ℤ)`, stored as the three free entries
/// of the unipotent matrix
///
/// ```text
/// | 1 x z |
/// | 0 1 y |
/// | 0 0 1 |
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MonodromyElement {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl MonodromyElement {
    pub const IDENTITY: MonodromyElement = MonodromyElement { x: 0, y: 0, z: 0 };
    /// Positive loop about 0.
    pub const AROUND_ZERO: MonodromyElement = MonodromyElement { x: 1, y: 0, z: 0 };
    /// Negative loop about 1.
    pub const AROUND_ONE: MonodromyElement = MonodromyElement { x: 0, y: 1, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        MonodromyElement { x, y, z }
    }

    pub fn inverse(self) -> Self {
        MonodromyElement::new(-self.x, -self.y, self.x * self.y - self.z)
    }

    pub fn matrix(self) -> [[i64; 3]; 3] {
        [[1, self.x, self.z], [0, 1, self.y], [0, 0, 1]]
    }

    /// Action on the column vector `(A, B, 1)`.
    pub fn act(self, b: BranchIndex) -> BranchIndex {
        BranchIndex::new(b.a + self.x * b.b + self.z, b.b + self.y)
    }
}

/// Matrix product `g·h` in `H₃(ℤ)`.
pub fn heisenberg_compose(g: MonodromyElement, h: MonodromyElement) -> MonodromyElement {
    MonodromyElement::new(g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y)
}

impl std::ops::Mul for MonodromyElement {
    type Output = MonodromyElement;

    fn mul(self, rhs: MonodromyElement) -> MonodromyElement {
        heisenberg_compose(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::ZETA2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn matmul(a: [[i64; 3]; 3], b: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
        let mut out = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    #[test]
    fn phi_special_points() {
        assert_eq!(phi(BranchIndex::PRINCIPAL, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        for a in -3..=3 {
            for bb in -3..=3 {
                let b = BranchIndex::new(a, bb);
                let v = phi(b, c(1.0, 0.0)).unwrap();
                let want = PI * PI * (1.0 / 6.0 + 4.0 * a as f64);
                assert!((v - c(want, 0.0)).norm() < 1e-12);
                let v = phi(b, c(-1.0, 0.0)).unwrap();
                let want = PI * PI * (-1.0 / 12.0 + 4.0 * a as f64 - 2.0 * bb as f64);
                assert!((v - c(want, 0.0)).norm() < 1e-12, "{b}: {v}");
            }
        }
        assert!(phi(BranchIndex::new(0, 1), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let d = phi_derivative(BranchIndex::PRINCIPAL, c(-1.0, 0.0)).unwrap();
        assert!((d - c(2f64.ln(), 0.0)).norm() < 1e-15);
        // central finite difference on Li₂ at 1/2, h = 1e-6
        let h = 1e-6;
        let fd = (li2_principal(c(0.5 + h, 0.0)).value - li2_principal(c(0.5 - h, 0.0)).value) / (2.0 * h);
        let d = phi_derivative(BranchIndex::PRINCIPAL, c(0.5, 0.0)).unwrap();
        assert!((d - fd).norm() < 1e-8);
        assert!((d.re - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!(phi_derivative(BranchIndex::new(0, 1), c(-2.0, 0.0)).is_err());
        assert!(phi_derivative(BranchIndex::new(0, 0), c(-2.0, 0.0)).is_ok());
        assert!(phi_derivative(BranchIndex::new(0, 0), c(2.0, 0.0)).is_err());
        assert!(phi_derivative(BranchIndex::new(0, 0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn rotations() {
        assert_eq!(monodromy_rotate_zero(BranchIndex::new(0, -1), true), BranchIndex::new(-1, -1));
        assert_eq!(monodromy_rotate_zero(BranchIndex::new(3, 2), false), BranchIndex::new(1, 2));
        assert_eq!(monodromy_rotate_one(BranchIndex::new(0, 0), false), BranchIndex::new(0, 1));
        assert_eq!(monodromy_rotate_one(BranchIndex::new(0, 1), true), BranchIndex::new(0, 0));
        let mut b = BranchIndex::PRINCIPAL;
        for _ in 0..10 {
            b = monodromy_rotate_one(b, false);
        }
        assert_eq!(b, BranchIndex::new(0, 10));
        let b = BranchIndex::new(-4, 7);
        assert_eq!(monodromy_rotate_zero(monodromy_rotate_zero(b, true), false), b);
        assert_eq!(monodromy_rotate_one(monodromy_rotate_one(b, true), false), b);
        assert_eq!(MonodromyElement::AROUND_ZERO.act(b), monodromy_rotate_zero(b, true));
        assert_eq!(MonodromyElement::AROUND_ONE.act(b), monodromy_rotate_one(b, false));
    }

    #[test]
    fn heisenberg_law() {
        let g0 = MonodromyElement::AROUND_ZERO;
        let g1 = MonodromyElement::AROUND_ONE;
        let g = MonodromyElement::new(3, -2, 5);
        assert_eq!(MonodromyElement::IDENTITY * g, g);
        assert_eq!(g * MonodromyElement::IDENTITY, g);
        assert_ne!(g0 * g1, g1 * g0);
        let comm = g0 * g1 * g0.inverse() * g1.inverse();
        // the same commutator by explicit integer matrices
        let m = matmul(
            matmul(matmul(g0.matrix(), g1.matrix()), g0.inverse().matrix()),
            g1.inverse().matrix(),
        );
        assert_eq!(comm.matrix(), m);
        assert_eq!((comm.x, comm.y), (0, 0));
        assert_eq!(comm.z.abs(), 1);
        for (p, q) in [(g, g0), (g1, g), (g, g.inverse())] {
            assert_eq!((p * q).matrix(), matmul(p.matrix(), q.matrix()));
        }
        assert_eq!(g * g.inverse(), MonodromyElement::IDENTITY);
    }

    #[test]
    fn cut_crossing_glue() {
        for a in -2..=2 {
            for bb in -2..=2 {
                let b = BranchIndex::new(a, bb);
                for &x in &[1.1, 1.5, 1.9] {
                    // the mismatch is first order in y
                    for (y, tol) in [(1e-6, 50.0 * 1e-6), (1e-12, 1e-9)] {
                        let above = phi(b, c(x, y)).unwrap();
                        let below = phi(BranchIndex::new(a, bb + 1), c(x, -y)).unwrap();
                        let gap = (above - below).norm();
                        assert!(gap < tol, "{b} x={x} y={y}: {gap}");
                    }
                }
            }
        }
    }

    #[test]
    fn li2_one_is_zeta2() {
        assert!((phi(BranchIndex::PRINCIPAL, c(1.0, 0.0)).unwrap().re - ZETA2).abs() < 1e-15);
    }
}
