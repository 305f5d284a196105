//! `Li_s` for non-integer `s` from the lattice sum and from the integral.

use std::f64::consts::PI;

use dilog_zeros::polylog::lipschitz::{li_s_lipschitz, lipschitz_prefactor};
use dilog_zeros::polylog::{li_neg_m, li_s_jonquiere};
use dilog_zeros::special_fn::Complex;

fn main() {
    let s = Complex::new(-2.5, 3.0);
    let w = Complex::new(0.2, 0.4);
    let f = li_s_lipschitz(s, w, None).unwrap();
    let z = -(PI * w).exp();
    println!("s = {s}: Li_s({z:.6}) = {:.12} (tail {:.1e})", lipschitz_prefactor(s) * f.value, f.abs_err_estimate);

    let m = 3;
    let w = Complex::new(-0.4, 0.0);
    let lattice = lipschitz_prefactor(Complex::new(-(m as f64), 0.0)) * li_s_lipschitz(Complex::new(-(m as f64), 0.0), w, None).unwrap().value;
    let rational = li_neg_m(m, -(PI * w).exp()).unwrap();
    println!("Li_-3 at {:.6}: lattice {lattice:.14}, rational {rational:.14}", -(PI * w).exp());

    let s = Complex::new(10.0, 44.0);
    for z in [Complex::new(0.5, 0.0), Complex::new(-3.0, 1.0), Complex::new(21.14, -6.78)] {
        let v = li_s_jonquiere(s, z).unwrap();
        println!("Li_(10+44i)({z}) = {:.12e} (err {:.1e})", v.value, v.abs_err_estimate);
    }
}
