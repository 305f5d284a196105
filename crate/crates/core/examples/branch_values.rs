//! Evaluate a few branches of the dilogarithm and walk them around the branch points.

use dilog_zeros::branch::{monodromy_rotate_one, monodromy_rotate_zero, phi_eval, MonodromyElement};
use dilog_zeros::special_fn::{clausen, li2_principal, Complex, KAPPA};
use dilog_zeros::BranchIndex;

fn main() {
    let z = Complex::new(0.3, 0.4);
    let li = li2_principal(z);
    println!("Li2({z}) = {:.15} (err {:.1e})", li.value, li.abs_err_estimate);

    for (a, b) in [(0, 0), (1, 0), (0, 1), (-1, 3)] {
        let branch = BranchIndex::new(a, b);
        let v = phi_eval(branch, z).unwrap();
        println!("phi{branch}({z}) = {:.15}", v.value);
    }

    // a loop about 1 then a loop about 0
    let mut b = BranchIndex::PRINCIPAL;
    b = monodromy_rotate_one(b, true);
    b = monodromy_rotate_zero(b, true);
    println!("principal branch after loops about 1 and 0: {b}");
    let g = MonodromyElement::AROUND_ONE * MonodromyElement::AROUND_ZERO;
    println!("as a group element acting on (0, 0): {}", g.act(BranchIndex::PRINCIPAL));

    println!("Cl2(pi/3) = {:.10} (kappa = {KAPPA})", clausen(std::f64::consts::PI / 3.0));
}
