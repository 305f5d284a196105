//! The zero of a branch three ways: Newton, crossing curves, grid scan.

use dilog_zeros::verify::{brute_force_zero, curve_g, curve_h, curve_intersection_zero};
use dilog_zeros::zero_finder::{find_zero, polar_rectangle};
use dilog_zeros::BranchIndex;

fn main() {
    let b = BranchIndex::new(0, 1);
    let rect = polar_rectangle(b).unwrap();
    for i in 0..=4 {
        let theta = rect.theta1 + (rect.theta2 - rect.theta1) * (i as f64 + 0.5) / 5.0;
        let r = rect.r1 + (rect.r2 - rect.r1) * (i as f64 + 0.5) / 5.0;
        let g = curve_g(b.b, theta).unwrap();
        let h = curve_h(b, r).unwrap();
        println!("g({theta:.4}) = {:.6}   h({r:.4}) = {:.6}", g.value, h.value);
    }
    let newton = find_zero(b, 1e-13).unwrap().zero;
    let crossing = curve_intersection_zero(b, 1e-13).unwrap();
    let scan = brute_force_zero(b, rect.r1, rect.r2, rect.theta1, rect.theta2, 64).unwrap();
    println!("newton   {newton:.14}");
    println!("crossing {crossing:.14}  ({:.1e})", (crossing - newton).norm());
    println!("scan     {scan:.14}  ({:.1e})", (scan - newton).norm());
}
