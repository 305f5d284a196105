//! Certified zeros of a branch, with the Newton trace and the error radius.
//!
//! `cargo run --example certified_zero -- A B`

use dilog_zeros::zero_finder::{approx_zero_first_order, find_zero, has_zero, polar_rectangle};
use dilog_zeros::BranchIndex;

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let branches = match args.as_slice() {
        [a, b] => vec![BranchIndex::new(*a, *b)],
        _ => vec![BranchIndex::new(0, -1), BranchIndex::new(1, 0), BranchIndex::new(-2, 7)],
    };
    for b in branches {
        if !has_zero(b) {
            println!("{b}: no zero");
            continue;
        }
        let cert = find_zero(b, 1e-13).unwrap();
        println!("{b}: zero {:.15}  radius {:.2e}", cert.zero, cert.error_radius);
        for (n, c) in cert.iterations.iter().enumerate() {
            println!("  c{n} = {c:.15}");
        }
        if b.b != 0 {
            let approx = approx_zero_first_order(b).unwrap();
            println!("  first-order approximation {approx:.10}, off by {:.2e}", (approx - cert.zero).norm());
        }
        if b.b > 0 {
            let r = polar_rectangle(b).unwrap();
            println!("  inside rectangle r in [{:.6}, {:.6}], theta in [{:.6}, {:.6}]: {}", r.r1, r.r2, r.theta1, r.theta2, r.contains_strictly(cert.zero));
        }
    }
}
