//! Eulerian polynomials, their real zeros and Sobolev's approximation.

use dilog_zeros::polylog::{eulerian, eulerian_zeros, sobolev_K, sobolev_approx, sobolev_epsilon};

fn main() {
    let m: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);
    let p = eulerian(m).unwrap();
    let coeffs: Vec<String> = p.coeffs.iter().map(|c| c.to_string()).collect();
    println!("A_{m} coefficients: {}", coeffs.join(" "));
    let zeros = eulerian_zeros(m).unwrap();
    for j in 1..m {
        let lambda = zeros[m - 1 - j];
        let approx = sobolev_approx(m, j).unwrap();
        println!("j = {j:2}  zero {lambda:>22.12}  approx {approx:>22.12}  eps {:+.2e}", sobolev_epsilon(m, j, lambda));
    }
    if m >= 2 {
        println!("K(m, 1000) = {:.4}", sobolev_K(m, 1000.0).unwrap());
    }
}
