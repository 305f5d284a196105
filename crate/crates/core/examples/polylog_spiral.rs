//! Spiral-seeded zero hunt for `Li_s`.
//!
//! `cargo run --release --example polylog_spiral -- RE IM JMAX`

use dilog_zeros::polylog::find_polylog_zeros;
use dilog_zeros::special_fn::Complex;

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (re, im, jmax) = match args.as_slice() {
        [re, im, j] => (*re, *im, *j as usize),
        _ => (-10.0, -44.0, 139),
    };
    let set = find_polylog_zeros(Complex::new(re, im), jmax).unwrap();
    println!("s = {}: {} zeros by {}, failed seeds {:?}", set.s, set.len(), set.method, set.failed);
    let worst = set.seed_distances.iter().copied().fold(0.0, f64::max);
    println!("largest distance to its seed {worst:.3e}");
    for i in 0..set.len().min(10) {
        println!("j = {:3}  zero {:.12}  seed distance {:.3e}", set.approx_indices[i], set.zeros[i], set.seed_distances[i]);
    }
}
