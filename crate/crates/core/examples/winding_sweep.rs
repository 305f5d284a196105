//! Count zeros branch by branch with the argument principle and compare
//! with the existence rule.

use dilog_zeros::verify::{expected_count, winding_count_default};
use dilog_zeros::BranchIndex;

fn main() {
    let n: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let mut bad = 0;
    for b in 0..=n {
        let row: Vec<String> = (-n..=n)
            .map(|a| {
                let branch = BranchIndex::new(a, b);
                match winding_count_default(branch) {
                    Ok(r) if r.count == expected_count(branch) => r.count.to_string(),
                    Ok(r) => {
                        bad += 1;
                        format!("!{}", r.count)
                    }
                    Err(_) => {
                        bad += 1;
                        "?".into()
                    }
                }
            })
            .collect();
        println!("B = {b:2}: {}", row.join(" "));
    }
    println!("{bad} disagreements");
}
