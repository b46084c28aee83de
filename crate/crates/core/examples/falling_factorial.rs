//! Expands `x(x-1)···(x-n+1)` with a product tree; the coefficients are
//! the signed Stirling numbers of the first kind.
//!
//! ```text
//! cargo run --release --example falling_factorial
//! ```

use std::time::Instant;

use midrad::bench::{falling_factorial, poly_accuracy};

fn main() {
    for n in [10u64, 100, 1000, 4000] {
        let t = Instant::now();
        let p = falling_factorial(n, 64);
        println!(
            "n = {n:>4}: {:>10.2?}, worst accuracy {} bits",
            t.elapsed(),
            poly_accuracy(&p)
        );
        if n == 10 {
            println!("{p:.10}");
        } else {
            println!("  s({n}, 1) = {}", p.coeff(1).printn(15));
        }
    }
}
