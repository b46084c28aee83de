//! The recursive factorial product at several precisions, compared with the
//! exact integer.
//!
//! ```text
//! cargo run --release --example factorial
//! ```

use std::time::Instant;

use midrad::bench::factorial;
use midrad::BigFloat;
use num_bigint::BigInt;

fn main() {
    let n = 10_000u64;
    let exact: BigInt = (1..=n).map(BigInt::from).product();
    for prec in [64, 256, 1024, 4096] {
        let t = Instant::now();
        let f = factorial(n, prec);
        let dt = t.elapsed();
        println!(
            "{n}! at {prec:>4} bits: {:>9.2?}  {}  accuracy {} bits, contains exact: {}",
            dt,
            f.printn(12),
            f.rel_accuracy_bits(),
            f.contains_bigfloat(&BigFloat::from_bigint(&exact))
        );
    }
}
