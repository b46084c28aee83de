//! Floating-point arithmetic with an explicit precision and rounding mode
//! per operation, and exponents far outside any hardware range.
//!
//! ```text
//! cargo run --example bigfloat_rounding
//! ```

use midrad::{BigFloat, Exponent, Rounding};
use num_bigint::BigInt;

fn main() {
    let one = BigFloat::one();
    let three = BigFloat::from_bigint(&BigInt::from(3));
    for rnd in [Rounding::Down, Rounding::Up, Rounding::NearestEven] {
        let (q, inexact) = one.div(&three, 10, rnd);
        println!("1/3 to 10 bits, {rnd:?}: {q} (inexact: {inexact})");
    }
    let huge = BigFloat::pow2(Exponent::from_bigint(BigInt::from(1) << 100usize));
    let sum = huge.add(&one, 64, Rounding::Up).0;
    println!("2^(2^100) + 1 rounded up to 64 bits has {} mantissa bits", sum.bits());
    let terms = [huge.clone(), one.clone(), huge.neg()];
    println!(
        "exact sum of 2^(2^100), 1 and -2^(2^100): {}",
        BigFloat::sum(&terms, 53, Rounding::NearestEven).0
    );
    let (r, _) = BigFloat::from_f64(2.0).sqrt(100, Rounding::NearestEven);
    println!("sqrt(2) to 100 bits: {r}");
}
