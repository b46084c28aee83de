//! Binary balls printed as guaranteed decimal enclosures, and decimal text
//! parsed back into balls.
//!
//! ```text
//! cargo run --example decimal_io
//! ```

use midrad::{Ball, BigFloat, Mag};
use num_bigint::BigInt;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mid = BigFloat::from_bigint_2exp(&BigInt::from(884279719003555u64), -48);
    let rad = Mag::from_u64_upper(536870913).mul_2si(-80);
    let x = Ball::new(mid, rad);
    for d in [30, 10, 3, 1] {
        println!("printn({d:>2}) = {}", x.printn(d));
    }
    for s in ["0.1", "[3.14159 +/- 1e-5]", "[+/- 2.5e-1000]", "-1e100000", "nan"] {
        let b = Ball::parse_decimal(s)?;
        println!("{s:<20} -> {:<40} exact form {}", b.printn(20), b.to_exact_string());
    }
    match Ball::parse_decimal("[1.5 +/ 2]") {
        Err(e) => println!("error: {e}"),
        Ok(b) => println!("unexpected {b:?}"),
    }
    Ok(())
}
