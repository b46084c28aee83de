//! Complex boxes near the branch cut of log and sqrt, and tan far from the
//! real axis.
//!
//! ```text
//! cargo run --release --example complex_functions
//! ```

use midrad::{Ball, BigFloat, ComplexBox, Mag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = ComplexBox::new(Ball::from_i64(-100), Ball::new(BigFloat::ZERO, Mag::one()));
    println!("log{z:.5} = {:.5}", z.log(64));
    println!("sqrt{z:.5} = {:.5}", z.sqrt(64));

    let w: ComplexBox = "(-100; 1e-10)".parse()?;
    println!("log{w:.5} = {:.10}", w.log(64));

    let t: ComplexBox = "(1; 1000)".parse()?;
    println!("tan{t:.5} = {:.20}", t.tan(128));
    let u = ComplexBox::new(Ball::from_i64(3), Ball::from_i64(4));
    println!("|{u:.5}| = {:.5}, exp = {:.15}", u.abs(64), u.exp(64));
    Ok(())
}
