//! Doubles the working precision until `sin(π + e^-10000)` is known to 53
//! bits, printing every iterate.
//!
//! ```text
//! cargo run --release --example adaptive_precision
//! ```

use midrad::Ball;

fn main() {
    let mut prec = 64;
    loop {
        let x = Ball::pi(prec).add(&Ball::from_i64(-10000).exp(prec), prec);
        let y = x.sin(prec);
        println!("{:>6} bits: {}", prec, y.printn(15));
        if y.rel_accuracy_bits().at_least(53) {
            break;
        }
        prec *= 2;
    }
}
