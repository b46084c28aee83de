//! π and log 2 at increasing precision; repeated requests are served from
//! a cache and give identical balls.
//!
//! ```text
//! cargo run --release --example constants
//! ```

use std::time::Instant;

use midrad::Ball;

fn main() {
    for digits in [50usize, 1000, 100_000] {
        let prec = (digits as f64 * std::f64::consts::LOG2_10) as u64 + 16;
        let t = Instant::now();
        let pi = Ball::pi(prec);
        let first = t.elapsed();
        let t = Instant::now();
        assert_eq!(Ball::pi(prec), pi);
        let again = t.elapsed();
        let text = pi.printn(digits);
        let shown = if text.len() > 60 {
            format!("{}...{}", &text[..40], &text[text.len() - 18..])
        } else {
            text
        };
        println!("pi   {digits:>6} digits in {first:>10.2?} (cached {again:.2?}): {shown}");
    }
    println!("log2 {}", Ball::ln2(200).printn(50));
}
