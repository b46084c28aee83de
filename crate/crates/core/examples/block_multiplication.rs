//! Squares the series of exp(x) truncated to 1000 terms and compares the
//! block and schoolbook products.
//!
//! ```text
//! cargo run --release --example block_multiplication
//! ```

use std::time::Instant;

use midrad::bench::{exp_series, poly_accuracy};
use midrad::poly::{height_cap, plan_blocks};

fn main() {
    let (n, prec) = (1000, 333);
    let f = exp_series(n, prec);
    let plan = plan_blocks(&f, &f, prec);
    println!("scale 2^{} per index, height cap {} bits", plan.scale, height_cap(prec));
    for (k, r) in plan.f_blocks.iter().enumerate() {
        println!("  block {k}: coefficients {:>4}..{:<4}", r.start, r.end);
    }
    let t = Instant::now();
    let blk = f.mul_block(&f, prec);
    let tb = t.elapsed();
    let t = Instant::now();
    let sch = f.mul_schoolbook(&f, prec);
    let ts = t.elapsed();
    println!("block      {tb:>10.2?}  worst accuracy {} bits", poly_accuracy(&blk));
    println!("schoolbook {ts:>10.2?}  worst accuracy {} bits", poly_accuracy(&sch));
    // (e^x)^2 = e^(2x): coefficient k is 2^k/k!
    for k in [0, 1, 10, 500, 998] {
        println!("c[{k:>3}] = {}", blk.coeff(k).printn(20));
    }
}
