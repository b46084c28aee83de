//! Correctly rounded elementary functions in every rounding mode.
//!
//! ```text
//! cargo run --release --example correct_rounding
//! ```

use midrad::{eval_correctly_rounded, Ball, BigFloat, Bindings, EvalConfig, Expr, Rounding};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let modes = [
        Rounding::Down,
        Rounding::Up,
        Rounding::TowardZero,
        Rounding::AwayFromZero,
        Rounding::NearestEven,
    ];
    let cfg = EvalConfig::default();
    let mut vars = Bindings::new();
    vars.bind_ball("x", Ball::exact(BigFloat::from_f64(0.1)));
    for f in ["exp(x)", "log(x)", "sin(x)", "atan(x)", "sqrt(x)"] {
        let e: Expr = f.parse()?;
        print!("{f:<8}");
        for rnd in modes {
            let v = eval_correctly_rounded(&e, &vars, 53, rnd, &cfg)?;
            print!(" {:<22}", format!("{:?}", v.to_f64()));
        }
        println!();
    }
    let pi = eval_correctly_rounded(&"pi".parse()?, &vars, 53, Rounding::NearestEven, &cfg)?;
    println!("pi to 53 bits: {pi}");
    Ok(())
}
