//! Parses expressions with a free variable and evaluates them to 30
//! certified digits.
//!
//! ```text
//! cargo run --release --example expression_evaluator
//! ```

use midrad::{eval_adaptive, Bindings, EvalConfig, Expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = EvalConfig::with_digits(30);
    for x in ["0.5", "3", "1000000"] {
        let mut vars = Bindings::new();
        vars.bind_assignment(&format!("x={x}"))?;
        let e: Expr = "log(x) + sin(x)*exp(-x)".parse()?;
        let r = eval_adaptive(&e, &vars, &cfg)?;
        println!("x = {x:>7}: {}  ({} bits, {:?})", r.ball.printn(30), r.prec, r.status);
    }
    let e: Expr = "2^3^2 - sqrt(-1)".parse()?;
    println!("{e} = {}", eval_adaptive(&e, &Bindings::new(), &cfg)?.ball.printn(5));
    Ok(())
}
