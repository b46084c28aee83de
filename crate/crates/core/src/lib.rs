//! Arbitrary-precision ball arithmetic: real and complex balls with
//! certified elementary functions, ball polynomials with block
//! multiplication, and an adaptive-precision expression evaluator.

pub mod ball;
pub mod bench;
pub mod bigfloat;
pub mod complexbox;
pub mod eval;
pub mod exponent;
pub mod magnitude;
pub mod poly;

pub use ball::{AccuracyBits, Ball, ParseBallError};
pub use bigfloat::{BigFloat, Rounding, PREC_EXACT};
pub use complexbox::ComplexBox;
pub use eval::{
    eval_adaptive, eval_correctly_rounded, parse_expr, Bindings, EvalConfig, EvalError, Evaluation, Expr, Status,
};
pub use exponent::Exponent;
pub use magnitude::Mag;
pub use poly::{BallPoly, BlockPlan, ComplexPoly, IntPoly, MidRadSplit};
