use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use midrad::bench::{BenchRow, Workload};
use midrad::{eval_adaptive, eval_correctly_rounded, Bindings, EvalConfig, EvalError, Expr, Rounding, Status};

#[derive(Parser)]
#[command(name = "midrad", about = "Certified arbitrary-precision evaluation", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct EvalArgs {
    expr: String,
    /// Significant digits to certify and print
    #[arg(long, default_value_t = 15)]
    digits: u64,
    #[arg(long, default_value_t = 64)]
    start_prec: u64,
    #[arg(long, default_value_t = 1 << 24)]
    max_prec: u64,
    /// Binding `name=value`; the value may be a decimal or `[m +/- r]`
    #[arg(long = "var", value_name = "NAME=VALUE")]
    vars: Vec<String>,
    /// Print every iterate of the precision loop
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Down,
    Up,
    Zero,
    Away,
    Nearest,
}

impl From<Mode> for Rounding {
    fn from(m: Mode) -> Rounding {
        match m {
            Mode::Down => Rounding::Down,
            Mode::Up => Rounding::Up,
            Mode::Zero => Rounding::TowardZero,
            Mode::Away => Rounding::AwayFromZero,
            Mode::Nearest => Rounding::NearestEven,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Factorial,
    Falling,
    Polymul,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate to a certified relative accuracy
    Eval(EvalArgs),
    /// Correctly round the value to a binary format
    Round {
        #[command(flatten)]
        eval: EvalArgs,
        #[arg(long, default_value_t = 53)]
        bits: u64,
        #[arg(long, value_enum, default_value = "nearest")]
        mode: Mode,
    },
    /// Emit benchmark timings as CSV
    Bench {
        #[arg(long, value_enum, default_value = "all")]
        kind: Kind,
        #[arg(long, value_delimiter = ',', default_value = "100,1000")]
        sizes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "64,256")]
        precs: Vec<u64>,
    },
}

fn setup(a: &EvalArgs) -> Result<(Expr, Bindings, EvalConfig), EvalError> {
    let expr: Expr = a.expr.parse()?;
    let mut vars = Bindings::new();
    for v in &a.vars {
        vars.bind_assignment(v)?;
    }
    let cfg = EvalConfig {
        start_prec: a.start_prec,
        max_prec: a.max_prec,
        ..EvalConfig::with_digits(a.digits)
    };
    Ok((expr, vars, cfg))
}

fn run(cli: Cli) -> Result<ExitCode, EvalError> {
    match cli.cmd {
        Cmd::Eval(a) => {
            let (expr, vars, cfg) = setup(&a)?;
            let d = a.digits as usize;
            let r = eval_adaptive_printing(&expr, &vars, &cfg, a.trace, d)?;
            println!("{}", r.ball.printn(d));
            if r.status == Status::Unconverged {
                eprintln!("unconverged at {} bits", r.prec);
                return Ok(ExitCode::from(2));
            }
        }
        Cmd::Round { eval, bits, mode } => {
            let (expr, vars, cfg) = setup(&eval)?;
            match eval_correctly_rounded(&expr, &vars, bits, mode.into(), &cfg) {
                Ok(v) => println!("{v}"),
                Err(e @ EvalError::Unconverged { .. }) => {
                    eprintln!("{e}");
                    return Ok(ExitCode::from(2));
                }
                Err(EvalError::Indeterminate) => println!("nan"),
                Err(e) => return Err(e),
            }
        }
        Cmd::Bench { kind, sizes, precs } => {
            let workloads: &[Workload] = match kind {
                Kind::Factorial => &[Workload::Factorial],
                Kind::Falling => &[Workload::FallingFactorial],
                Kind::Polymul => &[Workload::PolymulBlock, Workload::PolymulSchoolbook],
                Kind::All => &Workload::ALL,
            };
            println!("{}", BenchRow::HEADER);
            for w in workloads {
                for &n in &sizes {
                    for &p in &precs {
                        println!("{}", w.run(n, p));
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn eval_adaptive_printing(
    expr: &Expr,
    vars: &Bindings,
    cfg: &EvalConfig,
    trace: bool,
    digits: usize,
) -> Result<midrad::Evaluation, EvalError> {
    if !trace {
        return eval_adaptive(expr, vars, cfg);
    }
    midrad::eval::eval_adaptive_traced(expr, vars, cfg, |prec, b| {
        eprintln!("{prec}: {}", b.printn(digits));
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
