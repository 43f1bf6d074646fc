//! A small expression language for plane curves.
//!
//! Expressions are functions of a single variable `u` built from literals,
//! `+ - * /`, unary minus, integer powers `^`, `sin`, `cos`, `exp`, `log`
//! and parentheses. Precedence, tightest first: power, unary minus,
//! multiplication and division, addition and subtraction; binary operators
//! associate to the left.
//!
//! The module provides evaluation with guarded division and logarithm,
//! exact symbolic differentiation with conservative simplification
//! (constant folding and 0/1 absorption only), and a fully parenthesized
//! printer whose output parses back to the identical tree.

mod parser;

pub use parser::{parse, ParseError};

use rand::Rng;
use thiserror::Error;

/// Evaluation failures. Division and log are guarded; anything that
/// overflows to a non-finite value is reported rather than propagated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of a non-positive value")]
    LogDomain,
    #[error("non-finite intermediate value")]
    NonFinite,
}

/// Expression tree over the single variable `u`.
///
/// Numeric literals are non-negative by construction (the parser emits a
/// [`Expr::Neg`] node for a leading minus, and simplification keeps folded
/// constants in that shape), which lets the printer round-trip exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power of the base expression.
    Pow(Box<Expr>, i32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

impl Expr {
    /// Evaluate at `u`.
    pub fn eval(&self, u: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(c) => *c,
            Expr::Var => u,
            Expr::Neg(e) => -e.eval(u)?,
            Expr::Add(a, b) => a.eval(u)? + b.eval(u)?,
            Expr::Sub(a, b) => a.eval(u)? - b.eval(u)?,
            Expr::Mul(a, b) => a.eval(u)? * b.eval(u)?,
            Expr::Div(a, b) => {
                let den = b.eval(u)?;
                if den == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval(u)? / den
            }
            Expr::Pow(e, n) => {
                let base = e.eval(u)?;
                if base == 0.0 && *n < 0 {
                    return Err(EvalError::DivisionByZero);
                }
                base.powi(*n)
            }
            Expr::Sin(e) => e.eval(u)?.sin(),
            Expr::Cos(e) => e.eval(u)?.cos(),
            Expr::Exp(e) => e.eval(u)?.exp(),
            Expr::Log(e) => {
                let arg = e.eval(u)?;
                if arg <= 0.0 {
                    return Err(EvalError::LogDomain);
                }
                arg.ln()
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    /// Exact symbolic derivative, simplified.
    pub fn differentiate(&self) -> Expr {
        simplify(&self.raw_derivative())
    }

    fn raw_derivative(&self) -> Expr {
        use Expr::*;
        match self {
            Num(_) => Num(0.0),
            Var => Num(1.0),
            Neg(e) => Neg(Box::new(e.raw_derivative())),
            Add(a, b) => Add(Box::new(a.raw_derivative()), Box::new(b.raw_derivative())),
            Sub(a, b) => Sub(Box::new(a.raw_derivative()), Box::new(b.raw_derivative())),
            Mul(a, b) => Add(
                Box::new(Mul(Box::new(a.raw_derivative()), b.clone())),
                Box::new(Mul(a.clone(), Box::new(b.raw_derivative()))),
            ),
            Div(a, b) => Div(
                Box::new(Sub(
                    Box::new(Mul(Box::new(a.raw_derivative()), b.clone())),
                    Box::new(Mul(a.clone(), Box::new(b.raw_derivative()))),
                )),
                Box::new(Pow(b.clone(), 2)),
            ),
            Pow(e, n) => Mul(
                Box::new(Mul(
                    Box::new(Num(*n as f64)),
                    Box::new(Pow(e.clone(), n - 1)),
                )),
                Box::new(e.raw_derivative()),
            ),
            Sin(e) => Mul(Box::new(Cos(e.clone())), Box::new(e.raw_derivative())),
            Cos(e) => Neg(Box::new(Mul(
                Box::new(Sin(e.clone())),
                Box::new(e.raw_derivative()),
            ))),
            Exp(e) => Mul(Box::new(Exp(e.clone())), Box::new(e.raw_derivative())),
            Log(e) => Div(Box::new(e.raw_derivative()), e.clone()),
        }
    }

    /// Fully parenthesized text form; [`parse`] recovers the identical tree.
    pub fn print(&self) -> String {
        match self {
            Expr::Num(c) => format!("{c}"),
            Expr::Var => "u".to_string(),
            Expr::Neg(e) => format!("(-{})", e.print()),
            Expr::Add(a, b) => format!("({}+{})", a.print(), b.print()),
            Expr::Sub(a, b) => format!("({}-{})", a.print(), b.print()),
            Expr::Mul(a, b) => format!("({}*{})", a.print(), b.print()),
            Expr::Div(a, b) => format!("({}/{})", a.print(), b.print()),
            Expr::Pow(e, n) => format!("({}^{})", e.print(), n),
            Expr::Sin(e) => format!("sin({})", e.print()),
            Expr::Cos(e) => format!("cos({})", e.print()),
            Expr::Exp(e) => format!("exp({})", e.print()),
            Expr::Log(e) => format!("log({})", e.print()),
        }
    }
}

/// Wrap a folded constant so literals stay non-negative.
fn fold(c: f64) -> Expr {
    if c < 0.0 {
        Expr::Neg(Box::new(Expr::Num(-c)))
    } else if c == 0.0 {
        Expr::Num(0.0)
    } else {
        Expr::Num(c)
    }
}

fn as_const(e: &Expr) -> Option<f64> {
    match e {
        Expr::Num(c) => Some(*c),
        Expr::Neg(inner) => as_const(inner).map(|c| -c),
        _ => None,
    }
}

/// Conservative bottom-up simplification: constant folding plus the 0/1
/// identities. No distribution, factoring or other term rewriting.
pub fn simplify(e: &Expr) -> Expr {
    use Expr::*;
    match e {
        Num(_) | Var => e.clone(),
        Neg(inner) => {
            let s = simplify(inner);
            match s {
                Neg(x) => *x,
                Num(c) if c == 0.0 => Num(0.0),
                other => Neg(Box::new(other)),
            }
        }
        Add(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (as_const(&a), as_const(&b)) {
                (Some(x), Some(y)) if (x + y).is_finite() => fold(x + y),
                (Some(x), _) if x == 0.0 => b,
                (_, Some(y)) if y == 0.0 => a,
                _ => Add(Box::new(a), Box::new(b)),
            }
        }
        Sub(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (as_const(&a), as_const(&b)) {
                (Some(x), Some(y)) if (x - y).is_finite() => fold(x - y),
                (Some(x), _) if x == 0.0 => simplify(&Neg(Box::new(b))),
                (_, Some(y)) if y == 0.0 => a,
                _ => Sub(Box::new(a), Box::new(b)),
            }
        }
        Mul(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (as_const(&a), as_const(&b)) {
                (Some(x), Some(y)) if (x * y).is_finite() => fold(x * y),
                (Some(x), _) if x == 0.0 => Num(0.0),
                (_, Some(y)) if y == 0.0 => Num(0.0),
                (Some(x), _) if x == 1.0 => b,
                (_, Some(y)) if y == 1.0 => a,
                _ => Mul(Box::new(a), Box::new(b)),
            }
        }
        Div(a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            match (as_const(&a), as_const(&b)) {
                (Some(x), Some(y)) if y != 0.0 && (x / y).is_finite() => fold(x / y),
                (_, Some(y)) if y == 1.0 => a,
                _ => Div(Box::new(a), Box::new(b)),
            }
        }
        Pow(base, n) => {
            let base = simplify(base);
            if *n == 0 {
                // 0^0 = 1 by the powi convention.
                return Num(1.0);
            }
            if *n == 1 {
                return base;
            }
            if let Some(x) = as_const(&base) {
                if !(x == 0.0 && *n < 0) {
                    let v = x.powi(*n);
                    if v.is_finite() {
                        return fold(v);
                    }
                }
            }
            Pow(Box::new(base), *n)
        }
        Sin(inner) => fold_unary(inner, f64::sin, Sin),
        Cos(inner) => fold_unary(inner, f64::cos, Cos),
        Exp(inner) => fold_unary(inner, f64::exp, Exp),
        Log(inner) => {
            let s = simplify(inner);
            match as_const(&s) {
                Some(x) if x > 0.0 && x.ln().is_finite() => fold(x.ln()),
                _ => Log(Box::new(s)),
            }
        }
    }
}

fn fold_unary(inner: &Expr, f: fn(f64) -> f64, ctor: fn(Box<Expr>) -> Expr) -> Expr {
    let s = simplify(inner);
    match as_const(&s) {
        Some(x) if f(x).is_finite() => fold(f(x)),
        _ => ctor(Box::new(s)),
    }
}

/// A pair of expressions describing a plane curve u ↦ (γ₁(u), γ₂(u)) on an
/// interval. Both components must evaluate finitely, with their first and
/// second derivatives, across the interval; [`CurveSpec::validate`] spot
/// checks this on a sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub gamma1: Expr,
    pub gamma2: Expr,
    pub interval: (f64, f64),
}

impl CurveSpec {
    pub fn parse(gamma1: &str, gamma2: &str, interval: (f64, f64)) -> Result<Self, ParseError> {
        Ok(CurveSpec {
            gamma1: parse(gamma1)?,
            gamma2: parse(gamma2)?,
            interval,
        })
    }

    /// Evaluate both components and their first two derivatives on a sample
    /// grid, surfacing the first failure.
    pub fn validate(&self) -> Result<(), EvalError> {
        let (lo, hi) = self.interval;
        let n = 65;
        for expr in [&self.gamma1, &self.gamma2] {
            let d1 = expr.differentiate();
            let d2 = d1.differentiate();
            for k in 0..n {
                let u = lo + (hi - lo) * (k as f64) / ((n - 1) as f64);
                expr.eval(u)?;
                d1.eval(u)?;
                d2.eval(u)?;
            }
        }
        Ok(())
    }
}

/// Draw a random expression by a depth-bounded grammar walk. Log arguments
/// are kept positive by construction so that sampled expressions usually
/// evaluate cleanly.
pub fn sample_expr(rng: &mut impl Rng, depth: usize) -> Expr {
    use Expr::*;
    if depth == 0 {
        return if rng.gen_bool(0.6) {
            Var
        } else {
            // Halves print compactly and round-trip exactly.
            Num((rng.gen_range(1..=6) as f64) * 0.5)
        };
    }
    let next = depth - 1;
    match rng.gen_range(0..10) {
        0 => Neg(Box::new(sample_expr(rng, next))),
        1 => Add(
            Box::new(sample_expr(rng, next)),
            Box::new(sample_expr(rng, next)),
        ),
        2 => Sub(
            Box::new(sample_expr(rng, next)),
            Box::new(sample_expr(rng, next)),
        ),
        3 => Mul(
            Box::new(sample_expr(rng, next)),
            Box::new(sample_expr(rng, next)),
        ),
        4 => Div(
            Box::new(sample_expr(rng, next)),
            Box::new(Add(
                Box::new(Pow(Box::new(sample_expr(rng, next)), 2)),
                Box::new(Num(1.0)),
            )),
        ),
        5 => Pow(Box::new(sample_expr(rng, next)), rng.gen_range(2..=3)),
        6 => Sin(Box::new(sample_expr(rng, next))),
        7 => Cos(Box::new(sample_expr(rng, next))),
        8 => Exp(Box::new(sample_expr(rng, next))),
        _ => Log(Box::new(Add(
            Box::new(Pow(Box::new(sample_expr(rng, next)), 2)),
            Box::new(Num(1.0)),
        ))),
    }
}
