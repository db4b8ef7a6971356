use std::fmt::Write as _;

use crate::engine::{Expr, Identity};

// Binding strength, loosest first.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const POWER: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

fn strength(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Pow(..) => POWER,
        Expr::Neg(_) => UNARY,
        Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => UNARY,
        _ => ATOM,
    }
}

/// Canonical text for `e` with the fewest parentheses that reparse to the
/// same tree. A negative power base is always parenthesized, `(-1)^n`, for
/// readability. Negative integer literals print as `-k` and reparse as
/// `Neg(k)`; the parser itself never produces them.
pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, SUM);
    out
}

fn write_expr(out: &mut String, e: &Expr, min: u8) {
    let wrap = strength(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Int(n) => {
            let _ = write!(out, "{n}");
        }
        Expr::Param(p) => out.push_str(p),
        Expr::Var(v) => out.push_str(v.name()),
        Expr::Neg(a) => {
            out.push('-');
            write_expr(out, a, UNARY);
        }
        Expr::Add(a, b) => binary(out, a, " + ", b, SUM),
        Expr::Sub(a, b) => binary(out, a, " - ", b, SUM),
        Expr::Mul(a, b) => binary(out, a, "*", b, PRODUCT),
        Expr::Div(a, b) => binary(out, a, "/", b, PRODUCT),
        Expr::Pow(a, b) => {
            write_expr(out, a, ATOM);
            out.push('^');
            write_expr(out, b, POWER);
        }
        Expr::Binom(a, b) => {
            out.push_str("binom(");
            write_expr(out, a, SUM);
            out.push_str(", ");
            write_expr(out, b, SUM);
            out.push(')');
        }
        Expr::Sum {
            index,
            lo,
            hi,
            body,
        } => {
            let _ = write!(out, "sum({index} = ");
            write_expr(out, lo, SUM);
            out.push_str(" .. ");
            write_expr(out, hi, SUM);
            out.push_str(", ");
            write_expr(out, body, SUM);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Left-associative binary operator at level `level`.
fn binary(out: &mut String, a: &Expr, op: &str, b: &Expr, level: u8) {
    write_expr(out, a, level);
    out.push_str(op);
    write_expr(out, b, level + 1);
}

/// The identity in file syntax, one section per line.
pub fn print_identity(id: &Identity) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "identity {}", id.name);
    out.push_str("params");
    for (i, p) in id.params.iter().enumerate() {
        let sep = if i == 0 { " " } else { ", " };
        let _ = write!(out, "{sep}{} >= {}", p.name, p.min);
    }
    out.push('\n');
    out.push_str("vars");
    for v in &id.free_vars {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    let _ = writeln!(out, "lhs {}", print_expr(&id.lhs));
    let _ = writeln!(out, "rhs {}", print_expr(&id.rhs));
    out
}

pub fn print_identity_file(ids: &[Identity]) -> String {
    ids.iter()
        .map(print_identity)
        .collect::<Vec<_>>()
        .join("\n")
}
