use std::fmt;

use crate::arith::BigInt;
use crate::poly::Var;

/// Identity-language expression. Integer parameters are bound before
/// elaboration; only `x` and `y` survive as indeterminates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Param(String),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Binom(Box<Expr>, Box<Expr>),
    Sum {
        index: String,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn int(n: impl Into<BigInt>) -> Expr {
        Expr::Int(n.into())
    }

    pub fn param(name: impl Into<String>) -> Expr {
        Expr::Param(name.into())
    }

    pub fn x() -> Expr {
        Expr::Var(Var::X)
    }

    pub fn y() -> Expr {
        Expr::Var(Var::Y)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn binom(upper: Expr, lower: Expr) -> Expr {
        Expr::Binom(Box::new(upper), Box::new(lower))
    }

    pub fn sum(index: impl Into<String>, lo: Expr, hi: Expr, body: Expr) -> Expr {
        Expr::Sum {
            index: index.into(),
            lo: Box::new(lo),
            hi: Box::new(hi),
            body: Box::new(body),
        }
    }

    /// Calls `f` on every parameter reference that is not bound by an
    /// enclosing `sum` inside this expression.
    pub fn visit_free_params<'a>(&'a self, f: &mut dyn FnMut(&'a str)) {
        fn go<'a>(e: &'a Expr, bound: &mut Vec<&'a str>, f: &mut dyn FnMut(&'a str)) {
            match e {
                Expr::Int(_) | Expr::Var(_) => {}
                Expr::Param(p) => {
                    if !bound.contains(&p.as_str()) {
                        f(p)
                    }
                }
                Expr::Neg(a) => go(a, bound, f),
                Expr::Add(a, b)
                | Expr::Sub(a, b)
                | Expr::Mul(a, b)
                | Expr::Div(a, b)
                | Expr::Pow(a, b)
                | Expr::Binom(a, b) => {
                    go(a, bound, f);
                    go(b, bound, f);
                }
                Expr::Sum {
                    index,
                    lo,
                    hi,
                    body,
                } => {
                    go(lo, bound, f);
                    go(hi, bound, f);
                    bound.push(index);
                    go(body, bound, f);
                    bound.pop();
                }
            }
        }
        go(self, &mut Vec::new(), f)
    }

    pub fn uses_var(&self, var: Var) -> bool {
        match self {
            Expr::Var(v) => *v == var,
            Expr::Int(_) | Expr::Param(_) => false,
            Expr::Neg(a) => a.uses_var(var),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b)
            | Expr::Binom(a, b) => a.uses_var(var) || b.uses_var(var),
            Expr::Sum { lo, hi, body, .. } => {
                lo.uses_var(var) || hi.uses_var(var) || body.uses_var(var)
            }
        }
    }
}

/// Declared integer parameter with its lower bound (`n >= 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamDecl {
    pub name: String,
    pub min: BigInt,
}

impl ParamDecl {
    pub fn new(name: impl Into<String>, min: impl Into<BigInt>) -> Self {
        ParamDecl {
            name: name.into(),
            min: min.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub name: String,
    pub params: Vec<ParamDecl>,
    pub free_vars: Vec<Var>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    pub fn param(&self, name: &str) -> Option<&ParamDecl> {
        self.params.iter().find(|p| p.name == name)
    }

    /// Parameters referenced by either side that are not declared.
    pub fn undeclared_params(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for side in [&self.lhs, &self.rhs] {
            side.visit_free_params(&mut |p| {
                if self.param(p).is_none() && !out.iter().any(|o| o == p) {
                    out.push(p.to_string());
                }
            });
        }
        out
    }

    /// Indeterminates used by either side but not listed in `free_vars`.
    pub fn undeclared_vars(&self) -> Vec<Var> {
        [Var::X, Var::Y]
            .into_iter()
            .filter(|v| {
                !self.free_vars.contains(v) && (self.lhs.uses_var(*v) || self.rhs.uses_var(*v))
            })
            .collect()
    }
}

/// Values for an identity's parameters, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Binding {
    values: Vec<(String, BigInt)>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn with(mut self, name: impl Into<String>, value: impl Into<BigInt>) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: impl Into<String>, value: impl Into<BigInt>) {
        let name = name.into();
        let value = value.into();
        match self.values.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.values.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&BigInt> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigInt)> {
        self.values.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `n1=0,n2=3`, or `-` when empty.
impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return f.write_str("-");
        }
        for (i, (n, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}
