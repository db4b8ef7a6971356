use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::expr::Binding;
use crate::arith::{BigInt, Rational};
use crate::poly::{Polynomial, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    Symbolic,
    Points,
    #[default]
    Both,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Symbolic => "symbolic",
            Strategy::Points => "points",
            Strategy::Both => "both",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbolic" => Ok(Strategy::Symbolic),
            "points" => Ok(Strategy::Points),
            "both" => Ok(Strategy::Both),
            other => Err(format!(
                "unknown strategy `{other}` (symbolic, points, both)"
            )),
        }
    }
}

/// The check that produced a failure record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Symbolic,
    Points,
    /// Direct evaluation on a user-supplied integer grid.
    Grid,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Symbolic => "symbolic",
            Method::Points => "points",
            Method::Grid => "grid",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    /// A counterexample was found.
    Fail,
    /// Some binding could not be elaborated.
    Error,
    /// The two strategies disagreed: an engine bug, not a counterexample.
    Inconsistent,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::Inconsistent => "INCONSISTENT",
        })
    }
}

/// Coordinates of a point where the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Witness {
    pub coords: Vec<(Var, BigInt)>,
}

impl Witness {
    pub fn get(&self, var: Var) -> Option<&BigInt> {
        self.coords.iter().find(|(v, _)| *v == var).map(|(_, c)| c)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("-");
        }
        for (i, (v, c)) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}={c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub method: Method,
    pub binding: Binding,
    /// `None` when the identity has no free indeterminates.
    pub witness: Option<Witness>,
    pub lhs: Rational,
    pub rhs: Rational,
    /// `lhs - rhs` as a polynomial, for symbolic failures.
    pub difference: Option<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingError {
    pub binding: Binding,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub binding: Binding,
    pub symbolic_pass: bool,
    pub points_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: String,
    pub strategy: Strategy,
    pub bindings: usize,
    pub failures: Vec<Failure>,
    pub errors: Vec<BindingError>,
    pub disagreements: Vec<Disagreement>,
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, strategy: Strategy) -> Self {
        VerificationReport {
            identity: identity.into(),
            strategy,
            bindings: 0,
            failures: Vec::new(),
            errors: Vec::new(),
            disagreements: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        if !self.disagreements.is_empty() {
            Status::Inconsistent
        } else if !self.errors.is_empty() {
            Status::Error
        } else if !self.failures.is_empty() {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// Appends the records of `other`, which must be about the same identity.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.bindings += other.bindings;
        self.failures.extend(other.failures);
        self.errors.extend(other.errors);
        self.disagreements.extend(other.disagreements);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{}: {} (strategy {}, {} binding{}",
            self.identity,
            self.status(),
            self.strategy,
            self.bindings,
            if self.bindings == 1 { "" } else { "s" }
        );
        if !self.failures.is_empty() {
            let _ = write!(out, ", {} failure record(s)", self.failures.len());
        }
        out.push_str(")\n");
        for d in &self.disagreements {
            let _ = writeln!(
                out,
                "  [disagreement] {}: symbolic={} points={}",
                d.binding,
                pass_word(d.symbolic_pass),
                pass_word(d.points_pass)
            );
        }
        for e in &self.errors {
            let _ = writeln!(out, "  [error] {}: {}", e.binding, e.message);
        }
        for f in &self.failures {
            let _ = write!(out, "  [{}] {}", f.method, f.binding);
            if let Some(w) = &f.witness {
                let _ = write!(out, " at {w}");
            }
            let _ = write!(out, ": lhs = {}, rhs = {}", f.lhs, f.rhs);
            if let Some(d) = &f.difference {
                let _ = write!(out, "; lhs - rhs = {d}");
            }
            out.push('\n');
        }
        out
    }

    /// Tab-separated records: one per disagreement, error and failure, then
    /// a closing `SUMMARY` line.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for d in &self.disagreements {
            let _ = writeln!(
                out,
                "DISAGREE\t{}\t{}\tsymbolic={}\tpoints={}",
                self.identity,
                d.binding,
                pass_word(d.symbolic_pass),
                pass_word(d.points_pass)
            );
        }
        for e in &self.errors {
            let _ = writeln!(
                out,
                "ERROR\t{}\t{}\t{}",
                self.identity, e.binding, e.message
            );
        }
        for f in &self.failures {
            let witness = f
                .witness
                .as_ref()
                .map_or_else(|| "-".to_string(), |w| w.to_string());
            let _ = writeln!(
                out,
                "FAIL\t{}\t{}\t{}\t{}\t{}\t{}",
                self.identity, f.method, f.binding, witness, f.lhs, f.rhs
            );
        }
        let _ = writeln!(
            out,
            "SUMMARY\t{}\t{}\t{}\t{}",
            self.identity,
            self.strategy,
            self.bindings,
            self.status()
        );
        out
    }
}
