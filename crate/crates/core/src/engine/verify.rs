use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use super::elaborate::{degree_bound, elaborate};
use super::expr::{Binding, Identity};
use super::interp::evaluate;
use super::report::{
    BindingError, Disagreement, Failure, Method, Strategy, VerificationReport, Witness,
};
use super::EngineError;
use crate::arith::{BigInt, Rational};
use crate::poly::Var;

/// Inclusive integer interval `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamRange {
    pub lo: i64,
    pub hi: i64,
}

impl ParamRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        ParamRange { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo) as usize + 1
        }
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

pub type Ranges = BTreeMap<String, ParamRange>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UsageError {
    #[error("no range given for parameter `{0}`")]
    MissingRange(String),
    #[error("range {range} for `{param}` is empty")]
    EmptyRange { param: String, range: ParamRange },
    #[error("range {range} for `{param}` leaves its domain `{param} >= {min}`")]
    OutsideDomain {
        param: String,
        range: ParamRange,
        min: BigInt,
    },
    #[error("malformed range `{0}` (expected name=lo..hi)")]
    Malformed(String),
}

/// Parses `n=0..20`.
pub fn parse_range(text: &str) -> Result<(String, ParamRange), UsageError> {
    let bad = || UsageError::Malformed(text.to_string());
    let (name, interval) = text.split_once('=').ok_or_else(bad)?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(bad());
    }
    let (lo, hi) = interval.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse::<i64>().map_err(|_| bad())?;
    let hi = hi.trim().parse::<i64>().map_err(|_| bad())?;
    Ok((name.to_string(), ParamRange::new(lo, hi)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub strategy: Strategy,
    /// Additionally evaluate both sides at every integer point of this
    /// interval (for each free indeterminate).
    pub grid: Option<ParamRange>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            strategy: Strategy::Both,
            grid: None,
        }
    }
}

/// Checks that `binding` sets exactly the declared parameters, each within
/// its domain.
pub fn check_binding(id: &Identity, binding: &Binding) -> Result<(), EngineError> {
    for (name, _) in binding.iter() {
        if id.param(name).is_none() {
            return Err(EngineError::UnexpectedParam(name.to_string()));
        }
    }
    for decl in &id.params {
        let value = binding
            .get(&decl.name)
            .ok_or_else(|| EngineError::MissingParam(decl.name.clone()))?;
        if *value < decl.min {
            return Err(EngineError::OutOfDomain {
                param: decl.name.clone(),
                value: value.clone(),
                min: decl.min.clone(),
            });
        }
    }
    Ok(())
}

/// All bindings of the Cartesian product of `ranges`, in declaration order
/// with the last parameter varying fastest.
pub fn bindings_for(id: &Identity, ranges: &Ranges) -> Result<Vec<Binding>, UsageError> {
    let mut axes = Vec::with_capacity(id.params.len());
    for decl in &id.params {
        let range = *ranges
            .get(&decl.name)
            .ok_or_else(|| UsageError::MissingRange(decl.name.clone()))?;
        if range.is_empty() {
            return Err(UsageError::EmptyRange {
                param: decl.name.clone(),
                range,
            });
        }
        if BigInt::from(range.lo) < decl.min {
            return Err(UsageError::OutsideDomain {
                param: decl.name.clone(),
                range,
                min: decl.min.clone(),
            });
        }
        axes.push((decl.name.as_str(), range));
    }
    let mut out = vec![Binding::new()];
    for (name, range) in axes {
        out = out
            .into_iter()
            .flat_map(|b| (range.lo..=range.hi).map(move |v| b.clone().with(name, v)))
            .collect();
    }
    Ok(out)
}

type Outcome = Result<Option<Failure>, EngineError>;

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn grid_axes(id: &Identity, extents: [(Var, Vec<i64>); 2]) -> Vec<(Var, Vec<i64>)> {
    extents
        .into_iter()
        .filter(|(v, values)| id.free_vars.contains(v) || values.len() > 1)
        .collect()
}

fn point_of(axes: &[(Var, Vec<i64>)], idx: &[usize]) -> (Rational, Rational, Witness) {
    let mut x = Rational::zero();
    let mut y = Rational::zero();
    let mut w = Witness::default();
    for ((v, values), i) in axes.iter().zip(idx) {
        let c = values[*i];
        match v {
            Var::X => x = int(c),
            Var::Y => y = int(c),
        }
        w.coords.push((*v, BigInt::from(c)));
    }
    (x, y, w)
}

/// Walks the grid spanned by `axes` (first axis outermost) and returns the
/// first point where `differs` reports a mismatch.
fn scan<E>(
    axes: &[(Var, Vec<i64>)],
    mut differs: impl FnMut(&Rational, &Rational) -> Result<Option<(Rational, Rational)>, E>,
) -> Result<Option<(Witness, Rational, Rational)>, E> {
    let mut idx = vec![0usize; axes.len()];
    loop {
        let (x, y, w) = point_of(axes, &idx);
        if let Some((l, r)) = differs(&x, &y)? {
            return Ok(Some((w, l, r)));
        }
        // Odometer, last axis fastest.
        let mut k = axes.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axes[k].1.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn witness_or_none(id: &Identity, w: Witness) -> Option<Witness> {
    (!w.coords.is_empty() || !id.free_vars.is_empty()).then_some(w)
}

fn symbolic_outcome(id: &Identity, binding: &Binding) -> Outcome {
    check_binding(id, binding)?;
    let lhs = elaborate(&id.lhs, binding)?;
    let rhs = elaborate(&id.rhs, binding)?;
    let difference = &lhs - &rhs;
    if difference.is_zero() {
        return Ok(None);
    }
    // A nonzero polynomial cannot vanish on a grid one wider than its degree
    // in each variable, so this always finds a witness.
    let axis = |v: Var| (v, (0..=difference.degree_in(v).max(0)).collect::<Vec<_>>());
    let axes = grid_axes(id, [axis(Var::X), axis(Var::Y)]);
    let found = scan(&axes, |x, y| {
        Ok::<_, EngineError>(
            (!difference.eval(x, y).is_zero()).then(|| (lhs.eval(x, y), rhs.eval(x, y))),
        )
    })?;
    let (w, l, r) = found.expect("nonzero polynomial vanished on its degree grid");
    Ok(Some(Failure {
        method: Method::Symbolic,
        binding: binding.clone(),
        witness: witness_or_none(id, w),
        lhs: l,
        rhs: r,
        difference: Some(difference),
    }))
}

fn points_outcome(id: &Identity, binding: &Binding) -> Outcome {
    check_binding(id, binding)?;
    let bound = |v: Var| -> Result<u64, EngineError> {
        Ok(degree_bound(&id.lhs, binding, v)?.max(degree_bound(&id.rhs, binding, v)?))
    };
    let dx = bound(Var::X)?;
    let dy = bound(Var::Y)?;
    let span = |d: u64| -> Result<Vec<i64>, EngineError> {
        let d = i64::try_from(d).map_err(|_| EngineError::TooLarge {
            what: "degree bound",
        })?;
        Ok((0..=d).collect())
    };
    let axes = grid_axes(id, [(Var::X, span(dx)?), (Var::Y, span(dy)?)]);
    let found = compare_on(id, binding, &axes)?;
    Ok(found.map(|(w, l, r)| Failure {
        method: Method::Points,
        binding: binding.clone(),
        witness: witness_or_none(id, w),
        lhs: l,
        rhs: r,
        difference: None,
    }))
}

fn compare_on(
    id: &Identity,
    binding: &Binding,
    axes: &[(Var, Vec<i64>)],
) -> Result<Option<(Witness, Rational, Rational)>, EngineError> {
    scan(axes, |x, y| {
        let l = evaluate(&id.lhs, binding, x, y)?;
        let r = evaluate(&id.rhs, binding, x, y)?;
        Ok((l != r).then_some((l, r)))
    })
}

fn grid_outcome(id: &Identity, binding: &Binding, grid: ParamRange) -> Outcome {
    check_binding(id, binding)?;
    let values: Vec<i64> = (grid.lo..=grid.hi).collect();
    let axes: Vec<(Var, Vec<i64>)> = [Var::X, Var::Y]
        .into_iter()
        .filter(|v| id.free_vars.contains(v))
        .map(|v| (v, values.clone()))
        .collect();
    let found = compare_on(id, binding, &axes)?;
    Ok(found.map(|(w, l, r)| Failure {
        method: Method::Grid,
        binding: binding.clone(),
        witness: witness_or_none(id, w),
        lhs: l,
        rhs: r,
        difference: None,
    }))
}

fn single(
    id: &Identity,
    binding: &Binding,
    strategy: Strategy,
    outcome: Outcome,
) -> VerificationReport {
    let mut report = VerificationReport::new(&id.name, strategy);
    report.bindings = 1;
    record(&mut report, binding, outcome);
    report
}

fn record(report: &mut VerificationReport, binding: &Binding, outcome: Outcome) {
    match outcome {
        Ok(None) => {}
        Ok(Some(f)) => report.failures.push(f),
        Err(e) => report.errors.push(BindingError {
            binding: binding.clone(),
            message: e.to_string(),
        }),
    }
}

/// Passes iff both sides elaborate to the same polynomial.
pub fn verify_symbolic(id: &Identity, binding: &Binding) -> VerificationReport {
    single(
        id,
        binding,
        Strategy::Symbolic,
        symbolic_outcome(id, binding),
    )
}

/// Passes iff both sides agree on the integer grid `{0..Dx} x {0..Dy}`,
/// where `Dx`, `Dy` bound the degree of `lhs - rhs` in each indeterminate.
/// A polynomial of degree at most `D` in `x` over the integral domain
/// `Q[y]` with `D + 1` roots is zero, so agreement on the grid is a proof.
pub fn verify_points(id: &Identity, binding: &Binding) -> VerificationReport {
    single(id, binding, Strategy::Points, points_outcome(id, binding))
}

/// Compares both sides numerically at every point of `grid` (per free
/// indeterminate). Evidence only; not a proof.
pub fn verify_grid(id: &Identity, binding: &Binding, grid: ParamRange) -> VerificationReport {
    single(
        id,
        binding,
        Strategy::Points,
        grid_outcome(id, binding, grid),
    )
}

pub fn verify_range(
    id: &Identity,
    ranges: &Ranges,
    strategy: Strategy,
) -> Result<VerificationReport, UsageError> {
    verify_range_with(
        id,
        ranges,
        &VerifyOptions {
            strategy,
            grid: None,
        },
    )
}

/// Sweeps every binding in `ranges`. Bindings may be checked in parallel;
/// records are merged in binding order.
pub fn verify_range_with(
    id: &Identity,
    ranges: &Ranges,
    opts: &VerifyOptions,
) -> Result<VerificationReport, UsageError> {
    if let Some(g) = opts.grid {
        if g.is_empty() {
            return Err(UsageError::EmptyRange {
                param: "grid".into(),
                range: g,
            });
        }
    }
    let bindings = bindings_for(id, ranges)?;
    let per_binding: Vec<VerificationReport> = bindings
        .par_iter()
        .map(|b| check_one(id, b, opts))
        .collect();
    let mut report = VerificationReport::new(&id.name, opts.strategy);
    for r in per_binding {
        report.absorb(r);
    }
    Ok(report)
}

fn check_one(id: &Identity, binding: &Binding, opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::new(&id.name, opts.strategy);
    report.bindings = 1;
    match opts.strategy {
        Strategy::Symbolic => record(&mut report, binding, symbolic_outcome(id, binding)),
        Strategy::Points => record(&mut report, binding, points_outcome(id, binding)),
        Strategy::Both => {
            let sym = symbolic_outcome(id, binding);
            let pts = points_outcome(id, binding);
            match (sym, pts) {
                (Err(e), _) | (_, Err(e)) => record(&mut report, binding, Err(e)),
                (Ok(s), Ok(p)) => {
                    if s.is_none() != p.is_none() {
                        report.disagreements.push(Disagreement {
                            binding: binding.clone(),
                            symbolic_pass: s.is_none(),
                            points_pass: p.is_none(),
                        });
                    }
                    report.failures.extend(s);
                    report.failures.extend(p);
                }
            }
        }
    }
    if let Some(grid) = opts.grid {
        record(&mut report, binding, grid_outcome(id, binding, grid));
    }
    report
}
