//! The `binid` command line.
//!
//! Exit status: 0 all identities hold, 1 a counterexample was found,
//! 2 usage, parse or elaboration error, 3 the two verification strategies
//! disagreed.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::binomial::s_poly;
use crate::dsl::{parse_expr_str, parse_identity_file};
use crate::engine::{bindings_for, verify_range_with};
use crate::engine::{
    builtin_catalog, default_ranges, elaborate, lookup, parse_range, Binding, Identity, ParamRange,
    Ranges, Status, Strategy, VerificationReport, VerifyOptions,
};
use crate::Rational;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "binid",
    version,
    about = "Exact verification of binomial polynomial identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify built-in identities or the identities in .bid files.
    Verify(VerifyArgs),
    /// Print the normal form of an expression.
    Expand(ExpandArgs),
    /// Print a table of S_n(x) values.
    Table(TableArgs),
    /// List the built-in identities, or print them in file syntax.
    List {
        #[arg(long)]
        source: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Symbolic,
    Points,
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Symbolic => Strategy::Symbolic,
            StrategyArg::Points => Strategy::Points,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Catalog identity names or paths to identity files.
    targets: Vec<String>,
    /// Verify every built-in identity.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value = "both")]
    strategy: StrategyArg,
    /// Parameter range `name=lo..hi`; repeatable.
    #[arg(long = "range", value_name = "PARAM=LO..HI")]
    ranges: Vec<String>,
    /// Also compare both sides at every integer point `lo..hi` of each free
    /// indeterminate.
    #[arg(long, value_name = "LO..HI", allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for binding sweeps (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    /// Expression, optionally prefixed with a label (`f: (x+1)^2`).
    #[arg(allow_hyphen_values = true)]
    expr: String,
    /// Parameter value `name=value`; repeatable.
    #[arg(long = "bind", value_name = "PARAM=VALUE", allow_hyphen_values = true)]
    bindings: Vec<String>,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Polynomial family; only `S` is available.
    #[arg(default_value = "S")]
    family: String,
    #[arg(
        long = "n",
        value_name = "LO..HI",
        default_value = "0..10",
        allow_hyphen_values = true
    )]
    n_range: String,
    #[arg(
        long = "x",
        value_name = "LO..HI",
        default_value = "-10..10",
        allow_hyphen_values = true
    )]
    x_range: String,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Runs the command line with `args` (including the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Expand(args) => cmd_expand(&args, out),
        Command::Table(args) => cmd_table(&args, out),
        Command::List { source } => cmd_list(source, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn interval(text: &str) -> Result<ParamRange, Usage> {
    let (_, r) = parse_range(&format!("r={text}"))
        .map_err(|_| Usage(format!("malformed interval `{text}` (expected lo..hi)")))?;
    if r.is_empty() {
        return Err(Usage(format!("interval `{text}` is empty")));
    }
    Ok(r)
}

fn select(args: &VerifyArgs) -> Result<Vec<Identity>, Usage> {
    let mut selected: Vec<Identity> = Vec::new();
    if args.all {
        selected.extend(builtin_catalog());
    }
    for target in &args.targets {
        if let Some(id) = lookup(target) {
            selected.push(id);
            continue;
        }
        let path = Path::new(target);
        if path.is_file() {
            let text =
                std::fs::read_to_string(path).map_err(|e| Usage(format!("{target}: {e}")))?;
            let file = parse_identity_file(&text).map_err(|e| Usage(format!("{target}: {e}")))?;
            selected.extend(file.identities);
        } else if path.extension().is_some_and(|e| e == "bid") {
            return Err(Usage(format!("{target}: no such file")));
        } else {
            return Err(Usage(format!("unknown identity `{target}`")));
        }
    }
    if selected.is_empty() {
        return Err(Usage(
            "nothing to verify: name identities, give .bid files, or pass --all".into(),
        ));
    }
    Ok(selected)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, Usage> {
    let identities = select(args)?;

    let mut overrides = Ranges::new();
    for r in &args.ranges {
        let (name, range) = parse_range(r)?;
        overrides.insert(name, range);
    }
    let declared: BTreeSet<&str> = identities
        .iter()
        .flat_map(|id| id.params.iter().map(|p| p.name.as_str()))
        .collect();
    if let Some(unknown) = overrides.keys().find(|k| !declared.contains(k.as_str())) {
        return Err(Usage(format!(
            "--range {unknown}: no selected identity has a parameter `{unknown}`"
        )));
    }
    let grid = args.grid.as_deref().map(interval).transpose()?;

    // Resolve every sweep before doing any work.
    let mut plans = Vec::with_capacity(identities.len());
    for id in identities {
        let mut ranges = default_ranges(&id);
        for (name, range) in &overrides {
            if id.param(name).is_some() {
                ranges.insert(name.clone(), *range);
            }
        }
        bindings_for(&id, &ranges).map_err(|e| Usage(format!("{}: {e}", id.name)))?;
        plans.push((id, ranges));
    }

    let opts = VerifyOptions {
        strategy: args.strategy.into(),
        grid,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Usage(format!("cannot start {} worker threads: {e}", args.jobs)))?;

    let mut code = EXIT_PASS;
    let mut tally = [0usize; 4];
    for (id, ranges) in &plans {
        let report: VerificationReport = pool
            .install(|| verify_range_with(id, ranges, &opts))
            .map_err(|e| Usage(format!("{}: {e}", id.name)))?;
        let status = report.status();
        let rendered = match args.format {
            Format::Text => report.render_text(),
            Format::Machine => report.render_machine(),
        };
        out.write_all(rendered.as_bytes())?;
        code = code.max(match status {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_COUNTEREXAMPLE,
            Status::Error => EXIT_USAGE,
            Status::Inconsistent => EXIT_INCONSISTENT,
        });
        tally[status as usize] += 1;
    }
    if args.format == Format::Text && plans.len() > 1 {
        writeln!(
            out,
            "{} identities: {} passed, {} failed, {} errors, {} inconsistent",
            plans.len(),
            tally[Status::Pass as usize],
            tally[Status::Fail as usize],
            tally[Status::Error as usize],
            tally[Status::Inconsistent as usize]
        )?;
    }
    Ok(code)
}

/// Drops a leading `label:` from an expression.
fn strip_label(text: &str) -> &str {
    if let Some((head, rest)) = text.split_once(':') {
        let head = head.trim();
        let is_name = head
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && head.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if is_name {
            return rest;
        }
    }
    text
}

fn cmd_expand(args: &ExpandArgs, out: &mut dyn Write) -> Result<u8, Usage> {
    let expr = parse_expr_str(strip_label(&args.expr))?;
    let mut binding = Binding::new();
    for b in &args.bindings {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| Usage(format!("malformed binding `{b}` (expected name=value)")))?;
        let value = crate::arith::parse_int(value)?;
        binding.set(name.trim(), value);
    }
    let p = elaborate(&expr, &binding)?;
    writeln!(out, "{p}")?;
    Ok(EXIT_PASS)
}

fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<u8, Usage> {
    if args.family != "S" {
        return Err(Usage(format!("unknown family `{}` (only S)", args.family)));
    }
    let ns = interval(&args.n_range)?;
    let xs = interval(&args.x_range)?;
    let mut text = String::from("n\\x");
    for x in xs.lo..=xs.hi {
        text.push_str(&format!("\t{x}"));
    }
    text.push('\n');
    let zero = Rational::from_integer(0.into());
    for n in ns.lo..=ns.hi {
        let s = s_poly(n);
        text.push_str(&n.to_string());
        for x in xs.lo..=xs.hi {
            let v = s.eval(&Rational::from_integer(x.into()), &zero);
            text.push_str(&format!("\t{v}"));
        }
        text.push('\n');
    }
    out.write_all(text.as_bytes())?;
    Ok(EXIT_PASS)
}

fn cmd_list(source: bool, out: &mut dyn Write) -> Result<u8, Usage> {
    if source {
        out.write_all(crate::engine::CATALOG_SOURCE.as_bytes())?;
        return Ok(EXIT_PASS);
    }
    for id in builtin_catalog() {
        let ranges = default_ranges(&id);
        let params: Vec<String> = id
            .params
            .iter()
            .map(|p| format!("{}={}", p.name, ranges[&p.name]))
            .collect();
        let vars: Vec<&str> = id.free_vars.iter().map(|v| v.name()).collect();
        writeln!(
            out,
            "{}\tparams {}\tvars {}",
            id.name,
            if params.is_empty() {
                "-".into()
            } else {
                params.join(",")
            },
            if vars.is_empty() {
                "-".into()
            } else {
                vars.join(" ")
            },
        )?;
    }
    Ok(EXIT_PASS)
}
