use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::expr::Identity;
use super::verify::{ParamRange, Ranges};
use crate::dsl::parse_identity_file;

pub const CATALOG_SOURCE: &str = include_str!("catalog.bid");

/// Width of the default range for parameters of user-supplied identities.
const USER_RANGE_WIDTH: i64 = 10;

fn catalog() -> &'static [Identity] {
    static CATALOG: OnceLock<Vec<Identity>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        parse_identity_file(CATALOG_SOURCE)
            .unwrap_or_else(|e| panic!("built-in catalog does not parse: {e}"))
            .identities
    })
}

/// Every built-in identity, in catalog order.
pub fn builtin_catalog() -> Vec<Identity> {
    catalog().to_vec()
}

pub fn lookup(name: &str) -> Option<Identity> {
    catalog().iter().find(|id| id.name == name).cloned()
}

/// The parameter ranges a bare `verify --all` sweeps.
pub fn acceptance_ranges(name: &str) -> Option<Ranges> {
    let uniform = |params: &[&str], lo, hi| -> Ranges {
        params
            .iter()
            .map(|p| (p.to_string(), ParamRange::new(lo, hi)))
            .collect()
    };
    Some(match name {
        "theorem_polynomial_even" | "theorem_polynomial_odd" => uniform(&["n"], 0, 50),
        "lemma_polynomial_even"
        | "lemma_polynomial_odd"
        | "lemma_binomial_1"
        | "lemma_binomial_2" => uniform(&["n"], 0, 20),
        "theorem_binomial_even" | "theorem_binomial_odd" => uniform(&["n1", "n2", "n3"], 0, 12),
        "eq_evenpolynomial" | "eq_oddpolynomial" => uniform(&["m", "n"], 0, 10),
        "eq_increment" | "eq_xincrement" | "eq_yincrement" | "s_diagonal" | "s_difference"
        | "pascal" | "reflection" => uniform(&["n"], 0, 30),
        _ => return None,
    })
}

/// Acceptance ranges for catalog identities; otherwise each parameter sweeps
/// `min ..= min + 10`.
pub fn default_ranges(id: &Identity) -> Ranges {
    if let Some(r) = acceptance_ranges(&id.name) {
        if lookup(&id.name).as_ref() == Some(id) {
            return r;
        }
    }
    id.params
        .iter()
        .map(|p| {
            let lo = p.min.to_i64().unwrap_or(0);
            (
                p.name.clone(),
                ParamRange::new(lo, lo.saturating_add(USER_RANGE_WIDTH)),
            )
        })
        .collect()
}
