use std::str::FromStr;

use serde_json::json;

use staircase::constructions::{
    build, formula_sigma_p, formula_st_q, formula_st_r, in_q_range, in_r_range, st_lower_bound_from_sigma,
    st_upper_bound, wide_threshold, Family,
};
use staircase::longest::st_profile;

use crate::range::Range;
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// Best known upper bound on the extremal `st`, with its status.
    StUpper,
    /// Lower bound on the extremal `st` implied by the exact `st0 + st1`.
    StLower,
    /// Exact minimum of `st0 + st1`.
    SigmaFormula,
    PDp,
    QDp,
    RDp,
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "st-upper" => Quantity::StUpper,
            "st-lower" => Quantity::StLower,
            "sigma-formula" => Quantity::SigmaFormula,
            "p-dp" => Quantity::PDp,
            "q-dp" => Quantity::QDp,
            "r-dp" => Quantity::RDp,
            other => {
                return Err(format!(
                    "unknown quantity {other:?}, expected st-upper, st-lower, sigma-formula, p-dp, q-dp or r-dp"
                ))
            }
        })
    }
}

/// Tabulates `quantity` for every `(n, N)` of the grid. Formula quantities
/// orient the shape so `n <= N`; construction quantities skip shapes
/// outside the family's range.
pub fn run(quantity: Quantity, ns: Range, cols: Range) -> Table {
    match quantity {
        Quantity::StUpper => {
            let mut t = Table::new(&["n", "N", "value", "status", "boundary"]);
            for n in ns.iter() {
                for c in cols.iter() {
                    if n == 0 || c == 0 {
                        continue;
                    }
                    let (value, status) = st_upper_bound(n, c);
                    let boundary = n.max(c) == wide_threshold(n.min(c));
                    t.push(vec![json!(n), json!(c), json!(value), json!(status.as_str()), json!(boundary)]);
                }
            }
            t
        }
        Quantity::StLower | Quantity::SigmaFormula => {
            let mut t = Table::new(&["n", "N", "value"]);
            for n in ns.iter() {
                for c in cols.iter() {
                    if n == 0 || c == 0 {
                        continue;
                    }
                    let value = match quantity {
                        Quantity::StLower => st_lower_bound_from_sigma(n, c),
                        _ => formula_sigma_p(n.min(c), n.max(c)).expect("oriented shape"),
                    };
                    t.push(vec![json!(n), json!(c), json!(value)]);
                }
            }
            t
        }
        Quantity::PDp | Quantity::QDp | Quantity::RDp => {
            let (family, statistic) = match quantity {
                Quantity::PDp => (Family::P, "sigma"),
                Quantity::QDp => (Family::Q, "st"),
                _ => (Family::R, "st"),
            };
            let mut t = Table::new(&["n", "N", "statistic", "formula", "dp", "match"]);
            for n in ns.iter() {
                for c in cols.iter() {
                    let Ok(m) = build(family, n, c) else { continue };
                    let p = st_profile(&m);
                    let (formula, dp) = match family {
                        Family::P => (formula_sigma_p(n, c), p.sigma),
                        Family::Q => (formula_st_q(n, c), p.st),
                        Family::R => (formula_st_r(n, c), p.st),
                    };
                    let formula = formula.expect("shape checked by builder");
                    debug_assert!(family != Family::Q || in_q_range(n, c));
                    debug_assert!(family != Family::R || in_r_range(n, c));
                    t.push(vec![json!(n), json!(c), json!(statistic), json!(formula), json!(dp), json!(formula == dp)]);
                }
            }
            t
        }
    }
}
