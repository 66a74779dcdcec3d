//! Abstract syntax of the arithmetic language with iterated inductive
//! definitions: terms, formulas in De Morgan normal form, inductive predicate
//! symbols, substitution, positivity, and the predicate order.

mod formula;
mod indpred;
mod parse;
mod print;
mod subst;
mod term;

pub use formula::{Formula, PredRef, UnaryFormula};
pub use indpred::{
    gfp_dual, pred_order, pred_rank, pred_total_cmp, predicates_of, IndPred, PredOrder,
    SyntaxError,
};
pub use parse::{parse_declarations, parse_formula, parse_term, Declarations, ParseError};
pub use print::PredNames;
pub use subst::Subst;
pub use term::{fresh_var, Term, VarName};

/// Reserved hole name for the distinguished argument of invariants and
/// single-hole rewrite templates.
pub const HOLE_U: &str = "u";
/// Reserved second hole name for rewrite templates.
pub const HOLE_V: &str = "v";
