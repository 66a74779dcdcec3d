use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::formula::{Formula, PredRef, UnaryFormula};
use super::subst::Subst;
use super::term::{Term, VarName};

/// Internal canonical name for the distinguished argument of a predicate
/// body. The `%` prefix keeps it outside the parseable identifier space.
pub(crate) const IND_ARG: &str = "%x";
const UNFOLD_HOLE: &str = "%h";

/// An inductive predicate symbol: the least fixed point of the operator
/// induced by a body formula positive in its fixpoint variable.
///
/// The stored body is canonical: the fixpoint variable is [`PredRef::SelfRef`],
/// the distinguished argument is an internal reserved name, and bound
/// variables are alpha-normalized. Two predicates are equal exactly when their
/// canonical bodies coincide; display names are cosmetic.
#[derive(Clone, Debug)]
pub struct IndPred {
    body: Formula,
    display_name: String,
    display_set: String,
    display_arg: String,
}

impl PartialEq for IndPred {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body
    }
}

impl Eq for IndPred {}

impl PartialOrd for IndPred {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndPred {
    fn cmp(&self, other: &Self) -> Ordering {
        self.body.cmp(&other.body)
    }
}

impl std::hash::Hash for IndPred {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.body.hash(state);
    }
}

impl fmt::Display for IndPred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyntaxError {
    /// The body has a negated atom on the fixpoint variable.
    NotPositive { var: String },
    /// Stray free variables in a predicate body.
    IllFormedBody { detail: String },
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxError::NotPositive { var } => {
                write!(f, "body is not positive in set variable {var}")
            }
            SyntaxError::IllFormedBody { detail } => write!(f, "ill-formed body: {detail}"),
        }
    }
}

impl std::error::Error for SyntaxError {}

impl IndPred {
    /// Constructs an inductive predicate from a body over the set variable
    /// `set_var` and distinguished argument `ind_var`. The body must be
    /// positive in `set_var`, its free first-order variables must be contained
    /// in `{ind_var}`, and it may not mention any other free set variable.
    pub fn new(
        name: impl Into<String>,
        set_var: impl Into<String>,
        ind_var: impl Into<String>,
        body: Formula,
    ) -> Result<Arc<IndPred>, SyntaxError> {
        Self::build(name, set_var, ind_var, body, false)
    }

    /// Like [`IndPred::new`] but permits additional free set variables in the
    /// body. Such parameterized predicates arise during functoriality
    /// constructions, where a fresh predicate symbol stands in for a formula
    /// yet to be substituted; they have no fixpoint semantics of their own.
    pub fn with_params(
        name: impl Into<String>,
        set_var: impl Into<String>,
        ind_var: impl Into<String>,
        body: Formula,
    ) -> Result<Arc<IndPred>, SyntaxError> {
        Self::build(name, set_var, ind_var, body, true)
    }

    fn build(
        name: impl Into<String>,
        set_var: impl Into<String>,
        ind_var: impl Into<String>,
        body: Formula,
        allow_set_params: bool,
    ) -> Result<Arc<IndPred>, SyntaxError> {
        let set_var = VarName::new(set_var);
        let ind_var = VarName::new(ind_var);
        if !body.is_positive(&set_var) {
            return Err(SyntaxError::NotPositive {
                var: set_var.to_string(),
            });
        }
        let stray: Vec<String> = body
            .free_vars()
            .into_iter()
            .filter(|v| *v != ind_var)
            .map(|v| v.to_string())
            .collect();
        if !stray.is_empty() {
            return Err(SyntaxError::IllFormedBody {
                detail: format!("free variables {} besides {}", stray.join(", "), ind_var),
            });
        }
        if !allow_set_params {
            let stray: Vec<String> = body
                .free_set_vars()
                .into_iter()
                .filter(|v| *v != set_var)
                .map(|v| v.to_string())
                .collect();
            if !stray.is_empty() {
                return Err(SyntaxError::IllFormedBody {
                    detail: format!("free set variables {} besides {}", stray.join(", "), set_var),
                });
            }
        }
        let canonical = body
            .subst_set_var(
                &set_var,
                &UnaryFormula {
                    var: VarName::new(UNFOLD_HOLE),
                    formula: Formula::Atom(PredRef::SelfRef, Term::var(UNFOLD_HOLE)),
                },
            )
            .canon();
        let canonical = Subst::single(ind_var.clone(), Term::var(IND_ARG))
            .apply(&canonical)
            .canon();
        Ok(Arc::new(IndPred {
            body: canonical,
            display_name: name.into(),
            display_set: set_var.to_string(),
            display_arg: ind_var.to_string(),
        }))
    }

    /// The canonical stored body (fixpoint variable as [`PredRef::SelfRef`]).
    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn display_name(&self) -> &str {
        &self.display_name
    }

    pub fn display_set(&self) -> &str {
        &self.display_set
    }

    pub fn display_arg(&self) -> &str {
        &self.display_arg
    }

    /// The body with the fixpoint variable replaced by `set` and the
    /// distinguished argument instantiated at `at`.
    pub fn body_with(&self, set: &UnaryFormula, at: &Term) -> Formula {
        let mut avoid = set.formula.free_vars();
        avoid.remove(&set.var);
        avoid.extend(at.free_vars());
        let prepared = self.body.avoid_captures(&avoid);
        let opened = prepared.subst_pred(&PredRef::SelfRef, set);
        Subst::single(VarName::new(IND_ARG), at.clone())
            .apply(&opened)
            .canon()
    }

    /// One unfolding of `pred` at `at`: the body with the fixpoint variable
    /// replaced by the predicate itself.
    pub fn unfold_at(pred: &Arc<IndPred>, at: &Term) -> Formula {
        pred.body_with(&Self::self_template(pred), at)
    }

    /// The template `h. pred(h)`.
    pub fn self_template(pred: &Arc<IndPred>) -> UnaryFormula {
        UnaryFormula {
            var: VarName::new(UNFOLD_HOLE),
            formula: Formula::Atom(PredRef::Ind(pred.clone()), Term::var(UNFOLD_HOLE)),
        }
    }

    /// The body with the fixpoint variable rendered as the free set variable
    /// `set_name`, and the argument as `arg` (used for display and for
    /// functoriality, which recurses over bodies as ordinary formulas).
    pub fn body_as_formula(&self, set_name: &str, arg: &Term) -> Formula {
        self.body_with(
            &UnaryFormula {
                var: VarName::new(UNFOLD_HOLE),
                formula: Formula::set_atom(set_name, Term::var(UNFOLD_HOLE)),
            },
            arg,
        )
    }

    /// Rebuilds the predicate with a transformed body, keeping display names.
    /// The transform must preserve positivity in the fixpoint variable.
    pub(crate) fn map_body(&self, f: impl FnOnce(&Formula) -> Formula) -> Arc<IndPred> {
        let body = f(&self.body).canon();
        debug_assert!(body.positive_in(&PredRef::SelfRef));
        Arc::new(IndPred {
            body,
            display_name: self.display_name.clone(),
            display_set: self.display_set.clone(),
            display_arg: self.display_arg.clone(),
        })
    }
}

/// The greatest-fixed-point dual: given a body positive in `set_var`, returns
/// the literal `not J(ind_var)` where `J` is the least fixed point of the
/// dualized body (negation with the set-variable atoms flipped). The inner
/// body is again positive in `set_var`.
pub fn gfp_dual(body: &Formula, set_var: &str, ind_var: &str) -> Result<Formula, SyntaxError> {
    let set = VarName::new(set_var);
    if !body.is_positive(&set) {
        return Err(SyntaxError::NotPositive {
            var: set.to_string(),
        });
    }
    let flipped = flip_set_atoms(body, &set);
    let inner = flipped.negate();
    debug_assert!(inner.is_positive(&set));
    let pred = IndPred::new("co", set_var, ind_var, inner)?;
    Ok(Formula::NegAtom(PredRef::Ind(pred), Term::var(ind_var)))
}

fn flip_set_atoms(f: &Formula, set: &VarName) -> Formula {
    let target = PredRef::SetVar(set.clone());
    match f {
        Formula::Atom(p, t) if *p == target => Formula::NegAtom(p.clone(), t.clone()),
        Formula::NegAtom(p, t) if *p == target => Formula::Atom(p.clone(), t.clone()),
        Formula::Atom(..) | Formula::NegAtom(..) => f.clone(),
        Formula::Eq(..) | Formula::NegEq(..) | Formula::Lt(..) | Formula::NegLt(..) => f.clone(),
        Formula::Or(a, b) => Formula::or(flip_set_atoms(a, set), flip_set_atoms(b, set)),
        Formula::And(a, b) => Formula::and(flip_set_atoms(a, set), flip_set_atoms(b, set)),
        Formula::Exists(v, body) => {
            Formula::Exists(v.clone(), Box::new(flip_set_atoms(body, set)))
        }
        Formula::Forall(v, body) => {
            Formula::Forall(v.clone(), Box::new(flip_set_atoms(body, set)))
        }
    }
}

/// Verdict of the occurs-in predicate order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredOrder {
    Below,
    Above,
    Equal,
    Incomparable,
}

/// The strict occurs-in order on inductive predicates: `a` is below `b` when
/// `a` occurs (at any nesting depth) in `b`'s body. Transitivity comes for
/// free from the recursive search; the order is well-founded because a
/// predicate can only embed previously constructed ones.
pub fn pred_order(a: &Arc<IndPred>, b: &Arc<IndPred>) -> PredOrder {
    if a == b {
        return PredOrder::Equal;
    }
    let a_in_b = b.body().mentions(&PredRef::Ind(a.clone()));
    let b_in_a = a.body().mentions(&PredRef::Ind(b.clone()));
    match (a_in_b, b_in_a) {
        (true, false) => PredOrder::Below,
        (false, true) => PredOrder::Above,
        (false, false) => PredOrder::Incomparable,
        (true, true) => unreachable!("occurs-in is well-founded by construction order"),
    }
}

/// Nesting rank of a predicate: one more than the greatest rank of any
/// predicate occurring in its body. Strictly increases along occurs-in.
pub fn pred_rank(p: &Arc<IndPred>) -> usize {
    p.body()
        .ind_preds()
        .iter()
        .map(|q| pred_rank(q) + 1)
        .max()
        .unwrap_or(0)
}

/// Total comparison extending the occurs-in order: predicates are ordered by
/// nesting rank, then by canonical body. If `a` occurs in `b` then `a` ranks
/// strictly below `b`, so this is a genuine linearization.
pub fn pred_total_cmp(a: &Arc<IndPred>, b: &Arc<IndPred>) -> Ordering {
    pred_rank(a)
        .cmp(&pred_rank(b))
        .then_with(|| a.body().cmp(b.body()))
}

/// All inductive predicates of the given formulas, sorted so that each
/// predicate follows everything occurring in its body. Deterministic.
pub fn predicates_of(formulas: impl IntoIterator<Item = Formula>) -> Vec<Arc<IndPred>> {
    let mut all: BTreeSet<Arc<IndPred>> = BTreeSet::new();
    for f in formulas {
        f.collect_ind_preds(&mut all);
    }
    let mut sorted: Vec<Arc<IndPred>> = all.into_iter().collect();
    sorted.sort_by(pred_total_cmp);
    sorted
}
