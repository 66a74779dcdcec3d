//! Serialization of terms and formulas. The output re-parses to an
//! alpha-equal AST; numerals abbreviate closed successor chains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::formula::{Formula, PredRef};
use super::indpred::IndPred;
use super::term::Term;

pub fn format_term(t: &Term) -> String {
    if let Some(n) = t.as_numeral() {
        return n.to_string();
    }
    match t {
        Term::Var(v) => v.to_string(),
        Term::Zero => "0".to_string(),
        Term::Succ(inner) => format!("s({})", format_term(inner)),
        Term::Plus(a, b) => format!("+({},{})", format_term(a), format_term(b)),
        Term::Times(a, b) => format!("*({},{})", format_term(a), format_term(b)),
    }
}

/// Assigns stable, collision-free names to inductive predicates for use in
/// serialized output. Names default to the predicate's display name and get a
/// numeric suffix when distinct predicates share one.
#[derive(Clone, Debug, Default)]
pub struct PredNames {
    names: BTreeMap<Arc<IndPred>, String>,
    used: BTreeSet<String>,
}

impl PredNames {
    pub fn new() -> Self {
        PredNames::default()
    }

    pub fn assign(&mut self, pred: &Arc<IndPred>) -> String {
        if let Some(name) = self.names.get(pred) {
            return name.clone();
        }
        let base = pred.display_name().to_string();
        let mut candidate = base.clone();
        let mut k = 1;
        while self.used.contains(&candidate) {
            k += 1;
            candidate = format!("{base}_{k}");
        }
        self.used.insert(candidate.clone());
        self.names.insert(pred.clone(), candidate.clone());
        candidate
    }

    pub fn get(&self, pred: &Arc<IndPred>) -> Option<&str> {
        self.names.get(pred).map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc<IndPred>, &String)> {
        self.names.iter()
    }
}

pub fn format_formula(f: &Formula, names: Option<&PredNames>) -> String {
    let pred_name = |p: &PredRef| -> String {
        match p {
            PredRef::SetVar(v) => v.to_string(),
            PredRef::SelfRef => "%self".to_string(),
            PredRef::Ind(pred) => names
                .and_then(|n| n.get(pred))
                .map(|s| s.to_string())
                .unwrap_or_else(|| pred.display_name().to_string()),
        }
    };
    match f {
        Formula::Atom(p, t) => format!("{}({})", pred_name(p), format_term(t)),
        Formula::NegAtom(p, t) => format!("not {}({})", pred_name(p), format_term(t)),
        Formula::Eq(a, b) => format!("=({},{})", format_term(a), format_term(b)),
        Formula::NegEq(a, b) => format!("not =({},{})", format_term(a), format_term(b)),
        Formula::Lt(a, b) => format!("<({},{})", format_term(a), format_term(b)),
        Formula::NegLt(a, b) => format!("not <({},{})", format_term(a), format_term(b)),
        Formula::Or(a, b) => format!(
            "or({},{})",
            format_formula(a, names),
            format_formula(b, names)
        ),
        Formula::And(a, b) => format!(
            "and({},{})",
            format_formula(a, names),
            format_formula(b, names)
        ),
        Formula::Exists(v, body) => format!("ex {v}. {}", format_formula(body, names)),
        Formula::Forall(v, body) => format!("all {v}. {}", format_formula(body, names)),
    }
}

/// Renders an `ind` declaration body: the fixpoint variable as the display
/// set name and the distinguished argument as the display argument name.
pub fn format_ind_decl(pred: &Arc<IndPred>, name: &str, names: Option<&PredNames>) -> String {
    let body = pred.body_as_formula(pred.display_set(), &Term::var(pred.display_arg()));
    format!(
        "ind {name} := ({}, {}, {})",
        pred.display_set(),
        pred.display_arg(),
        format_formula(&body, names)
    )
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_term(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_formula(self, None))
    }
}
