use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::formula::Formula;
use super::term::{fresh_var, Term, VarName};

/// A finite map from variables to terms, applied simultaneously and
/// capture-avoidingly.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subst {
    map: BTreeMap<VarName, Term>,
}

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn single(var: VarName, term: Term) -> Self {
        let mut map = BTreeMap::new();
        map.insert(var, term);
        Subst { map }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarName, Term)>) -> Self {
        Subst {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(v, t)| matches!(t, Term::Var(w) if w == v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, &Term)> {
        self.map.iter()
    }

    pub fn get(&self, v: &VarName) -> Option<&Term> {
        self.map.get(v)
    }

    /// `self.compose(other)` applies `other` first: `(self ∘ other)(x) =
    /// self(other(x))`.
    pub fn compose(&self, other: &Subst) -> Subst {
        let mut map = BTreeMap::new();
        for (v, t) in &other.map {
            map.insert(v.clone(), self.apply_term(t));
        }
        for (v, t) in &self.map {
            map.entry(v.clone()).or_insert_with(|| t.clone());
        }
        Subst { map }
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => match self.map.get(v) {
                Some(replacement) => replacement.clone(),
                None => t.clone(),
            },
            Term::Zero => Term::Zero,
            Term::Succ(inner) => Term::succ(self.apply_term(inner)),
            Term::Plus(a, b) => Term::plus(self.apply_term(a), self.apply_term(b)),
            Term::Times(a, b) => Term::times(self.apply_term(a), self.apply_term(b)),
        }
    }

    /// Capture-avoiding application; binders are renamed when a substituted
    /// term would otherwise capture them.
    pub fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(p, t) => Formula::Atom(p.clone(), self.apply_term(t)),
            Formula::NegAtom(p, t) => Formula::NegAtom(p.clone(), self.apply_term(t)),
            Formula::Eq(a, b) => Formula::Eq(self.apply_term(a), self.apply_term(b)),
            Formula::NegEq(a, b) => Formula::NegEq(self.apply_term(a), self.apply_term(b)),
            Formula::Lt(a, b) => Formula::Lt(self.apply_term(a), self.apply_term(b)),
            Formula::NegLt(a, b) => Formula::NegLt(self.apply_term(a), self.apply_term(b)),
            Formula::Or(a, b) => Formula::or(self.apply(a), self.apply(b)),
            Formula::And(a, b) => Formula::and(self.apply(a), self.apply(b)),
            Formula::Exists(v, body) => {
                let (v, body) = self.apply_binder(v, body);
                Formula::Exists(v, Box::new(body))
            }
            Formula::Forall(v, body) => {
                let (v, body) = self.apply_binder(v, body);
                Formula::Forall(v, Box::new(body))
            }
        }
    }

    fn apply_binder(&self, v: &VarName, body: &Formula) -> (VarName, Formula) {
        // The binder shadows any mapping of its own name.
        let mut inner = self.clone();
        inner.map.remove(v);
        let body_free = body.free_vars();
        let captured = inner
            .map
            .iter()
            .any(|(w, t)| body_free.contains(w) && t.contains_var(v));
        if captured {
            let mut avoid: BTreeSet<VarName> = body_free;
            for t in inner.map.values() {
                t.collect_free_vars(&mut avoid);
            }
            avoid.insert(v.clone());
            let fresh = fresh_var(&avoid);
            let renamed = Subst::single(v.clone(), Term::Var(fresh.clone())).apply(body);
            (fresh.clone(), inner.apply(&renamed))
        } else {
            (v.clone(), inner.apply(body))
        }
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}:={}", super::print::format_term(t))?;
        }
        write!(f, "}}")
    }
}
