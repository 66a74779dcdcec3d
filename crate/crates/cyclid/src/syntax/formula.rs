use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::indpred::IndPred;
use super::subst::Subst;
use super::term::{fresh_var, Term, VarName};

/// A predicate symbol position in an atom.
///
/// `SelfRef` is the distinguished fixpoint variable of an inductive predicate
/// body; it only occurs inside a stored [`IndPred`] body and always refers to
/// the predicate that owns the body. Keeping it distinct from ordinary set
/// variables makes positivity and parameter substitution immune to shadowing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredRef {
    /// A free (unary) set variable.
    SetVar(VarName),
    /// The owning inductive predicate's own fixpoint variable.
    SelfRef,
    /// A fully constructed inductive predicate.
    Ind(Arc<IndPred>),
}

/// Formulas in De Morgan normal form: negation occurs only on atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(PredRef, Term),
    NegAtom(PredRef, Term),
    Eq(Term, Term),
    NegEq(Term, Term),
    Lt(Term, Term),
    NegLt(Term, Term),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Exists(VarName, Box<Formula>),
    Forall(VarName, Box<Formula>),
}

impl Formula {
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(VarName::new(v), Box::new(body))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(VarName::new(v), Box::new(body))
    }

    pub fn set_atom(name: impl Into<String>, t: Term) -> Formula {
        Formula::Atom(PredRef::SetVar(VarName::new(name)), t)
    }

    pub fn ind_atom(pred: &Arc<IndPred>, t: Term) -> Formula {
        Formula::Atom(PredRef::Ind(pred.clone()), t)
    }

    /// De Morgan dual. The result is again in normal form and
    /// `negate(negate(f))` is alpha-equal to `f`.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom(p, t) => Formula::NegAtom(p.clone(), t.clone()),
            Formula::NegAtom(p, t) => Formula::Atom(p.clone(), t.clone()),
            Formula::Eq(a, b) => Formula::NegEq(a.clone(), b.clone()),
            Formula::NegEq(a, b) => Formula::Eq(a.clone(), b.clone()),
            Formula::Lt(a, b) => Formula::NegLt(a.clone(), b.clone()),
            Formula::NegLt(a, b) => Formula::Lt(a.clone(), b.clone()),
            Formula::Or(a, b) => Formula::and(a.negate(), b.negate()),
            Formula::And(a, b) => Formula::or(a.negate(), b.negate()),
            Formula::Exists(v, body) => Formula::Forall(v.clone(), Box::new(body.negate())),
            Formula::Forall(v, body) => Formula::Exists(v.clone(), Box::new(body.negate())),
        }
    }

    /// Free first-order variables.
    pub fn free_vars(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut BTreeSet<VarName>, out: &mut BTreeSet<VarName>) {
        match self {
            Formula::Atom(_, t) | Formula::NegAtom(_, t) => {
                for v in t.free_vars() {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Eq(a, b) | Formula::NegEq(a, b) | Formula::Lt(a, b) | Formula::NegLt(a, b) => {
                for t in [a, b] {
                    for v in t.free_vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_free_vars(bound, out);
                b.collect_free_vars(bound, out);
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let fresh_here = bound.insert(v.clone());
                body.collect_free_vars(bound, out);
                if fresh_here {
                    bound.remove(v);
                }
            }
        }
    }

    /// Free set variables, including parameters occurring inside the bodies of
    /// embedded inductive predicates.
    pub fn free_set_vars(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        self.collect_free_set_vars(&mut out);
        out
    }

    fn collect_free_set_vars(&self, out: &mut BTreeSet<VarName>) {
        match self {
            Formula::Atom(p, _) | Formula::NegAtom(p, _) => match p {
                PredRef::SetVar(name) => {
                    out.insert(name.clone());
                }
                PredRef::SelfRef => {}
                PredRef::Ind(pred) => pred.body().collect_free_set_vars(out),
            },
            Formula::Eq(..) | Formula::NegEq(..) | Formula::Lt(..) | Formula::NegLt(..) => {}
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_free_set_vars(out);
                b.collect_free_set_vars(out);
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => {
                body.collect_free_set_vars(out);
            }
        }
    }

    /// True iff no negated atom on the set variable `x` occurs anywhere,
    /// including inside bodies of embedded inductive predicates.
    pub fn is_positive(&self, x: &VarName) -> bool {
        self.positive_in(&PredRef::SetVar(x.clone()))
    }

    pub(crate) fn positive_in(&self, target: &PredRef) -> bool {
        match self {
            Formula::NegAtom(p, _) if p == target => false,
            Formula::Atom(p, _) | Formula::NegAtom(p, _) => match p {
                PredRef::Ind(pred) => pred.body().positive_in(target),
                _ => true,
            },
            Formula::Eq(..) | Formula::NegEq(..) | Formula::Lt(..) | Formula::NegLt(..) => true,
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.positive_in(target) && b.positive_in(target)
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.positive_in(target),
        }
    }

    /// True iff an atom (of either polarity) on `target` occurs, including
    /// inside bodies of embedded inductive predicates.
    pub(crate) fn mentions(&self, target: &PredRef) -> bool {
        match self {
            Formula::Atom(p, _) | Formula::NegAtom(p, _) => {
                if p == target {
                    return true;
                }
                match p {
                    PredRef::Ind(pred) => pred.body().mentions(target),
                    _ => false,
                }
            }
            Formula::Eq(..) | Formula::NegEq(..) | Formula::Lt(..) | Formula::NegLt(..) => false,
            Formula::Or(a, b) | Formula::And(a, b) => a.mentions(target) || b.mentions(target),
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.mentions(target),
        }
    }

    /// Alpha-normal form: bound variables are renamed, in pre-order, to the
    /// first names `x0, x1, ...` not free in the whole formula. Alpha-equal
    /// formulas have identical normal forms, so plain structural equality on
    /// normalized formulas is alpha-equivalence.
    pub fn canon(&self) -> Formula {
        let free = self.free_vars();
        let mut counter = 0;
        self.canon_rec(&mut counter, &free, &BTreeMap::new())
    }

    fn canon_rec(
        &self,
        counter: &mut usize,
        free: &BTreeSet<VarName>,
        scope: &BTreeMap<VarName, VarName>,
    ) -> Formula {
        let rename_term = |t: &Term, scope: &BTreeMap<VarName, VarName>| -> Term {
            fn go(t: &Term, scope: &BTreeMap<VarName, VarName>) -> Term {
                match t {
                    Term::Var(v) => match scope.get(v) {
                        Some(w) => Term::Var(w.clone()),
                        None => Term::Var(v.clone()),
                    },
                    Term::Zero => Term::Zero,
                    Term::Succ(t) => Term::succ(go(t, scope)),
                    Term::Plus(a, b) => Term::plus(go(a, scope), go(b, scope)),
                    Term::Times(a, b) => Term::times(go(a, scope), go(b, scope)),
                }
            }
            go(t, scope)
        };
        match self {
            Formula::Atom(p, t) => Formula::Atom(p.clone(), rename_term(t, scope)),
            Formula::NegAtom(p, t) => Formula::NegAtom(p.clone(), rename_term(t, scope)),
            Formula::Eq(a, b) => Formula::Eq(rename_term(a, scope), rename_term(b, scope)),
            Formula::NegEq(a, b) => Formula::NegEq(rename_term(a, scope), rename_term(b, scope)),
            Formula::Lt(a, b) => Formula::Lt(rename_term(a, scope), rename_term(b, scope)),
            Formula::NegLt(a, b) => Formula::NegLt(rename_term(a, scope), rename_term(b, scope)),
            Formula::Or(a, b) => Formula::or(
                a.canon_rec(counter, free, scope),
                b.canon_rec(counter, free, scope),
            ),
            Formula::And(a, b) => Formula::and(
                a.canon_rec(counter, free, scope),
                b.canon_rec(counter, free, scope),
            ),
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let name = loop {
                    let candidate = VarName::new(format!("x{}", *counter));
                    *counter += 1;
                    if !free.contains(&candidate) {
                        break candidate;
                    }
                };
                let mut inner = scope.clone();
                inner.insert(v.clone(), name.clone());
                let body = body.canon_rec(counter, free, &inner);
                match self {
                    Formula::Exists(..) => Formula::Exists(name, Box::new(body)),
                    _ => Formula::Forall(name, Box::new(body)),
                }
            }
        }
    }

    /// Alpha-equivalence.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || self.canon() == other.canon()
    }

    /// Renames binders that would capture one of `avoid`.
    pub(crate) fn avoid_captures(&self, avoid: &BTreeSet<VarName>) -> Formula {
        match self {
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let (v, body) = if avoid.contains(v) {
                    let mut taken: BTreeSet<VarName> = avoid.clone();
                    taken.extend(body.free_vars());
                    let fresh = fresh_var(&taken);
                    let renamed = Subst::single(v.clone(), Term::Var(fresh.clone())).apply(body);
                    (fresh, renamed)
                } else {
                    (v.clone(), (**body).clone())
                };
                let body = Box::new(body.avoid_captures(avoid));
                match self {
                    Formula::Exists(..) => Formula::Exists(v, body),
                    _ => Formula::Forall(v, body),
                }
            }
            Formula::Or(a, b) => Formula::or(a.avoid_captures(avoid), b.avoid_captures(avoid)),
            Formula::And(a, b) => Formula::and(a.avoid_captures(avoid), b.avoid_captures(avoid)),
            _ => self.clone(),
        }
    }

    /// Second-order substitution: replaces every atom on the set variable
    /// `name` by the instantiated template (negated atoms by its De Morgan
    /// dual), including inside bodies of embedded inductive predicates, which
    /// are rebuilt. Capture-avoiding in the template's free variables.
    pub fn subst_set_var(&self, name: &VarName, template: &UnaryFormula) -> Formula {
        let target = PredRef::SetVar(name.clone());
        if !self.mentions(&target) {
            return self.clone();
        }
        let mut avoid = template.formula.free_vars();
        avoid.remove(&template.var);
        let prepared = self.avoid_captures(&avoid);
        prepared.subst_pred(&target, template).canon()
    }

    /// Replaces atoms on `target` by the instantiated `template`. Binders are
    /// assumed already renamed clear of the template's free variables.
    pub(crate) fn subst_pred(&self, target: &PredRef, template: &UnaryFormula) -> Formula {
        match self {
            Formula::Atom(p, t) if p == target => template.at(t),
            Formula::NegAtom(p, t) if p == target => template.at(t).negate(),
            Formula::Atom(p, t) | Formula::NegAtom(p, t) => {
                let p = match p {
                    PredRef::Ind(pred) if pred.body().mentions(target) => {
                        PredRef::Ind(pred.map_body(|body| {
                            let mut avoid = template.formula.free_vars();
                            avoid.remove(&template.var);
                            body.avoid_captures(&avoid).subst_pred(target, template)
                        }))
                    }
                    other => other.clone(),
                };
                match self {
                    Formula::Atom(..) => Formula::Atom(p, t.clone()),
                    _ => Formula::NegAtom(p, t.clone()),
                }
            }
            Formula::Eq(..) | Formula::NegEq(..) | Formula::Lt(..) | Formula::NegLt(..) => {
                self.clone()
            }
            Formula::Or(a, b) => {
                Formula::or(a.subst_pred(target, template), b.subst_pred(target, template))
            }
            Formula::And(a, b) => {
                Formula::and(a.subst_pred(target, template), b.subst_pred(target, template))
            }
            Formula::Exists(v, body) => {
                Formula::Exists(v.clone(), Box::new(body.subst_pred(target, template)))
            }
            Formula::Forall(v, body) => {
                Formula::Forall(v.clone(), Box::new(body.subst_pred(target, template)))
            }
        }
    }

    /// Inductive predicates whose atoms occur in this formula, at any nesting
    /// depth (bodies included).
    pub fn ind_preds(&self) -> BTreeSet<Arc<IndPred>> {
        let mut out = BTreeSet::new();
        self.collect_ind_preds(&mut out);
        out
    }

    pub(crate) fn collect_ind_preds(&self, out: &mut BTreeSet<Arc<IndPred>>) {
        match self {
            Formula::Atom(p, _) | Formula::NegAtom(p, _) => {
                if let PredRef::Ind(pred) = p {
                    if out.insert(pred.clone()) {
                        pred.body().collect_ind_preds(out);
                    }
                }
            }
            Formula::Eq(..) | Formula::NegEq(..) | Formula::Lt(..) | Formula::NegLt(..) => {}
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_ind_preds(out);
                b.collect_ind_preds(out);
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.collect_ind_preds(out),
        }
    }

    /// Inductive predicates occurring as top-level atoms of the stated
    /// polarity (not inside other predicate bodies).
    pub fn shallow_ind_atoms(&self, positive: bool) -> BTreeSet<Arc<IndPred>> {
        let mut out = BTreeSet::new();
        fn go(f: &Formula, positive: bool, out: &mut BTreeSet<Arc<IndPred>>) {
            match f {
                Formula::Atom(PredRef::Ind(p), _) if positive => {
                    out.insert(p.clone());
                }
                Formula::NegAtom(PredRef::Ind(p), _) if !positive => {
                    out.insert(p.clone());
                }
                Formula::Or(a, b) | Formula::And(a, b) => {
                    go(a, positive, out);
                    go(b, positive, out);
                }
                Formula::Exists(_, body) | Formula::Forall(_, body) => go(body, positive, out),
                _ => {}
            }
        }
        go(self, positive, &mut out);
        out
    }
}

/// A formula abstracted over one first-order variable, used for rule
/// invariants and rewrite templates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnaryFormula {
    pub var: VarName,
    pub formula: Formula,
}

impl UnaryFormula {
    pub fn new(var: impl Into<String>, formula: Formula) -> Self {
        UnaryFormula {
            var: VarName::new(var),
            formula,
        }
    }

    /// Instantiates the hole at `t`, capture-avoidingly.
    pub fn at(&self, t: &Term) -> Formula {
        Subst::single(self.var.clone(), t.clone()).apply(&self.formula)
    }
}
