use std::collections::BTreeSet;
use std::fmt;

/// A first-order variable name. Names form a totally ordered countable
/// namespace so fresh-name generation is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(String);

impl VarName {
    pub fn new(name: impl Into<String>) -> Self {
        VarName(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VarName {
    fn from(s: &str) -> Self {
        VarName::new(s)
    }
}

/// Terms of the arithmetic language: `0`, successor, addition, multiplication
/// and variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(VarName),
    Zero,
    Succ(Box<Term>),
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(VarName::new(name))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Box::new(a), Box::new(b))
    }

    /// The numeral `n` as an iterated successor of zero.
    pub fn num(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::succ(t);
        }
        t
    }

    /// Decodes an iterated successor chain ending in zero, if this term is one.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut out);
        out
    }

    pub(crate) fn collect_free_vars(&self, out: &mut BTreeSet<VarName>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero => {}
            Term::Succ(t) => t.collect_free_vars(out),
            Term::Plus(a, b) | Term::Times(a, b) => {
                a.collect_free_vars(out);
                b.collect_free_vars(out);
            }
        }
    }

    pub fn contains_var(&self, v: &VarName) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::Zero => false,
            Term::Succ(t) => t.contains_var(v),
            Term::Plus(a, b) | Term::Times(a, b) => a.contains_var(v) || b.contains_var(v),
        }
    }
}

/// Returns the first name of the form `x0, x1, ...` not in `avoid`.
/// Deterministic in `avoid`.
pub fn fresh_var(avoid: &BTreeSet<VarName>) -> VarName {
    for i in 0.. {
        let candidate = VarName::new(format!("x{i}"));
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!("namespace is countable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_round_trip() {
        assert_eq!(Term::num(0), Term::Zero);
        assert_eq!(Term::num(2), Term::succ(Term::succ(Term::Zero)));
        assert_eq!(Term::num(5).as_numeral(), Some(5));
        assert_eq!(Term::succ(Term::var("x")).as_numeral(), None);
    }

    #[test]
    fn fresh_var_skips_taken_names() {
        let avoid: BTreeSet<VarName> = BTreeSet::new();
        assert_eq!(fresh_var(&avoid).as_str(), "x0");

        let avoid: BTreeSet<VarName> = ["x"].iter().map(|s| VarName::new(*s)).collect();
        assert_eq!(fresh_var(&avoid).as_str(), "x0");

        let avoid: BTreeSet<VarName> = ["x0", "x1"].iter().map(|s| VarName::new(*s)).collect();
        assert_eq!(fresh_var(&avoid).as_str(), "x2");
    }
}
