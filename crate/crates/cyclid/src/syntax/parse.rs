//! Recursive-descent parser for the term/formula grammar.
//!
//! ```text
//! term    := numeral | 's' '(' term ')' | '+' '(' term ',' term ')'
//!          | '*' '(' term ',' term ')' | ident
//! formula := '=' '(' term ',' term ')' | '<' '(' term ',' term ')'
//!          | 'not' atom | 'or' '(' formula ',' formula ')'
//!          | 'and' '(' formula ',' formula ')'
//!          | 'ex' ident '.' formula | 'all' ident '.' formula
//!          | ident '(' term ')'
//! decl    := 'ind' '[' ident ']' '(' ident ',' ident ',' formula ')'
//! ```
//!
//! Numerals abbreviate iterated successors of zero. An applied identifier is
//! an inductive predicate if declared, otherwise a free set variable. Parsed
//! formulas are alpha-normalized on ingest.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::formula::{Formula, PredRef};
use super::indpred::IndPred;
use super::term::Term;

const KEYWORDS: &[&str] = &["not", "or", "and", "ex", "all", "ind", "s"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub msg: String,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Named inductive predicate declarations in scope.
#[derive(Clone, Debug, Default)]
pub struct Declarations {
    map: BTreeMap<String, Arc<IndPred>>,
}

impl Declarations {
    pub fn new() -> Self {
        Declarations::default()
    }

    pub fn insert(&mut self, name: &str, pred: Arc<IndPred>) -> Result<(), String> {
        if self.map.contains_key(name) {
            return Err(format!("predicate {name} is already declared"));
        }
        self.map.insert(name.to_string(), pred);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Arc<IndPred>> {
        self.map.get(name)
    }

    /// Exact lookup, falling back to a unique case-insensitive match.
    pub fn resolve(&self, name: &str) -> Option<&Arc<IndPred>> {
        if let Some(p) = self.map.get(name) {
            return Some(p);
        }
        let lower = name.to_lowercase();
        let mut hits = self
            .map
            .iter()
            .filter(|(k, _)| k.to_lowercase() == lower)
            .map(|(_, v)| v);
        match (hits.next(), hits.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Arc<IndPred>)> {
        self.map.iter()
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src, &Declarations::new());
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_formula(src: &str, decls: &Declarations) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src, decls);
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f.canon())
}

/// Parses zero or more `ind[name](X, x, body)` declarations separated by `;`,
/// optionally followed by a formula: the input form taken by the CLI.
pub fn parse_declarations(
    src: &str,
    decls: &mut Declarations,
) -> Result<Option<Formula>, ParseError> {
    let mut pos = 0;
    loop {
        let rest = &src[pos..];
        let mut p = Parser::new(rest, decls);
        p.skip_ws();
        if p.at_end() {
            return Ok(None);
        }
        if p.peek_keyword("ind") {
            let (name, pred) = p.ind_decl_bracket()?;
            decls
                .insert(&name, pred)
                .map_err(|msg| p.error_at(p.pos, msg))?;
            p.skip_ws();
            if p.at_end() {
                return Ok(None);
            }
            p.expect(';')?;
            pos += p.pos;
        } else {
            let f = p.formula()?;
            p.expect_eof()?;
            return Ok(Some(f.canon()));
        }
    }
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pub(crate) pos: usize,
    decls: &'a Declarations,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, decls: &'a Declarations) -> Self {
        Parser { src, pos: 0, decls }
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        let mut line = 1;
        let mut col = 1;
        for (i, c) in self.src.char_indices() {
            if i >= pos {
                break;
            }
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        ParseError {
            msg: msg.into(),
            line,
            col,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(self.error_at(self.pos, msg))
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!(
                "expected '{c}', found {}",
                self.peek()
                    .map(|c| format!("'{c}'"))
                    .unwrap_or_else(|| "end of input".to_string())
            ))
        }
    }

    pub(crate) fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn ident_raw(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let len = rest
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'')
            .map(|c| c.len_utf8())
            .sum::<usize>();
        let word = rest[..len].to_string();
        self.pos += len;
        Some(word)
    }

    /// An identifier that is not a keyword.
    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        match self.ident_raw() {
            Some(word) if !KEYWORDS.contains(&word.as_str()) => Ok(word),
            Some(word) => {
                self.pos = start;
                self.err(format!("keyword '{word}' cannot be used as a name"))
            }
            None => self.err("expected an identifier"),
        }
    }

    pub(crate) fn peek_keyword(&mut self, kw: &str) -> bool {
        let start = self.pos;
        let hit = self.ident_raw() == Some(kw.to_string());
        self.pos = start;
        hit
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let start = self.pos;
        if self.ident_raw() == Some(kw.to_string()) {
            true
        } else {
            self.pos = start;
            false
        }
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return None;
        }
        let n: u64 = rest[..len].parse().ok()?;
        self.pos += len;
        Some(n)
    }

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if let Some(n) = self.number() {
            return Ok(Term::num(n));
        }
        match self.peek() {
            Some('+') | Some('*') => {
                let op = self.peek().unwrap();
                self.pos += 1;
                self.expect('(')?;
                let a = self.term()?;
                self.expect(',')?;
                let b = self.term()?;
                self.expect(')')?;
                Ok(if op == '+' {
                    Term::plus(a, b)
                } else {
                    Term::times(a, b)
                })
            }
            _ => {
                if self.keyword("s") {
                    self.expect('(')?;
                    let t = self.term()?;
                    self.expect(')')?;
                    return Ok(Term::succ(t));
                }
                let start = self.pos;
                match self.ident_raw() {
                    Some(word) if !KEYWORDS.contains(&word.as_str()) => Ok(Term::var(word)),
                    _ => {
                        self.pos = start;
                        self.err("expected a term")
                    }
                }
            }
        }
    }

    fn pred_atom(&mut self) -> Result<Formula, ParseError> {
        let name = self.ident()?;
        self.expect('(')?;
        let t = self.term()?;
        self.expect(')')?;
        let pred = match self.decls.get(&name) {
            Some(p) => PredRef::Ind(p.clone()),
            None => PredRef::SetVar(name.as_str().into()),
        };
        Ok(Formula::Atom(pred, t))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('=') | Some('<') => {
                let op = self.peek().unwrap();
                self.pos += 1;
                self.expect('(')?;
                let a = self.term()?;
                self.expect(',')?;
                let b = self.term()?;
                self.expect(')')?;
                Ok(if op == '=' {
                    Formula::Eq(a, b)
                } else {
                    Formula::Lt(a, b)
                })
            }
            _ => self.pred_atom(),
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('=') | Some('<') => self.atom(),
            _ => {
                if self.keyword("not") {
                    return Ok(self.atom()?.negate());
                }
                if self.keyword("or") {
                    self.expect('(')?;
                    let a = self.formula()?;
                    self.expect(',')?;
                    let b = self.formula()?;
                    self.expect(')')?;
                    return Ok(Formula::or(a, b));
                }
                if self.keyword("and") {
                    self.expect('(')?;
                    let a = self.formula()?;
                    self.expect(',')?;
                    let b = self.formula()?;
                    self.expect(')')?;
                    return Ok(Formula::and(a, b));
                }
                if self.keyword("ex") {
                    let v = self.ident()?;
                    self.expect('.')?;
                    let body = self.formula()?;
                    return Ok(Formula::exists(v, body));
                }
                if self.keyword("all") {
                    let v = self.ident()?;
                    self.expect('.')?;
                    let body = self.formula()?;
                    return Ok(Formula::forall(v, body));
                }
                if self.peek_keyword("ind") {
                    return self.err("ind declarations must precede the formula");
                }
                self.pred_atom()
            }
        }
    }

    /// `ind[name](X, x, body)`
    pub(crate) fn ind_decl_bracket(&mut self) -> Result<(String, Arc<IndPred>), ParseError> {
        if !self.keyword("ind") {
            return self.err("expected 'ind'");
        }
        self.expect('[')?;
        let name = self.ident()?;
        self.expect(']')?;
        self.ind_decl_args(name)
    }

    pub(crate) fn ind_decl_args(
        &mut self,
        name: String,
    ) -> Result<(String, Arc<IndPred>), ParseError> {
        self.expect('(')?;
        let set_var = self.ident()?;
        self.expect(',')?;
        let ind_var = self.ident()?;
        self.expect(',')?;
        let body = self.formula()?;
        self.expect(')')?;
        let pred = IndPred::new(&name, &set_var, &ind_var, body)
            .map_err(|e| self.error_at(self.pos, e.to_string()))?;
        Ok((name, pred))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_parse_and_print() {
        for (src, printed) in [
            ("0", "0"),
            ("3", "3"),
            ("s(s(0))", "2"),
            ("s(x)", "s(x)"),
            ("+(x,s(0))", "+(x,1)"),
            ("*(2, y)", "*(2,y)"),
        ] {
            let t = parse_term(src).unwrap();
            assert_eq!(t.to_string(), printed);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_term("s(").is_err());
        assert!(parse_formula("or(=(x,0)", &Declarations::new()).is_err());
        assert!(parse_formula("not or(=(x,0),=(x,1))", &Declarations::new()).is_err());
        let err = parse_formula("\n  =(x,", &Declarations::new()).unwrap_err();
        assert_eq!(err.line, 2);
    }
}
