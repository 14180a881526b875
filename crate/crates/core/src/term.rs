//! Terms over `{0, -, +, ψ, ∞, δ_n, s, p}` plus `∫`, with a parser, a
//! printer whose output re-parses to the same tree, and an evaluator over
//! `Γ_∞`.
//!
//! Grammar:
//!
//! ```text
//! term  := sum
//! sum   := unary (('+' | '-') unary)*
//! unary := '-' unary | atom
//! atom  := elem | ident | 'd' posint '(' term ')' | 'psi(' term ')'
//!        | 's(' term ')' | 'p(' term ')' | 'int(' term ')' | '(' term ')'
//! ```
//!
//! `a - b` parses as `Add(a, Neg(b))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::couple;
use crate::element::{parse_literal, GammaElement, GammaExt};
use crate::error::{Error, ParseError, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(String),
    Const(GammaExt),
    Add(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    /// `δ_n`, division by `n >= 1`.
    Delta(u32, Box<Term>),
    Psi(Box<Term>),
    Succ(Box<Term>),
    Pred(Box<Term>),
    Integ(Box<Term>),
}

pub type Env = BTreeMap<String, GammaExt>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(g: impl Into<GammaExt>) -> Term {
        Term::Const(g.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Term, b: Term) -> Term {
        Term::add(a, Term::neg(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn delta(n: u32, a: Term) -> Term {
        assert!(n >= 1);
        Term::Delta(n, Box::new(a))
    }

    pub fn psi(a: Term) -> Term {
        Term::Psi(Box::new(a))
    }

    pub fn succ(a: Term) -> Term {
        Term::Succ(Box::new(a))
    }

    pub fn pred(a: Term) -> Term {
        Term::Pred(Box::new(a))
    }

    pub fn integ(a: Term) -> Term {
        Term::Integ(Box::new(a))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Add(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a)
            | Term::Delta(_, a)
            | Term::Psi(a)
            | Term::Succ(a)
            | Term::Pred(a)
            | Term::Integ(a) => a.collect_vars(out),
        }
    }

    /// Structural evaluation. Total except for unbound variables.
    pub fn eval(&self, env: &Env) -> Result<GammaExt> {
        Ok(match self {
            Term::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            Term::Const(c) => c.clone(),
            Term::Add(a, b) => couple::add(&a.eval(env)?, &b.eval(env)?),
            Term::Neg(a) => couple::neg(&a.eval(env)?),
            Term::Delta(n, a) => couple::delta(*n, &a.eval(env)?),
            Term::Psi(a) => couple::psi(&a.eval(env)?),
            Term::Succ(a) => couple::succ(&a.eval(env)?),
            Term::Pred(a) => couple::pred(&a.eval(env)?),
            Term::Integ(a) => couple::integral(&a.eval(env)?),
        })
    }

    fn is_sum(&self) -> bool {
        matches!(self, Term::Add(..))
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sum() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}"),
            Term::Add(a, b) => {
                write!(f, "{a}")?;
                match b.as_ref() {
                    Term::Neg(inner) => {
                        f.write_str(" - ")?;
                        inner.fmt_operand(f)
                    }
                    other => {
                        f.write_str(" + ")?;
                        other.fmt_operand(f)
                    }
                }
            }
            Term::Neg(a) => {
                f.write_str("-")?;
                a.fmt_operand(f)
            }
            Term::Delta(n, a) => write!(f, "d{n}({a})"),
            Term::Psi(a) => write!(f, "psi({a})"),
            Term::Succ(a) => write!(f, "s({a})"),
            Term::Pred(a) => write!(f, "p({a})"),
            Term::Integ(a) => write!(f, "int({a})"),
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.sum()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(ParseError::new(
            format!("unexpected `{}`", p.peek_char().unwrap()),
            p.pos,
        )
        .into());
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek_char(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat_minus(&mut self) -> bool {
        match self.peek_char() {
            Some(c @ ('-' | '\u{2212}')) => {
                self.pos += c.len_utf8();
                true
            }
            _ => false,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek_char() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(ParseError::new(format!("expected `{c}`"), self.pos).into())
        }
    }

    fn sum(&mut self) -> Result<Term> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.peek_char() == Some('+') {
                self.pos += 1;
                let rhs = self.unary()?;
                acc = Term::add(acc, rhs);
            } else if self.eat_minus() {
                let rhs = self.unary()?;
                acc = Term::sub(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.eat_minus() {
            return Ok(Term::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Term> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_char() {
            None => Err(ParseError::new("unexpected end of input", start).into()),
            Some('(') => {
                self.pos += 1;
                let t = self.sum()?;
                self.expect(')')?;
                Ok(t)
            }
            Some('[') => {
                let (value, end) = parse_literal(self.src, start)?;
                self.pos = end;
                Ok(Term::Const(value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let len = self
                    .rest()
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.rest().len());
                let ident = &self.src[start..start + len];
                self.pos += len;
                if ident == "inf" {
                    return Ok(Term::Const(GammaExt::Infinity));
                }
                self.skip_ws();
                if self.peek_char() != Some('(') {
                    return Ok(Term::Var(ident.to_string()));
                }
                let ctor: fn(Term) -> Term = match ident {
                    "psi" => Term::psi,
                    "s" => Term::succ,
                    "p" => Term::pred,
                    "int" => Term::integ,
                    _ => {
                        let n = delta_index(ident)
                            .ok_or_else(|| Error::UnknownIdentifier(ident.to_string()))?;
                        self.pos += 1;
                        let arg = self.sum()?;
                        self.expect(')')?;
                        return Ok(Term::delta(n, arg));
                    }
                };
                self.pos += 1;
                let arg = self.sum()?;
                self.expect(')')?;
                Ok(ctor(arg))
            }
            Some(c) => Err(ParseError::new(format!("unexpected `{c}`"), start).into()),
        }
    }
}

/// `d<n>` with `n` a positive integer without leading zeros.
fn delta_index(ident: &str) -> Option<u32> {
    let digits = ident.strip_prefix('d')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Outcome of [`local_slope`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SlopeReport {
    /// Every probe matched `value + Σ slope_v · h_v`.
    Affine {
        slopes: Vec<(String, Rational)>,
        value: GammaExt,
    },
    NotAffine,
}

/// Probes `t` around `at` with offsets `±radius / 2^i`, `i = 1..=4`, one
/// variable at a time, and reports the unique affine law matching all probes.
/// A passing report is evidence, not proof, of local affineness.
pub fn local_slope(
    t: &Term,
    at: &BTreeMap<String, GammaElement>,
    radius: &GammaElement,
) -> Result<SlopeReport> {
    if !radius.is_positive() {
        return Err(Error::NotPositive);
    }
    let base_env: Env = at
        .iter()
        .map(|(k, v)| (k.clone(), GammaExt::Finite(v.clone())))
        .collect();
    let value = t.eval(&base_env)?;
    let lead = radius.leading_index().expect("positive radius is nonzero");
    let mut slopes = Vec::new();

    for var in t.free_vars() {
        let mut slope: Option<Rational> = None;
        for i in 1..=4u32 {
            for sign in [1i64, -1] {
                let h = radius.scale(&Rational::new(sign, 1 << i));
                let mut env = base_env.clone();
                let shifted = match env.get(&var) {
                    Some(GammaExt::Finite(x)) => x + &h,
                    Some(GammaExt::Infinity) => unreachable!("probe points are finite"),
                    None => return Err(Error::UnboundVariable(var.clone())),
                };
                env.insert(var.clone(), GammaExt::Finite(shifted));
                let probe = t.eval(&env)?;
                let c = match (&value, &probe) {
                    (GammaExt::Infinity, GammaExt::Infinity) => Rational::zero(),
                    (GammaExt::Finite(v), GammaExt::Finite(w)) => {
                        let diff = w - v;
                        let c = &diff.coord(lead) / &h.coord(lead);
                        if diff != h.scale(&c) {
                            return Ok(SlopeReport::NotAffine);
                        }
                        c
                    }
                    _ => return Ok(SlopeReport::NotAffine),
                };
                match &slope {
                    None => slope = Some(c),
                    Some(prev) if *prev == c => {}
                    Some(_) => return Ok(SlopeReport::NotAffine),
                }
            }
        }
        slopes.push((var, slope.expect("at least one probe")));
    }
    Ok(SlopeReport::Affine { slopes, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> GammaElement {
        s.parse().unwrap()
    }

    fn env1(name: &str, v: &str) -> Env {
        [(name.to_string(), v.parse().unwrap())].into_iter().collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("psi(int(x))").unwrap(), Term::psi(Term::integ(Term::var("x"))));
        assert_eq!(
            parse("x - s(x)").unwrap(),
            Term::add(Term::var("x"), Term::neg(Term::succ(Term::var("x"))))
        );
        assert_eq!(parse("d3([1/2])").unwrap(), Term::delta(3, Term::constant(el("[1/2]"))));
    }

    #[test]
    fn parse_precedence_and_assoc() {
        let t = parse("a - b + c").unwrap();
        assert_eq!(
            t,
            Term::add(Term::sub(Term::var("a"), Term::var("b")), Term::var("c"))
        );
        let t = parse("-x + y").unwrap();
        assert_eq!(t, Term::add(Term::neg(Term::var("x")), Term::var("y")));
        let t = parse("-(x + y)").unwrap();
        assert_eq!(t, Term::neg(Term::add(Term::var("x"), Term::var("y"))));
        assert_eq!(parse("inf").unwrap(), Term::Const(GammaExt::Infinity));
        assert_eq!(parse("x \u{2212} y").unwrap(), Term::sub(Term::var("x"), Term::var("y")));
    }

    #[test]
    fn parse_errors() {
        match parse("foo(x)") {
            Err(Error::UnknownIdentifier(id)) => assert_eq!(id, "foo"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("d0(x)"), Err(Error::UnknownIdentifier(_))));
        match parse("psi(x") {
            Err(Error::Parse(e)) => assert_eq!(e.position, 5),
            other => panic!("{other:?}"),
        }
        match parse("x + ") {
            Err(Error::Parse(e)) => assert_eq!(e.position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("x y"), Err(Error::Parse(_))));
        assert!(matches!(parse("[1, q]"), Err(Error::Parse(_))));
    }

    #[test]
    fn print_round_trip() {
        for s in [
            "x - s(x)",
            "-(a + b) - -c",
            "a - (b - c)",
            "psi(int(x)) + d2([1, -1/3]) - inf",
            "p(p(y)) + -[]",
        ] {
            let t = parse(s).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{s} printed as {t}");
        }
    }

    #[test]
    fn eval_examples() {
        let e = env1("x", "[]");
        assert_eq!(parse("psi(int(x))").unwrap().eval(&e).unwrap(), "[1]".parse().unwrap());
        let e = env1("x", "[1, 1]");
        assert_eq!(
            parse("x - s(x)").unwrap().eval(&e).unwrap(),
            "[0, 0, -1]".parse().unwrap()
        );
        let e = env1("x", "[2]");
        assert_eq!(parse("p(x)").unwrap().eval(&e).unwrap(), GammaExt::Infinity);
        assert_eq!(
            parse("y").unwrap().eval(&e),
            Err(Error::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn slope_examples() {
        let at = |v: &str| -> BTreeMap<String, GammaElement> {
            [("x".to_string(), el(v))].into_iter().collect()
        };
        let r = local_slope(&parse("psi(x)").unwrap(), &at("[1]"), &el("[0, 1]")).unwrap();
        assert_eq!(
            r,
            SlopeReport::Affine {
                slopes: vec![("x".into(), Rational::zero())],
                value: "[1]".parse().unwrap()
            }
        );
        let r = local_slope(&parse("x + x").unwrap(), &at("[3]"), &el("[5, 1]")).unwrap();
        assert_eq!(
            r,
            SlopeReport::Affine {
                slopes: vec![("x".into(), Rational::from(2))],
                value: "[6]".parse().unwrap()
            }
        );
        let r = local_slope(&parse("s(x)").unwrap(), &at("[1, 1/2]"), &el("[0, 0, 1]")).unwrap();
        assert_eq!(
            r,
            SlopeReport::Affine {
                slopes: vec![("x".into(), Rational::zero())],
                value: couple::succ(&"[1, 1/2]".parse().unwrap())
            }
        );
    }

    #[test]
    fn slope_detects_non_affine() {
        let at: BTreeMap<String, GammaElement> = [("x".to_string(), el("[]"))].into_iter().collect();
        // ψ jumps to ∞ at 0
        let r = local_slope(&parse("psi(x)").unwrap(), &at, &el("[1]")).unwrap();
        assert_eq!(r, SlopeReport::NotAffine);
        // s is not constant on a radius reaching the first coordinate around [1]
        let at: BTreeMap<String, GammaElement> = [("x".to_string(), el("[1]"))].into_iter().collect();
        let r = local_slope(&parse("s(x)").unwrap(), &at, &el("[1]")).unwrap();
        assert_eq!(r, SlopeReport::NotAffine);
        assert_eq!(
            local_slope(&parse("x").unwrap(), &at, &el("[-1]")),
            Err(Error::NotPositive)
        );
    }
}
