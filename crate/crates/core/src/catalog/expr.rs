//! Symbolic form expressions used by the catalog file.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := atom ['^' INT]
//! atom   := RATIONAL | NAME '(' [INT] 'z' ')' | 'eta' '[' (INT '^' INT)+ ']'
//!         | 'D' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `NAME(tz)` is the named form evaluated at `tz`; `D(...)` is `q d/dq`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::eta::EtaProduct;
use crate::series::QSeries;

/// A named form at a dilation, written `Name(tz)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormRef {
    pub name: String,
    pub dilation: u64,
}

impl FormRef {
    pub fn new(name: impl Into<String>, dilation: u64) -> Self {
        Self { name: name.into(), dilation }
    }
}

impl fmt::Display for FormRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dilation == 1 {
            write!(f, "{}(z)", self.name)
        } else {
            write!(f, "{}({}z)", self.name, self.dilation)
        }
    }
}

impl FromStr for FormRef {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let r = p.form_ref()?;
        p.expect_end()?;
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FormExpr {
    Const(Rational),
    Form(FormRef),
    Eta(EtaProduct),
    Deriv(Box<FormExpr>),
    Sum(Vec<FormExpr>),
    Product(Vec<FormExpr>),
    Neg(Box<FormExpr>),
    Pow(Box<FormExpr>, u32),
}

/// Supplies the series of named forms while an expression is evaluated.
pub trait FormResolver {
    fn resolve(&self, name: &str, prec: usize) -> Result<QSeries>;
    fn weight_of(&self, name: &str) -> Result<u32>;
}

impl FormExpr {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    pub fn eval(&self, r: &dyn FormResolver, prec: usize) -> Result<QSeries> {
        Ok(match self {
            FormExpr::Const(c) => QSeries::constant(c.clone(), prec),
            FormExpr::Form(f) => {
                let t = f.dilation as usize;
                r.resolve(&f.name, prec.div_ceil(t).max(1))?.dilate_to(t, prec)
            }
            FormExpr::Eta(e) => e.expand(prec)?,
            FormExpr::Deriv(e) => e.eval(r, prec)?.qderiv(),
            FormExpr::Sum(ts) => {
                let mut acc = QSeries::zero(prec);
                for t in ts {
                    acc = &acc + &t.eval(r, prec)?;
                }
                acc
            }
            FormExpr::Product(fs) => {
                let mut scalar = Rational::one();
                let mut acc: Option<QSeries> = None;
                for f in fs {
                    if let FormExpr::Const(c) = f {
                        scalar *= c;
                        continue;
                    }
                    let s = f.eval(r, prec)?;
                    acc = Some(match acc {
                        None => s,
                        Some(a) => &a * &s,
                    });
                }
                match acc {
                    None => QSeries::constant(scalar, prec),
                    Some(a) => a.scale(&scalar),
                }
            }
            FormExpr::Neg(e) => -e.eval(r, prec)?,
            FormExpr::Pow(e, k) => e.eval(r, prec)?.pow(*k as i64)?,
        })
    }

    /// Weight of the expression; every summand must agree. Constants have
    /// weight 0 and `D` adds 2.
    pub fn weight(&self, r: &dyn FormResolver) -> Result<u32> {
        match self {
            FormExpr::Const(_) => Ok(0),
            FormExpr::Form(f) => r.weight_of(&f.name),
            FormExpr::Eta(e) => {
                let w = e.weight();
                if !w.is_integer() || w < Rational::zero() {
                    return Err(Error::Catalog(format!("{e} has weight {w}")));
                }
                Ok(w.to_integer().try_into().unwrap_or(u32::MAX))
            }
            FormExpr::Deriv(e) => Ok(e.weight(r)? + 2),
            FormExpr::Neg(e) => e.weight(r),
            FormExpr::Pow(e, k) => Ok(e.weight(r)? * k),
            FormExpr::Product(fs) => fs.iter().map(|f| f.weight(r)).sum(),
            FormExpr::Sum(ts) => {
                let ws = ts.iter().map(|t| t.weight(r)).collect::<Result<Vec<_>>>()?;
                match ws.split_first() {
                    None => Ok(0),
                    Some((w, rest)) if rest.iter().all(|x| x == w) => Ok(*w),
                    Some(_) => Err(Error::Catalog(format!("summands of `{self}` have different weights {ws:?}"))),
                }
            }
        }
    }

    /// Names of all forms referenced, in first-occurrence order.
    pub fn references(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs(&self, out: &mut Vec<String>) {
        match self {
            FormExpr::Form(f) => {
                if !out.contains(&f.name) {
                    out.push(f.name.clone());
                }
            }
            FormExpr::Deriv(e) | FormExpr::Neg(e) | FormExpr::Pow(e, _) => e.collect_refs(out),
            FormExpr::Sum(v) | FormExpr::Product(v) => v.iter().for_each(|e| e.collect_refs(out)),
            FormExpr::Const(_) | FormExpr::Eta(_) => {}
        }
    }

    /// Replaces every reference to `from` by `to`.
    pub fn rename(&self, from: &str, to: &str) -> FormExpr {
        match self {
            FormExpr::Form(f) if f.name == from => FormExpr::Form(FormRef::new(to, f.dilation)),
            FormExpr::Deriv(e) => FormExpr::Deriv(Box::new(e.rename(from, to))),
            FormExpr::Neg(e) => FormExpr::Neg(Box::new(e.rename(from, to))),
            FormExpr::Pow(e, k) => FormExpr::Pow(Box::new(e.rename(from, to)), *k),
            FormExpr::Sum(v) => FormExpr::Sum(v.iter().map(|e| e.rename(from, to)).collect()),
            FormExpr::Product(v) => FormExpr::Product(v.iter().map(|e| e.rename(from, to)).collect()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormExpr::Const(c) => write!(f, "{c}"),
            FormExpr::Form(r) => write!(f, "{r}"),
            FormExpr::Eta(e) => write!(f, "{e}"),
            FormExpr::Deriv(e) => write!(f, "D({e})"),
            FormExpr::Neg(e) => write!(f, "-({e})"),
            FormExpr::Pow(e, k) => write!(f, "({e})^{k}"),
            FormExpr::Sum(v) => {
                f.write_str("(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            FormExpr::Product(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { input: self.src.to_string(), position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return self.err("expected integer");
        }
        self.pos += digits.len();
        digits.parse().or_else(|_| self.err("integer too large"))
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let v = self.integer()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let id: String = self.rest().chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        if id.is_empty() || id.starts_with(|c: char| c.is_ascii_digit()) {
            return self.err("expected identifier");
        }
        self.pos += id.len();
        Ok(id)
    }

    fn expr(&mut self) -> Result<FormExpr> {
        let mut terms = Vec::new();
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            terms.push(if negate { FormExpr::Neg(Box::new(t)) } else { t });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { FormExpr::Sum(terms) })
    }

    fn term(&mut self) -> Result<FormExpr> {
        let mut factors = vec![self.power()?];
        while self.eat('*') {
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { FormExpr::Product(factors) })
    }

    fn power(&mut self) -> Result<FormExpr> {
        let a = self.atom()?;
        if self.eat('^') {
            let k = self.integer()?;
            return Ok(FormExpr::Pow(Box::new(a), k as u32));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<FormExpr> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let d = if self.eat('/') { self.integer()? } else { 1 };
                if d == 0 {
                    return self.err("zero denominator");
                }
                Ok(FormExpr::Const(int(n) / int(d)))
            }
            Some(_) => {
                let start = self.pos;
                let id = self.ident()?;
                match id.as_str() {
                    "eta" => self.eta_body(),
                    "D" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(')')?;
                        Ok(FormExpr::Deriv(Box::new(e)))
                    }
                    _ => {
                        self.pos = start;
                        Ok(FormExpr::Form(self.form_ref()?))
                    }
                }
            }
        }
    }

    fn eta_body(&mut self) -> Result<FormExpr> {
        self.expect('[')?;
        let mut factors = Vec::new();
        while !self.eat(']') {
            let t = self.integer()?;
            self.expect('^')?;
            let m = self.signed_integer()?;
            factors.push((t, m));
            self.eat(',');
        }
        if factors.is_empty() {
            return self.err("empty eta product");
        }
        Ok(FormExpr::Eta(EtaProduct::new(factors)?))
    }

    fn form_ref(&mut self) -> Result<FormRef> {
        let name = self.ident()?;
        self.expect('(')?;
        let t = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) { self.integer()? } else { 1 };
        if t == 0 {
            return self.err("dilation must be positive");
        }
        self.expect('z')?;
        self.expect(')')?;
        Ok(FormRef::new(name, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use crate::catalog::eisenstein::{eisenstein, eisenstein2};

    struct Builtins;

    impl FormResolver for Builtins {
        fn resolve(&self, name: &str, prec: usize) -> Result<QSeries> {
            match name {
                "E2" => Ok(eisenstein2(prec)),
                n if n.starts_with('E') => eisenstein(n[1..].parse().unwrap(), prec),
                _ => Err(Error::UnknownForm(name.into())),
            }
        }
        fn weight_of(&self, name: &str) -> Result<u32> {
            name[1..].parse().map_err(|_| Error::UnknownForm(name.into()))
        }
    }

    #[test]
    fn form_refs_round_trip() {
        let r: FormRef = "E6(2z)".parse().unwrap();
        assert_eq!(r, FormRef::new("E6", 2));
        assert_eq!(r.to_string(), "E6(2z)");
        let r: FormRef = "Delta_8_2( z )".parse().unwrap();
        assert_eq!(r.to_string(), "Delta_8_2(z)");
        assert!("E6(0z)".parse::<FormRef>().is_err());
        assert!("E6".parse::<FormRef>().is_err());
    }

    #[test]
    fn parses_and_evaluates_combinations() {
        let e = FormExpr::parse("1/2*D(E4(z)) - E2(6z)*E4(z)").unwrap();
        assert_eq!(e.weight(&Builtins).unwrap(), 6);
        let got = e.eval(&Builtins, 20).unwrap();
        let e4 = eisenstein(4, 20).unwrap();
        let want = &e4.qderiv().scale(&frac(1, 2)) - &(&eisenstein2(20).dilate(6) * &e4);
        assert_eq!(got, want);
    }

    #[test]
    fn eta_and_powers() {
        let e = FormExpr::parse("eta[1^1 3^1 5^1 15^1]^2").unwrap();
        assert_eq!(e.weight(&Builtins).unwrap(), 4);
        let direct = crate::eta::eta_expand(&[(1, 2), (3, 2), (5, 2), (15, 2)], 30).unwrap();
        assert_eq!(e.eval(&Builtins, 30).unwrap(), direct);
        let q = FormExpr::parse("eta[2^16 1^-8]*E6(z)").unwrap();
        assert_eq!(q.weight(&Builtins).unwrap(), 10);
    }

    #[test]
    fn weight_mismatch_is_reported() {
        let e = FormExpr::parse("E4(z) + E6(z)").unwrap();
        assert!(e.weight(&Builtins).is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        match FormExpr::parse("E4(z) + * E6(z)") {
            Err(Error::Parse { position, .. }) => assert!(position >= 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(FormExpr::parse("3/0").is_err());
        assert!(FormExpr::parse("eta[]").is_err());
    }

    #[test]
    fn rename_and_references() {
        let e = FormExpr::parse("2*A(z) - 3*B(2z) + A(3z)").unwrap();
        assert_eq!(e.references(), vec!["A".to_string(), "B".to_string()]);
        assert_eq!(e.rename("B", "C").references(), vec!["A".to_string(), "C".to_string()]);
    }
}
