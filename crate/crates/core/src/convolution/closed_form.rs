//! Closed forms in `n`: sums of `p(n) * f(n/d)` where `p` is a rational
//! polynomial and `f` a divisor function, a catalog form's coefficients or
//! a brute-force convolution sum.
//!
//! Terms are kept in a canonical map keyed by `(f, d)`, so two closed forms
//! are equal exactly when they agree term by term.
//!
//! Text syntax (used by the identity file and printed by `Display`):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*     at most one atom per term
//! factor := RATIONAL | 'n' ['^' INT] | '(' expr ')' | atom
//! atom   := 'sigma' [INT] '(' arg ')'       divisor function, sigma = sigma1
//!         | 'W[' a ',' b ';' e ';' r ',' s ']' '(' arg ')'
//!         | NAME '(' arg ')'                n-th coefficient of a catalog form
//! arg    := 'n' ['/' INT]
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{int, Rational};
use crate::catalog::{sigma_int, Catalog, FormRef};
use crate::convolution::brute::w_weighted_brute;
use crate::error::{Error, Result};

/// Polynomial in `n` with rational coefficients, lowest degree first and
/// no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * n^j`.
    pub fn monomial(c: Rational, j: usize) -> Self {
        let mut v = vec![Rational::zero(); j + 1];
        v[j] = c;
        Self::new(v)
    }

    /// The polynomial `n`.
    pub fn n() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        crate::arith::eval_poly(&self.0, n)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    /// `p(n / d)`.
    pub fn substitute_div(&self, d: u64) -> Self {
        let d = int(d);
        let mut f = Rational::one();
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            out.push(c / &f);
            f *= &d;
        }
        Self::new(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        let zero = Rational::zero();
        Poly::new((0..len).map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(bool, String)> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let neg = c < &Rational::zero();
                let a = if neg { -c.clone() } else { c.clone() };
                let s = match (j, a.is_one()) {
                    (0, _) => a.to_string(),
                    (_, true) => monomial_text(j),
                    (_, false) => format!("{a}*{}", monomial_text(j)),
                };
                (neg, s)
            })
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (neg, s)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{s}")?,
                (0, false) => f.write_str(s)?,
                (_, true) => write!(f, " - {s}")?,
                (_, false) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

fn monomial_text(j: usize) -> String {
    if j == 1 {
        "n".into()
    } else {
        format!("n^{j}")
    }
}

/// Arithmetic function of a positive integer argument.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    /// `sigma_r`.
    Sigma(u32),
    /// Coefficients of a catalog form.
    Coeff(String),
    /// `sum_{al+bm=m} l^e sigma_r(l) sigma_s(m)` evaluated by brute force.
    Conv { a: u64, b: u64, e: u32, r: u32, s: u32 },
    /// The constant function 1 (for polynomial-only terms).
    One,
}

impl Func {
    fn write_atom(&self, f: &mut fmt::Formatter<'_>, arg: &str) -> fmt::Result {
        match self {
            Func::Sigma(1) => write!(f, "sigma({arg})"),
            Func::Sigma(r) => write!(f, "sigma{r}({arg})"),
            Func::Coeff(name) => write!(f, "{name}({arg})"),
            Func::Conv { a, b, e, r, s } => write!(f, "W[{a},{b};{e};{r},{s}]({arg})"),
            Func::One => Ok(()),
        }
    }
}

/// Values of catalog coefficients needed while evaluating closed forms,
/// fetched once per form up to a fixed bound.
pub struct CoefficientTable<'a> {
    catalog: &'a Catalog,
    bound: u64,
    forms: HashMap<String, Vec<Option<Rational>>>,
}

impl<'a> CoefficientTable<'a> {
    /// Table for arguments `1..=bound`.
    pub fn new(catalog: &'a Catalog, bound: u64) -> Self {
        Self { catalog, bound, forms: HashMap::new() }
    }

    pub fn catalog(&self) -> &Catalog {
        self.catalog
    }

    /// `a(m)` of form `name`; `Ok(None)` when the coefficient cannot be
    /// certified from the catalog data.
    pub fn coeff(&mut self, name: &str, m: u64) -> Result<Option<Rational>> {
        if m > self.bound {
            return Err(Error::Precondition(format!("argument {m} exceeds table bound {}", self.bound)));
        }
        if !self.forms.contains_key(name) {
            let p = self.catalog.partial_series(name, self.bound as usize + 1)?;
            self.forms.insert(name.to_string(), p.coeffs);
        }
        Ok(self.forms[name][m as usize].clone())
    }

    /// `f(m)`; `Ok(None)` if unavailable.
    pub fn eval(&mut self, func: &Func, m: u64) -> Result<Option<Rational>> {
        Ok(Some(match func {
            Func::Sigma(r) => Rational::from_integer(sigma_int(*r, m)),
            Func::Coeff(name) => return self.coeff(name, m),
            Func::Conv { a, b, e, r, s } => Rational::from_integer(w_weighted_brute(*a, *b, *e, *r, *s, m)?),
            Func::One => Rational::one(),
        }))
    }
}

/// A canonical sum of terms `p(n) * f(n/d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedForm {
    terms: BTreeMap<(Func, u64), Poly>,
}

/// One term where two closed forms differ.
#[derive(Clone, Debug, PartialEq)]
pub struct TermDiff {
    pub func: Func,
    pub divisor: u64,
    pub left: Poly,
    pub right: Poly,
}

impl TermDiff {
    /// The atom as text, e.g. `sigma3(n/2)`.
    pub fn atom(&self) -> String {
        ClosedForm::term(Poly::constant(Rational::one()), self.func.clone(), self.divisor).to_string()
    }
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `p(n) * f(n/d)`.
    pub fn term(p: Poly, func: Func, divisor: u64) -> Self {
        assert!(divisor >= 1, "divisor must be positive");
        let mut c = Self::zero();
        c.add_term(p, func, divisor);
        c
    }

    pub fn add_term(&mut self, p: Poly, func: Func, divisor: u64) {
        let divisor = if func == Func::One { 1 } else { divisor };
        let key = (func, divisor);
        let sum = match self.terms.get(&key) {
            Some(q) => q + &p,
            None => p,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Func, u64, &Poly)> {
        self.terms.iter().map(|((f, d), p)| (f, *d, p))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies every coefficient polynomial by `p`.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        let mut out = Self::zero();
        for (f, d, q) in self.terms() {
            out.add_term(q * p, f.clone(), d);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_poly(&Poly::constant(c.clone()))
    }

    /// `F(n/t)` as a closed form in `n`.
    pub fn at_div(&self, t: u64) -> Self {
        let mut out = Self::zero();
        for (f, d, p) in self.terms() {
            out.add_term(p.substitute_div(t), f.clone(), d * t);
        }
        out
    }

    /// Catalog forms referenced by coefficient terms.
    pub fn forms(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .terms
            .keys()
            .filter_map(|(f, _)| match f {
                Func::Coeff(name) => Some(name.as_str()),
                _ => None,
            })
            .collect();
        v.dedup();
        v
    }

    /// Value at `n`; `Ok(None)` when a needed coefficient is unavailable.
    pub fn eval(&self, n: u64, table: &mut CoefficientTable<'_>) -> Result<Option<Rational>> {
        let nn = int(n);
        let mut acc = Rational::zero();
        for (f, d, p) in self.terms() {
            if !n.is_multiple_of(d) {
                continue;
            }
            let Some(v) = table.eval(f, n / d)? else {
                return Ok(None);
            };
            if !v.is_zero() {
                acc += p.eval(&nn) * v;
            }
        }
        Ok(Some(acc))
    }

    /// Terms where `self` and `other` disagree.
    pub fn diff(&self, other: &Self) -> Vec<TermDiff> {
        let keys: std::collections::BTreeSet<&(Func, u64)> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .filter_map(|k| {
                let l = self.terms.get(k).cloned().unwrap_or_default();
                let r = other.terms.get(k).cloned().unwrap_or_default();
                (l != r).then(|| TermDiff { func: k.0.clone(), divisor: k.1, left: l, right: r })
            })
            .collect()
    }

    /// Writes basis element `r` with coefficient `c` as its `n`-th
    /// coefficient for `n >= 1`: Eisenstein series become divisor sums.
    pub fn from_basis_coefficient(r: &FormRef, c: &Rational) -> Result<Self> {
        if let Some(k) = r.name.strip_prefix('E').and_then(|k| k.parse::<u32>().ok()) {
            let norm = crate::catalog::eisenstein_normalizer(k)?;
            return Ok(Self::term(Poly::constant(c * norm), Func::Sigma(k - 1), r.dilation));
        }
        Ok(Self::term(Poly::constant(c.clone()), Func::Coeff(r.name.clone()), r.dilation))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < s.len() {
            return p.err("unexpected trailing input");
        }
        Ok(out.into_closed_form())
    }
}

impl Add for &ClosedForm {
    type Output = ClosedForm;
    fn add(self, o: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        for (f, d, p) in o.terms() {
            out.add_term(p.clone(), f.clone(), d);
        }
        out
    }
}

impl Sub for &ClosedForm {
    type Output = ClosedForm;
    fn sub(self, o: &ClosedForm) -> ClosedForm {
        self + &(-o)
    }
}

impl Neg for &ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (func, d, p)) in self.terms().enumerate() {
            let arg = if d == 1 { "n".to_string() } else { format!("n/{d}") };
            let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            let (neg, body) = if single {
                let (j, c) = p.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()).unwrap();
                let neg = c < &Rational::zero();
                let a = if neg { -c.clone() } else { c.clone() };
                let mut s = Poly::monomial(a, j).to_string();
                if *func != Func::One {
                    s = if s == "1" { String::new() } else { format!("{s}*") };
                }
                (neg, s)
            } else {
                (false, if *func == Func::One { format!("({p})") } else { format!("({p})*") })
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&body)?;
            func.write_atom(f, &arg)?;
        }
        Ok(())
    }
}

/// Intermediate parse value: a closed form, or a bare polynomial.
enum Value {
    Poly(Poly),
    Form(ClosedForm),
}

impl Value {
    fn into_closed_form(self) -> ClosedForm {
        match self {
            Value::Poly(p) => ClosedForm::term(p, Func::One, 1),
            Value::Form(c) => c,
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { input: self.src.to_string(), position: self.pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
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

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return self.err("expected integer");
        }
        self.pos += digits.len();
        digits.parse().or_else(|_| self.err("integer too large"))
    }

    fn big_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return self.err("expected integer");
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("digits parse as an integer"))
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

    fn expr(&mut self) -> Result<Value> {
        let mut acc = if self.eat('-') {
            negate(self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = add(acc, self.term()?);
            } else if self.eat('-') {
                acc = add(acc, negate(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let start = self.pos;
                acc = match (acc, self.factor()?) {
                    (Value::Poly(p), Value::Poly(q)) => Value::Poly(&p * &q),
                    (Value::Poly(p), Value::Form(c)) | (Value::Form(c), Value::Poly(p)) => Value::Form(c.mul_poly(&p)),
                    (Value::Form(_), Value::Form(_)) => {
                        self.pos = start;
                        return self.err("a term may contain at most one arithmetic function");
                    }
                };
            } else if self.eat('/') {
                let d = self.big_integer()?;
                if d.is_zero() {
                    return self.err("division by zero");
                }
                let inv = Rational::new(BigInt::one(), d);
                acc = match acc {
                    Value::Poly(p) => Value::Poly(p.scale(&inv)),
                    Value::Form(c) => Value::Form(c.scale(&inv)),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(Value::Poly(Poly::constant(Rational::from_integer(self.big_integer()?))))
            }
            Some(_) => {
                let start = self.pos;
                let id = self.ident()?;
                if id == "n" {
                    let j = if self.eat('^') { self.integer()? as usize } else { 1 };
                    return Ok(Value::Poly(Poly::monomial(Rational::one(), j)));
                }
                if id == "W" && self.peek() == Some('[') {
                    return self.conv_atom();
                }
                if let Some(r) = id.strip_prefix("sigma") {
                    let r = if r.is_empty() {
                        1
                    } else {
                        match r.parse() {
                            Ok(r) => r,
                            Err(_) => {
                                self.pos = start;
                                return self.err(format!("bad divisor function `{id}`"));
                            }
                        }
                    };
                    let d = self.argument()?;
                    return Ok(Value::Form(ClosedForm::term(Poly::constant(Rational::one()), Func::Sigma(r), d)));
                }
                let d = self.argument()?;
                Ok(Value::Form(ClosedForm::term(Poly::constant(Rational::one()), Func::Coeff(id), d)))
            }
        }
    }

    fn conv_atom(&mut self) -> Result<Value> {
        self.expect('[')?;
        let a = self.integer()?;
        self.expect(',')?;
        let b = self.integer()?;
        self.expect(';')?;
        let e = self.integer()? as u32;
        self.expect(';')?;
        let r = self.integer()? as u32;
        self.expect(',')?;
        let s = self.integer()? as u32;
        self.expect(']')?;
        if a == 0 || b == 0 {
            return self.err("W needs positive a and b");
        }
        let d = self.argument()?;
        Ok(Value::Form(ClosedForm::term(Poly::constant(Rational::one()), Func::Conv { a, b, e, r, s }, d)))
    }

    /// `(n)` or `(n/d)`; returns `d`.
    fn argument(&mut self) -> Result<u64> {
        self.expect('(')?;
        if self.ident()? != "n" {
            return self.err("argument must be `n` or `n/d`");
        }
        let d = if self.eat('/') { self.integer()? } else { 1 };
        if d == 0 {
            return self.err("divisor must be positive");
        }
        self.expect(')')?;
        Ok(d)
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Poly(p) => Value::Poly(p.scale(&-Rational::one())),
        Value::Form(c) => Value::Form(-&c),
    }
}

fn add(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Value::Poly(&p + &q),
        (a, b) => Value::Form(&a.into_closed_form() + &b.into_closed_form()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn parse_and_print() {
        let c = ClosedForm::parse(
            "1/1040*sigma5(n) + 9/104*sigma5(n/3) + (1-3*n)/24*sigma3(n/3) - 1/240*sigma(n) + 1/312*Delta_6_3(n)",
        )
        .unwrap();
        assert_eq!(c.len(), 5);
        let again = ClosedForm::parse(&c.to_string()).unwrap();
        assert_eq!(c, again);
        assert_eq!(
            c.to_string(),
            "-1/240*sigma(n) + (1/24 - 1/8*n)*sigma3(n/3) + 1/1040*sigma5(n) + 9/104*sigma5(n/3) + 1/312*Delta_6_3(n)"
        );
    }

    #[test]
    fn like_terms_merge() {
        let c = ClosedForm::parse("n*sigma(n) - (n - 1)*sigma(n) + 2*sigma3(n/2) - 2*sigma3(n/2)").unwrap();
        assert_eq!(c, ClosedForm::parse("sigma(n)").unwrap());
        let p = ClosedForm::parse("n^2/12*sigma(n/2)").unwrap();
        assert_eq!(p.terms().next().unwrap().2, &Poly::monomial(frac(1, 12), 2));
    }

    #[test]
    fn conv_atoms_and_polynomials() {
        let c = ClosedForm::parse("2*W[2,3;1;1,1](n) - W[1,6;1;1,1](n) + n^2/72").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c, ClosedForm::parse(&c.to_string()).unwrap());
    }

    #[test]
    fn substitution() {
        let c = ClosedForm::parse("5/24*n*sigma3(n) - (6*n^2 - n)/24*sigma(n)").unwrap();
        let d = c.at_div(2);
        assert_eq!(d, ClosedForm::parse("5/48*n*sigma3(n/2) - (3/2*n^2 - n/2)/24*sigma(n/2)").unwrap());
    }

    #[test]
    fn evaluation() {
        let cat = Catalog::shared();
        let mut t = CoefficientTable::new(cat, 20);
        let c = ClosedForm::parse("5/24*n*sigma3(n) - (6*n^2 - n)/24*sigma(n)").unwrap();
        assert_eq!(c.eval(2, &mut t).unwrap(), Some(int(1)));
        let d = ClosedForm::parse("Delta(n/2) + W[1,1;0;1,1](n)").unwrap();
        assert_eq!(d.eval(3, &mut t).unwrap(), Some(int(6)));
        assert_eq!(d.eval(4, &mut t).unwrap(), Some(int(-24 + 17)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ClosedForm::parse("sigma(n)*sigma(n)"), Err(Error::Parse { .. })));
        assert!(matches!(ClosedForm::parse("sigma(m)"), Err(Error::Parse { .. })));
        assert!(matches!(ClosedForm::parse("sigma(n/0)"), Err(Error::Parse { .. })));
        assert!(matches!(ClosedForm::parse("1/0*sigma(n)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn diff_lists_disagreeing_terms() {
        let a = ClosedForm::parse("1/63*sigma5(n) + 2*Delta(n)").unwrap();
        let b = ClosedForm::parse("1/63*sigma5(n) + 3*Delta(n) + sigma(n/2)").unwrap();
        let d = a.diff(&b);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].atom(), "sigma(n/2)");
        assert_eq!(d[1].left, Poly::constant(int(2)));
    }
}
