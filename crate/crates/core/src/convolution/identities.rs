//! The identity catalog and its verification against independent
//! evaluations.
//!
//! Each identity is checked numerically (brute-force sums or q-expansions
//! on both sides) and, where the engine can derive the same statement
//! itself, the published constants are compared with the derived ones.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, Rational};
use crate::catalog::{Catalog, FormExpr, FormRef};
use crate::convolution::closed_form::{ClosedForm, CoefficientTable, Func};
use crate::convolution::formulas::expand_atoms;
use crate::error::{Error, Result};
use crate::operators::{Construction, ConstructionKind};
use crate::report::rational;
use crate::series::QSeries;

const SHIPPED: &str = include_str!("../../data/identities.toml");

/// What an identity asserts.
#[derive(Clone, Debug)]
pub enum IdentityKind {
    /// A construction equals a published combination of basis elements.
    Combination { construction: Construction, terms: Vec<(FormRef, Rational)> },
    /// `lhs(n) = rhs(n)` for every `n` in range.
    Convolution { lhs: ClosedForm, rhs: ClosedForm },
    /// `lhs = rhs` as q-series.
    Series { lhs: FormExpr, rhs: FormExpr },
}

impl IdentityKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Combination { .. } => "combination",
            Self::Convolution { .. } => "convolution",
            Self::Series { .. } => "series",
        }
    }

    /// Range checked when none is requested.
    pub fn default_range(&self) -> RangeInclusive<u64> {
        match self {
            Self::Combination { .. } => 0..=60,
            Self::Convolution { .. } => 1..=100,
            Self::Series { .. } => 0..=50,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub id: String,
    pub family: String,
    pub label: String,
    /// Range from the identity file, overriding the kind's default.
    pub range: Option<RangeInclusive<u64>>,
    pub kind: IdentityKind,
}

impl Identity {
    pub fn range(&self) -> RangeInclusive<u64> {
        self.range.clone().unwrap_or_else(|| self.kind.default_range())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRecord {
    id: String,
    family: String,
    kind: String,
    #[serde(default)]
    label: String,
    range: Option<[u64; 2]>,
    construction: Option<String>,
    k: Option<u32>,
    a: Option<u64>,
    b: Option<u64>,
    terms: Option<Vec<[String; 2]>>,
    lhs: Option<String>,
    rhs: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct File {
    identity: Vec<FileRecord>,
}

fn bad(id: &str, msg: impl std::fmt::Display) -> Error {
    Error::Catalog(format!("identity `{id}`: {msg}"))
}

fn required<T>(id: &str, field: &str, v: Option<T>) -> Result<T> {
    v.ok_or_else(|| bad(id, format!("missing field `{field}`")))
}

impl FileRecord {
    fn into_identity(self) -> Result<Identity> {
        let id = self.id.clone();
        let range = match self.range {
            Some([lo, hi]) if lo <= hi => Some(lo..=hi),
            Some([lo, hi]) => return Err(bad(&id, format!("empty range {lo}..{hi}"))),
            None => None,
        };
        let kind = match self.kind.as_str() {
            "combination" => {
                let ck: ConstructionKind = required(&id, "construction", self.construction)?.parse()?;
                let construction =
                    Construction::new(ck, required(&id, "a", self.a)?, required(&id, "b", self.b)?, self.k)?;
                let terms = required(&id, "terms", self.terms)?
                    .into_iter()
                    .map(|[r, c]| Ok((r.parse::<FormRef>()?, parse_rational(&c)?)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| bad(&id, e))?;
                IdentityKind::Combination { construction, terms }
            }
            "convolution" => IdentityKind::Convolution {
                lhs: ClosedForm::parse(&required(&id, "lhs", self.lhs)?).map_err(|e| bad(&id, e))?,
                rhs: ClosedForm::parse(&required(&id, "rhs", self.rhs)?).map_err(|e| bad(&id, e))?,
            },
            "series" => IdentityKind::Series {
                lhs: FormExpr::parse(&required(&id, "lhs", self.lhs)?).map_err(|e| bad(&id, e))?,
                rhs: FormExpr::parse(&required(&id, "rhs", self.rhs)?).map_err(|e| bad(&id, e))?,
            },
            other => return Err(bad(&id, format!("unknown kind `{other}`"))),
        };
        Ok(Identity { id: self.id, family: self.family, label: self.label, range, kind })
    }
}

/// All identities from an identity file, in file order.
#[derive(Clone, Debug)]
pub struct IdentityCatalog {
    identities: Vec<Identity>,
}

impl IdentityCatalog {
    /// The identity file shipped with the crate.
    pub fn shipped() -> Result<Self> {
        Self::from_toml_str(SHIPPED)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml_str(src: &str) -> Result<Self> {
        let file: File = toml::from_str(src)?;
        let identities = file.identity.into_iter().map(FileRecord::into_identity).collect::<Result<Vec<_>>>()?;
        let mut seen = BTreeSet::new();
        for i in &identities {
            if !seen.insert(i.id.as_str()) {
                return Err(bad(&i.id, "duplicate id"));
            }
        }
        Ok(Self { identities })
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn get(&self, id: &str) -> Result<&Identity> {
        self.identities.iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }

    pub fn families(&self) -> BTreeSet<&str> {
        self.identities.iter().map(|i| i.family.as_str()).collect()
    }

    /// Identities matching every given selector.
    pub fn select(&self, family: Option<&str>, id: Option<&str>) -> Vec<&Identity> {
        self.identities
            .iter()
            .filter(|i| family.is_none_or(|f| i.family == f))
            .filter(|i| id.is_none_or(|x| i.id == x))
            .collect()
    }

    /// Verifies the selection in parallel; reports are sorted by id.
    pub fn verify_all(
        &self,
        selection: &[&Identity],
        catalog: &Catalog,
        range: Option<RangeInclusive<u64>>,
    ) -> Vec<VerificationReport> {
        let mut out: Vec<VerificationReport> =
            selection.par_iter().map(|i| verify_identity(i, catalog, range.clone())).collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Passed on every index where both sides are available, but some
    /// indices had no certified coefficients.
    Clipped,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Clipped => "clipped",
            Self::Fail => "fail",
        })
    }
}

/// First index where the two sides differ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: u64,
    #[serde(with = "rational")]
    pub lhs: Rational,
    #[serde(with = "rational")]
    pub rhs: Rational,
}

/// A term whose published coefficient differs from the derived one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDifference {
    pub term: String,
    pub published: String,
    pub derived: String,
}

/// Comparison of published constants with independently derived ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedCheck {
    pub agrees: bool,
    pub differences: Vec<TermDifference>,
    /// Why no derivation was possible, if so.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub family: String,
    pub kind: String,
    pub status: Status,
    pub range: [u64; 2],
    /// Number of indices where both sides were compared.
    pub checked: u64,
    pub first_discrepancy: Option<Discrepancy>,
    pub clipped: Vec<u64>,
    pub derived: Option<DerivedCheck>,
    pub error: Option<String>,
}

/// Running comparison of two sides over a range.
struct Tally {
    checked: u64,
    first: Option<Discrepancy>,
    clipped: Vec<u64>,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, first: None, clipped: Vec::new() }
    }

    fn record(&mut self, n: u64, lhs: Option<Rational>, rhs: Option<Rational>) {
        match (lhs, rhs) {
            (Some(l), Some(r)) => {
                self.checked += 1;
                if l != r && self.first.is_none() {
                    self.first = Some(Discrepancy { n, lhs: l, rhs: r });
                }
            }
            _ => self.clipped.push(n),
        }
    }

    fn status(&self) -> Status {
        match (&self.first, self.clipped.is_empty()) {
            (Some(_), _) => Status::Fail,
            (None, true) => Status::Pass,
            (None, false) => Status::Clipped,
        }
    }
}

/// Checks one identity over `range` (its default range if `None`).
pub fn verify_identity(
    identity: &Identity,
    catalog: &Catalog,
    range: Option<RangeInclusive<u64>>,
) -> VerificationReport {
    let range = range.unwrap_or_else(|| identity.range());
    let mut report = VerificationReport {
        id: identity.id.clone(),
        family: identity.family.clone(),
        kind: identity.kind.name().into(),
        status: Status::Fail,
        range: [*range.start(), *range.end()],
        checked: 0,
        first_discrepancy: None,
        clipped: Vec::new(),
        derived: None,
        error: None,
    };
    let tally = match &identity.kind {
        IdentityKind::Combination { construction, terms } => check_combination(catalog, construction, terms, &range),
        IdentityKind::Convolution { lhs, rhs } => check_convolution(catalog, lhs, rhs, &range),
        IdentityKind::Series { lhs, rhs } => check_series(catalog, lhs, rhs, &range),
    };
    match tally {
        Ok(t) => {
            report.status = t.status();
            report.checked = t.checked;
            report.first_discrepancy = t.first;
            report.clipped = t.clipped;
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report.derived = match &identity.kind {
        IdentityKind::Combination { construction, terms } => Some(derive_combination(catalog, construction, terms)),
        IdentityKind::Convolution { lhs, rhs } => Some(derive_convolution(catalog, lhs, rhs)),
        IdentityKind::Series { .. } => None,
    };
    report
}

fn check_combination(
    catalog: &Catalog,
    construction: &Construction,
    terms: &[(FormRef, Rational)],
    range: &RangeInclusive<u64>,
) -> Result<Tally> {
    let prec = *range.end() as usize + 1;
    let lhs = construction.series(prec)?;
    let mut rhs: Vec<Option<Rational>> = vec![Some(Rational::from_integer(0.into())); prec];
    for (r, c) in terms {
        let p = catalog.partial_ref(r, prec)?;
        for (acc, v) in rhs.iter_mut().zip(p.coeffs) {
            *acc = match (acc.take(), v) {
                (Some(a), Some(v)) => Some(a + c * v),
                _ => None,
            };
        }
    }
    let mut t = Tally::new();
    for n in range.clone() {
        t.record(n, Some(lhs.coeff(n as usize).clone()), rhs[n as usize].clone());
    }
    Ok(t)
}

fn check_convolution(
    catalog: &Catalog,
    lhs: &ClosedForm,
    rhs: &ClosedForm,
    range: &RangeInclusive<u64>,
) -> Result<Tally> {
    if *range.start() == 0 {
        return Err(Error::Precondition("convolution identities hold for n >= 1".into()));
    }
    let mut table = CoefficientTable::new(catalog, *range.end());
    let mut t = Tally::new();
    for n in range.clone() {
        let l = lhs.eval(n, &mut table)?;
        let r = rhs.eval(n, &mut table)?;
        t.record(n, l, r);
    }
    Ok(t)
}

/// Evaluates an expression through `prec`, falling back to the longest
/// available prefix; returns the series and the first unavailable index.
fn eval_prefix(catalog: &Catalog, e: &FormExpr, prec: usize) -> Result<(QSeries, usize)> {
    match e.eval(catalog, prec) {
        Ok(s) => Ok((s, prec)),
        Err(Error::Unavailable { index, .. }) if index < prec => Ok((e.eval(catalog, index)?, index)),
        Err(e) => Err(e),
    }
}

fn check_series(catalog: &Catalog, lhs: &FormExpr, rhs: &FormExpr, range: &RangeInclusive<u64>) -> Result<Tally> {
    let prec = *range.end() as usize + 1;
    let (l, lp) = eval_prefix(catalog, lhs, prec)?;
    let (r, rp) = eval_prefix(catalog, rhs, prec)?;
    let avail = lp.min(rp);
    let mut t = Tally::new();
    for n in range.clone() {
        let i = n as usize;
        if i < avail {
            t.record(n, Some(l.coeff(i).clone()), Some(r.coeff(i).clone()));
        } else {
            t.record(n, None, None);
        }
    }
    Ok(t)
}

fn derive_combination(catalog: &Catalog, construction: &Construction, terms: &[(FormRef, Rational)]) -> DerivedCheck {
    let comb = match construction.derive(catalog, 0) {
        Ok(c) => c,
        Err(e) => return DerivedCheck { agrees: false, differences: Vec::new(), error: Some(e.to_string()) },
    };
    let published = |r: &FormRef| {
        terms.iter().filter(|(b, _)| b == r).fold(Rational::from_integer(0.into()), |acc, (_, c)| acc + c)
    };
    let mut refs: Vec<FormRef> = comb.basis.clone();
    for (r, _) in terms {
        if !refs.contains(r) {
            refs.push(r.clone());
        }
    }
    let differences: Vec<TermDifference> = refs
        .iter()
        .filter_map(|r| {
            let (p, d) = (published(r), comb.coefficient_of(r));
            (p != d).then(|| TermDifference { term: r.to_string(), published: p.to_string(), derived: d.to_string() })
        })
        .collect();
    DerivedCheck { agrees: differences.is_empty(), differences, error: None }
}

/// Splits a closed form into its brute-force atoms and everything else.
fn split_atoms(c: &ClosedForm) -> (ClosedForm, ClosedForm) {
    let (mut atoms, mut rest) = (ClosedForm::zero(), ClosedForm::zero());
    for (f, d, p) in c.terms() {
        let target = if matches!(f, Func::Conv { .. }) { &mut atoms } else { &mut rest };
        target.add_term(p.clone(), f.clone(), d);
    }
    (atoms, rest)
}

fn derive_convolution(catalog: &Catalog, lhs: &ClosedForm, rhs: &ClosedForm) -> DerivedCheck {
    let (rhs_atoms, published) = split_atoms(rhs);
    let derived = expand_atoms(catalog, lhs).and_then(|l| Ok(&l - &expand_atoms(catalog, &rhs_atoms)?));
    match derived {
        Ok(derived) => {
            let differences: Vec<TermDifference> = published
                .diff(&derived)
                .into_iter()
                .map(|d| TermDifference { term: d.atom(), published: d.left.to_string(), derived: d.right.to_string() })
                .collect();
            DerivedCheck { agrees: differences.is_empty(), differences, error: None }
        }
        Err(e) => DerivedCheck { agrees: false, differences: Vec::new(), error: Some(e.to_string()) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_loads() {
        let ids = IdentityCatalog::shipped().unwrap();
        let count = |f: &str| ids.select(Some(f), None).len();
        assert_eq!(count("theta"), 16);
        assert_eq!(count("wab"), 6);
        assert_eq!(count("w1k"), 27);
        assert!(ids.get("W15").is_ok());
        assert!(matches!(ids.get("nope"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn malformed_files_are_rejected() {
        let dup = "[[identity]]\nid='x'\nfamily='f'\nkind='convolution'\nlhs='sigma(n)'\nrhs='sigma(n)'\n";
        assert!(IdentityCatalog::from_toml_str(&format!("{dup}{dup}")).is_err());
        let missing = "[[identity]]\nid='x'\nfamily='f'\nkind='convolution'\nlhs='sigma(n)'\n";
        assert!(IdentityCatalog::from_toml_str(missing).is_err());
        let kind = "[[identity]]\nid='x'\nfamily='f'\nkind='other'\n";
        assert!(IdentityCatalog::from_toml_str(kind).is_err());
    }

    #[test]
    fn single_identities() {
        let ids = IdentityCatalog::shipped().unwrap();
        let cat = Catalog::shared();
        let r = verify_identity(ids.get("theta-k4-1-2").unwrap(), cat, None);
        assert_eq!(r.status, Status::Pass);
        assert!(r.derived.unwrap().agrees);
        let r = verify_identity(ids.get("W15").unwrap(), cat, Some(8..=8));
        assert_eq!((r.status, r.checked), (Status::Pass, 1));
        let r = verify_identity(ids.get("u1").unwrap(), cat, None);
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn wrong_constants_are_caught() {
        let src = "[[identity]]\nid='bad'\nfamily='f'\nkind='convolution'\nlhs='W[1,1;0;1,1](n)'\n\
                   rhs='5/12*sigma3(n) + (1 - 6*n)/12*sigma(n) + 1/1000*sigma(n)'\n";
        let ids = IdentityCatalog::from_toml_str(src).unwrap();
        let r = verify_identity(&ids.identities()[0], Catalog::shared(), Some(1..=10));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.first_discrepancy.unwrap().n, 1);
        let d = r.derived.unwrap();
        assert!(!d.agrees);
        assert_eq!(d.differences.len(), 1);
        assert_eq!(d.differences[0].term, "sigma(n)");
    }

    #[test]
    fn missing_coefficients_clip() {
        let cat = Catalog::shipped().unwrap().with_completion(false);
        let ids = IdentityCatalog::shipped().unwrap();
        let r = verify_identity(ids.get("W30").unwrap(), &cat, Some(1..=40));
        assert_eq!(r.status, Status::Clipped, "{r:?}");
        assert!(r.clipped.contains(&29) && r.clipped.contains(&31) && r.clipped.contains(&37));
        assert!(r.first_discrepancy.is_none());
    }
}
