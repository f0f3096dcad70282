//! Named modular objects: Eisenstein series, the newform catalog and the
//! space bases built from them.
//!
//! The catalog is data-driven. Each newform is either an expression over eta
//! products, Eisenstein series and previously defined forms, or a list of
//! leading coefficients (see [`FormSource::Listed`]). Expansions are cached
//! per form at the largest precision requested so far.

pub mod eisenstein;
pub mod expr;
pub mod hecke;
pub mod space;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde::Deserialize;

#[cfg(test)]
use crate::arith::divisors;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::linalg::{coefficient_matrix, rank, solve};
use crate::series::QSeries;

pub use eisenstein::{eisenstein, eisenstein2, eisenstein_normalizer, sigma, sigma_frac, sigma_int, sigma_table};
pub use expr::{FormExpr, FormRef, FormResolver};
pub use hecke::{hecke_extend, hecke_inconsistencies, hecke_predict, PartialSeries};
pub use space::{dimension, index, sturm_bound, SpaceDescriptor};

/// The catalog file shipped with the crate.
pub const SHIPPED_FORMS: &str = include_str!("../../data/forms.toml");

#[derive(Clone, Debug, PartialEq)]
pub enum FormSource {
    Expr(FormExpr),
    /// Leading coefficients `a(0) .. a(L-1)`. When `completion` is non-empty
    /// the form is recovered as the unique combination of those spanning
    /// expressions matching the list; otherwise coefficients past the list
    /// come from [`hecke_extend`].
    Listed {
        coefficients: Vec<Rational>,
        completion: Vec<FormExpr>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormDef {
    pub name: String,
    pub weight: u32,
    pub level: u64,
    /// Normalized Hecke eigenform (as opposed to an auxiliary helper form).
    pub eigenform: bool,
    pub source: FormSource,
    pub note: Option<String>,
}

/// A reference in the source material that names a form not in the catalog,
/// with the candidates it may stand for and the adopted reading.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct Ambiguity {
    pub placeholder: String,
    pub candidates: Vec<String>,
    pub resolved: String,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceDef {
    pub weight: u32,
    pub level: u64,
    pub basis: Vec<FormRef>,
    pub note: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(default)]
    form: Vec<FormEntry>,
    #[serde(default)]
    ambiguity: Vec<Ambiguity>,
    #[serde(default)]
    space: Vec<SpaceEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormEntry {
    name: String,
    weight: u32,
    level: u64,
    #[serde(default = "default_true")]
    eigenform: bool,
    expr: Option<String>,
    coefficients: Option<Vec<i64>>,
    #[serde(default)]
    completion: Vec<String>,
    note: Option<String>,
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceEntry {
    weight: u32,
    level: u64,
    basis: Vec<String>,
    note: Option<String>,
}

pub struct Catalog {
    forms: BTreeMap<String, FormDef>,
    order: Vec<String>,
    ambiguities: Vec<Ambiguity>,
    spaces: Vec<SpaceDef>,
    completion: bool,
    cache: Mutex<HashMap<String, QSeries>>,
}

impl Clone for Catalog {
    fn clone(&self) -> Self {
        Self {
            forms: self.forms.clone(),
            order: self.order.clone(),
            ambiguities: self.ambiguities.clone(),
            spaces: self.spaces.clone(),
            completion: self.completion,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for Catalog {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Catalog")
            .field("forms", &self.order)
            .field("spaces", &self.spaces.len())
            .field("completion", &self.completion)
            .finish()
    }
}

/// Parses `E<k>` builtin names.
fn builtin_eisenstein(name: &str) -> Option<u32> {
    let k: u32 = name.strip_prefix('E')?.parse().ok()?;
    (k == 2 || (k >= 4 && k.is_multiple_of(2))).then_some(k)
}

impl Catalog {
    /// The shipped catalog, shared process-wide.
    pub fn shared() -> &'static Catalog {
        static SHARED: OnceLock<Catalog> = OnceLock::new();
        SHARED.get_or_init(|| Catalog::shipped().expect("shipped catalog is valid"))
    }

    pub fn shipped() -> Result<Self> {
        Self::from_toml_str(SHIPPED_FORMS)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_toml_str(src: &str) -> Result<Self> {
        let file: CatalogFile = toml::from_str(src)?;
        let mut forms = BTreeMap::new();
        let mut order = Vec::new();
        for e in file.form {
            if builtin_eisenstein(&e.name).is_some() {
                return Err(Error::Catalog(format!("`{}` shadows a builtin Eisenstein series", e.name)));
            }
            let source = match (e.expr, e.coefficients) {
                (Some(x), None) => {
                    if !e.completion.is_empty() {
                        return Err(Error::Catalog(format!("{}: completion needs listed coefficients", e.name)));
                    }
                    FormSource::Expr(FormExpr::parse(&x)?)
                }
                (None, Some(cs)) => FormSource::Listed {
                    coefficients: cs.into_iter().map(int).collect(),
                    completion: e.completion.iter().map(|s| FormExpr::parse(s)).collect::<Result<_>>()?,
                },
                _ => {
                    return Err(Error::Catalog(format!(
                        "{}: exactly one of `expr` and `coefficients` is required",
                        e.name
                    )))
                }
            };
            let def = FormDef {
                name: e.name.clone(),
                weight: e.weight,
                level: e.level,
                eigenform: e.eigenform,
                source,
                note: e.note,
            };
            if forms.insert(e.name.clone(), def).is_some() {
                return Err(Error::Catalog(format!("duplicate form `{}`", e.name)));
            }
            order.push(e.name);
        }
        let spaces = file
            .space
            .into_iter()
            .map(|s| {
                Ok(SpaceDef {
                    weight: s.weight,
                    level: s.level,
                    basis: s.basis.iter().map(|b| b.parse()).collect::<Result<_>>()?,
                    note: s.note,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cat = Self {
            forms,
            order,
            ambiguities: file.ambiguity,
            spaces,
            completion: true,
            cache: Mutex::new(HashMap::new()),
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        for a in &self.ambiguities {
            if self.forms.contains_key(&a.placeholder) {
                return Err(Error::Catalog(format!("placeholder `{}` is also a form", a.placeholder)));
            }
            if !a.candidates.contains(&a.resolved) {
                return Err(Error::Catalog(format!(
                    "`{}` resolves to `{}`, which is not a candidate",
                    a.placeholder, a.resolved
                )));
            }
            for c in &a.candidates {
                self.def(c)?;
            }
        }
        for name in &self.order {
            let def = &self.forms[name];
            let exprs: Vec<&FormExpr> = match &def.source {
                FormSource::Expr(e) => vec![e],
                FormSource::Listed { coefficients, completion } => {
                    if def.eigenform && coefficients.get(1) != Some(&int(1)) {
                        return Err(Error::Catalog(format!("{name}: listed form must have a(1) = 1")));
                    }
                    completion.iter().collect()
                }
            };
            for e in exprs {
                let w = e.weight(self)?;
                if w != def.weight {
                    return Err(Error::Catalog(format!(
                        "{name}: declared weight {} but expression `{e}` has weight {w}",
                        def.weight
                    )));
                }
            }
            self.check_acyclic(name, &mut Vec::new())?;
        }
        for s in &self.spaces {
            for b in &s.basis {
                let (w, l) = (self.weight_of(&b.name)?, self.level_of(&b.name)?);
                if w != s.weight || s.level % (l * b.dilation) != 0 {
                    return Err(Error::Catalog(format!(
                        "{b} (weight {w}, level {l}) does not lie in M_{}({})",
                        s.weight, s.level
                    )));
                }
            }
            let dim = dimension(s.weight, s.level);
            if s.basis.len() != dim {
                return Err(Error::Catalog(format!(
                    "M_{}({}) has dimension {dim} but {} basis elements are listed",
                    s.weight,
                    s.level,
                    s.basis.len()
                )));
            }
        }
        Ok(())
    }

    fn check_acyclic(&self, name: &str, stack: &mut Vec<String>) -> Result<()> {
        let name = self.resolve_name(name);
        if stack.iter().any(|s| s == name) {
            return Err(Error::Catalog(format!("cyclic definition through `{name}`")));
        }
        let Some(def) = self.forms.get(name) else {
            return Ok(());
        };
        stack.push(name.to_string());
        let refs = match &def.source {
            FormSource::Expr(e) => e.references(),
            FormSource::Listed { completion, .. } => completion.iter().flat_map(|e| e.references()).collect(),
        };
        for r in refs {
            self.check_acyclic(&r, stack)?;
        }
        stack.pop();
        Ok(())
    }

    /// Uses or ignores the completion families of listed forms.
    pub fn with_completion(mut self, on: bool) -> Self {
        self.completion = on;
        self.cache = Mutex::new(HashMap::new());
        self
    }

    pub fn completion_enabled(&self) -> bool {
        self.completion
    }

    /// A copy in which `placeholder` stands for `candidate` instead of the
    /// recorded resolution.
    pub fn with_resolution(&self, placeholder: &str, candidate: &str) -> Result<Self> {
        let mut c = self.clone();
        let a = c
            .ambiguities
            .iter_mut()
            .find(|a| a.placeholder == placeholder)
            .ok_or_else(|| Error::UnknownForm(placeholder.to_string()))?;
        if !a.candidates.iter().any(|x| x == candidate) {
            return Err(Error::Catalog(format!("`{candidate}` is not a candidate for `{placeholder}`")));
        }
        a.resolved = candidate.to_string();
        Ok(c)
    }

    pub fn ambiguities(&self) -> &[Ambiguity] {
        &self.ambiguities
    }

    /// Maps an ambiguity placeholder to its resolution; other names unchanged.
    pub fn resolve_name<'a>(&'a self, name: &'a str) -> &'a str {
        self.ambiguities.iter().find(|a| a.placeholder == name).map_or(name, |a| a.resolved.as_str())
    }

    pub fn forms(&self) -> impl Iterator<Item = &FormDef> {
        self.order.iter().map(|n| &self.forms[n])
    }

    pub fn spaces(&self) -> &[SpaceDef] {
        &self.spaces
    }

    pub fn def(&self, name: &str) -> Result<&FormDef> {
        self.forms.get(self.resolve_name(name)).ok_or_else(|| Error::UnknownForm(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        builtin_eisenstein(name).is_some() || self.forms.contains_key(self.resolve_name(name))
    }

    pub fn level_of(&self, name: &str) -> Result<u64> {
        if builtin_eisenstein(name).is_some() {
            return Ok(1);
        }
        Ok(self.def(name)?.level)
    }

    /// q-expansion of a named form to precision `prec`.
    ///
    /// A listed form without completion fails with [`Error::Unavailable`]
    /// when `prec` reaches an index that Hecke recursion cannot certify.
    pub fn series(&self, name: &str, prec: usize) -> Result<QSeries> {
        if let Some(k) = builtin_eisenstein(name) {
            return if k == 2 { Ok(eisenstein2(prec)) } else { eisenstein(k, prec) };
        }
        let name = self.resolve_name(name);
        if let Some(s) = self.cache.lock().expect("catalog cache poisoned").get(name) {
            if s.precision() >= prec {
                return Ok(s.truncate(prec));
            }
        }
        let def = self.def(name)?;
        let s = match &def.source {
            FormSource::Expr(e) => e.eval(self, prec)?,
            FormSource::Listed { coefficients, completion } => {
                if self.completion && !completion.is_empty() {
                    self.complete(def, coefficients, completion, prec)?
                } else {
                    let p = hecke_extend(coefficients, def.weight, def.level, prec)?;
                    if let Some(index) = p.first_unavailable() {
                        return Err(Error::Unavailable { form: name.to_string(), index });
                    }
                    QSeries::new(p.coeffs.into_iter().map(Option::unwrap).collect())
                }
            }
        };
        self.cache.lock().expect("catalog cache poisoned").insert(name.to_string(), s.clone());
        Ok(s)
    }

    /// Coefficients through `prec`, with `None` at indices that cannot be
    /// certified (listed forms without completion only).
    pub fn partial_series(&self, name: &str, prec: usize) -> Result<PartialSeries> {
        let def = if builtin_eisenstein(name).is_some() { None } else { Some(self.def(name)?) };
        match def.map(|d| (d, &d.source)) {
            Some((d, FormSource::Listed { coefficients, completion }))
                if !(self.completion && !completion.is_empty()) =>
            {
                hecke_extend(coefficients, d.weight, d.level, prec)
            }
            _ => Ok(PartialSeries { coeffs: self.series(name, prec)?.into_coeffs().into_iter().map(Some).collect() }),
        }
    }

    /// `f(tz)` for a reference, as a partial series.
    pub fn partial_ref(&self, r: &FormRef, prec: usize) -> Result<PartialSeries> {
        let t = r.dilation as usize;
        let base = self.partial_series(&r.name, prec.div_ceil(t))?;
        let coeffs =
            (0..prec).map(|n| if n % t == 0 { base.coeffs[n / t].clone() } else { Some(Rational::zero()) }).collect();
        Ok(PartialSeries { coeffs })
    }

    pub fn ref_series(&self, r: &FormRef, prec: usize) -> Result<QSeries> {
        Ok(self.series(&r.name, prec.div_ceil(r.dilation as usize).max(1))?.dilate_to(r.dilation as usize, prec))
    }

    /// Evaluates an expression string against the catalog.
    pub fn eval(&self, expr: &str, prec: usize) -> Result<QSeries> {
        FormExpr::parse(expr)?.eval(self, prec)
    }

    fn complete(&self, def: &FormDef, listed: &[Rational], family: &[FormExpr], prec: usize) -> Result<QSeries> {
        let work = prec.max(listed.len());
        let span = family.iter().map(|e| e.eval(self, work)).collect::<Result<Vec<_>>>()?;
        let matrix = coefficient_matrix(&span, listed.len());
        let sol = solve(&matrix, listed).map_err(|e| match e {
            Error::Inconsistent { row } => {
                Error::Catalog(format!("{}: listed coefficient a({row}) is outside the completion span", def.name))
            }
            e => e,
        })?;
        let full_rank = rank(&coefficient_matrix(&span, work));
        if rank(&matrix) != full_rank {
            return Err(Error::Catalog(format!("{}: listed coefficients do not determine the completion", def.name)));
        }
        let mut s = QSeries::zero(work);
        for (c, f) in sol.values().iter().zip(&span) {
            s = &s + &f.scale(c);
        }
        let predicted = hecke_extend(listed, def.weight, def.level, work)?;
        for (n, p) in predicted.coeffs.iter().enumerate() {
            if let Some(p) = p {
                if p != s.coeff(n) {
                    return Err(Error::Catalog(format!(
                        "{}: completion gives a({n}) = {} but Hecke recursion gives {p}",
                        def.name,
                        s.coeff(n)
                    )));
                }
            }
        }
        Ok(s.truncate(prec))
    }

    /// A listed space or a divisor-level subset of one, to precision `prec`.
    pub fn space_basis(&self, k: u32, level: u64, prec: usize) -> Result<SpaceDescriptor> {
        let unsupported = || Error::UnsupportedSpace { weight: k, level };
        if k < 2 || k % 2 == 1 || level == 0 {
            return Err(unsupported());
        }
        let basis: Vec<FormRef> = if let Some(s) = self.spaces.iter().find(|s| s.weight == k && s.level == level) {
            s.basis.clone()
        } else {
            let parent = self.spaces.iter().find(|s| s.weight == k && s.level % level == 0).ok_or_else(unsupported)?;
            let mut sub = Vec::new();
            for b in &parent.basis {
                if level.is_multiple_of(self.level_of(&b.name)? * b.dilation) {
                    sub.push(b.clone());
                }
            }
            if sub.len() != dimension(k, level) {
                return Err(unsupported());
            }
            sub
        };
        let sturm = sturm_bound(k, level);
        let work = prec.max(sturm + 1);
        let series = basis.iter().map(|b| self.ref_series(b, work)).collect::<Result<Vec<_>>>()?;
        let r = rank(&coefficient_matrix(&series, sturm + 1));
        if r != basis.len() {
            return Err(Error::Catalog(format!(
                "basis of M_{k}({level}) has rank {r} on the Sturm window, expected {}",
                basis.len()
            )));
        }
        Ok(SpaceDescriptor {
            weight: k,
            level,
            basis,
            series: series.into_iter().map(|s| s.truncate(prec)).collect(),
            sturm,
        })
    }

    /// `(weight, level)` pairs listed in the catalog file.
    pub fn listed_spaces(&self) -> Vec<(u32, u64)> {
        self.spaces.iter().map(|s| (s.weight, s.level)).collect()
    }
}

impl FormResolver for Catalog {
    fn resolve(&self, name: &str, prec: usize) -> Result<QSeries> {
        self.series(name, prec)
    }

    fn weight_of(&self, name: &str) -> Result<u32> {
        if let Some(k) = builtin_eisenstein(name) {
            return Ok(k);
        }
        Ok(self.def(name)?.weight)
    }
}

impl Catalog {
    pub fn weight_of(&self, name: &str) -> Result<u32> {
        <Self as FormResolver>::weight_of(self, name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    fn cat() -> &'static Catalog {
        Catalog::shared()
    }

    fn a(name: &str, prec: usize) -> Vec<Rational> {
        cat().series(name, prec).unwrap().into_coeffs()
    }

    fn multiplicative(c: &[Rational], k: u32, level: u64) -> bool {
        let p2 = if level.is_multiple_of(2) { Rational::zero() } else { int(1u64 << (k - 1)) };
        c[1] == int(1)
            && &c[2] * &c[3] == c[6]
            && &c[2] * &c[5] == c[10]
            && &c[3] * &c[7] == c[21]
            && c[4] == &c[2] * &c[2] - p2
    }

    #[test]
    fn spec_coefficients() {
        assert_eq!(a("Delta_4_5", 3)[2], int(-4));
        assert_eq!(a("Delta_10_4", 10)[9], int(32301));
        assert_eq!(a("Delta_6_6", 1)[0], int(0));
        assert_eq!(a("Delta", 5)[1..], [int(1), int(-24), int(252), int(-1472)]);
    }

    #[test]
    fn every_eigenform_is_multiplicative() {
        for def in cat().forms().filter(|d| d.eigenform) {
            let c = a(&def.name, 50);
            assert!(c[0].is_zero(), "{} has a constant term", def.name);
            assert!(multiplicative(&c, def.weight, def.level), "{} is not multiplicative", def.name);
        }
    }

    #[test]
    fn listed_forms_keep_their_data() {
        for def in cat().forms() {
            if let FormSource::Listed { coefficients, .. } = &def.source {
                let c = a(&def.name, 60);
                assert_eq!(&c[..coefficients.len()], &coefficients[..], "{}", def.name);
                let predicted = hecke_extend(coefficients, def.weight, def.level, 60).unwrap();
                for (n, p) in predicted.coeffs.iter().enumerate() {
                    if let Some(p) = p {
                        assert_eq!(p, &c[n], "{} a({n})", def.name);
                    }
                }
            }
        }
    }

    #[test]
    fn listed_spaces_have_full_rank() {
        for (k, n) in cat().listed_spaces() {
            let s = cat().space_basis(k, n, 10).unwrap();
            assert_eq!(s.dimension(), dimension(k, n));
            for (b, f) in s.basis.iter().zip(&s.series) {
                let eis = builtin_eisenstein(&b.name).is_some();
                assert_eq!(f.coeff(0), &int(i64::from(eis)), "constant term of {b}");
            }
        }
    }

    #[test]
    fn table_sizes_and_divisor_levels() {
        assert_eq!(cat().space_basis(6, 4, 10).unwrap().dimension(), 4);
        assert_eq!(cat().space_basis(4, 30, 30).unwrap().dimension(), 22);
        assert_eq!(cat().space_basis(12, 6, 10).unwrap().dimension(), 13);
        let m62 = cat().space_basis(6, 2, 10).unwrap();
        assert_eq!(m62.basis, vec![FormRef::new("E6", 1), FormRef::new("E6", 2)]);
        for d in divisors(30) {
            assert_eq!(cat().space_basis(4, d, 30).unwrap().dimension(), dimension(4, d));
        }
        assert!(matches!(cat().space_basis(6, 5, 10), Err(Error::UnsupportedSpace { .. })));
        assert!(matches!(cat().space_basis(5, 4, 10), Err(Error::UnsupportedSpace { .. })));
    }

    #[test]
    fn eta_identities() {
        let p = 50;
        let d102 = cat().series("Delta_10_2", p).unwrap();
        let eta = cat().eval("eta[1^16 2^4] + 32*eta[1^8 2^4 4^8]", p).unwrap();
        assert_eq!(d102, eta);
        let d66 = cat().series("Delta_6_6", p).unwrap();
        let eta = cat().eval("eta[1^5 2^5 3^1 6^1] + 9*eta[1^1 2^1 3^5 6^5]", p).unwrap();
        assert_eq!(d66, eta);
    }

    #[test]
    fn ambiguity_candidates() {
        let amb = &cat().ambiguities()[0];
        assert_eq!(amb.placeholder, "Delta_10_3_3");
        for cand in &amb.candidates {
            let alt = cat().with_resolution(&amb.placeholder, cand).unwrap();
            let c = alt.series("Delta_10_6", 30).unwrap().into_coeffs();
            assert!(c[0].is_zero());
            assert_eq!(multiplicative(&c, 10, 6), *cand == amb.resolved, "candidate {cand}");
        }
    }

    #[test]
    fn completion_disabled_reports_unavailable_index() {
        let raw = Catalog::shipped().unwrap().with_completion(false);
        assert!(raw.series("Delta_10_4", 29).is_ok());
        match raw.series("Delta_10_4", 40) {
            Err(Error::Unavailable { form, index }) => {
                assert_eq!(form, "Delta_10_4");
                assert_eq!(index, 29);
            }
            r => panic!("expected unavailable, got {r:?}"),
        }
        let part = raw.partial_series("Delta_10_4", 40).unwrap();
        assert_eq!(part.unavailable(), vec![29, 31, 37]);
    }

    #[test]
    fn level_fourteen_newforms() {
        let c1 = a("Delta_14_2_1", 6);
        let c2 = a("Delta_14_2_2", 6);
        assert_eq!(c1[1..], [int(1), int(-64), int(-1836), int(4096), int(3990)]);
        assert_eq!(c2[1..], [int(1), int(64), int(1236), int(4096), int(-57450)]);
    }

    #[test]
    fn bad_catalogs_are_rejected() {
        let cyclic =
            "[[form]]\nname='A'\nweight=4\nlevel=1\nexpr='B(z)'\n[[form]]\nname='B'\nweight=4\nlevel=1\nexpr='A(z)'";
        assert!(matches!(Catalog::from_toml_str(cyclic), Err(Error::Catalog(_))));
        let weight = "[[form]]\nname='A'\nweight=6\nlevel=1\nexpr='E4(z)'";
        assert!(matches!(Catalog::from_toml_str(weight), Err(Error::Catalog(_))));
        let dim = "[[space]]\nweight=6\nlevel=2\nbasis=['E6(z)']";
        assert!(matches!(Catalog::from_toml_str(dim), Err(Error::Catalog(_))));
        let unknown = "[[form]]\nname='A'\nweight=4\nlevel=1\nexpr='E4(z)'\ncolour='red'";
        assert!(matches!(Catalog::from_toml_str(unknown), Err(Error::Toml(_))));
    }

    #[test]
    fn eval_scales() {
        let s = cat().eval("1/2*E4(2z)", 3).unwrap();
        assert_eq!(s.coeffs(), [frac(1, 2), int(0), int(120)]);
    }
}
