//! The `qconv` command-line front end.
//!
//! Exit status: 0 when every check passes (clipped identities count as
//! passing), 1 when at least one check fails, 2 on usage or configuration
//! errors. The status does not depend on the output format.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::space::sturm_bound;
use crate::catalog::Catalog;
use crate::convolution::identities::{IdentityCatalog, Status, VerificationReport};
use crate::convolution::{derive_closed_form, w_weighted_brute, CoefficientTable};
use crate::error::{Error, Result};
use crate::operators::{Construction, ConstructionKind};
use crate::report::{BasisElement, BasisReport, DeriveReport, EvalReport, EvalRow, SumSpec, VerifyReport, SCHEMA};
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "qconv", version, about = "Exact verification of divisor convolution identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Form catalog to use instead of the shipped one.
    #[arg(long, global = true, value_name = "PATH")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify identities from the identity file.
    Verify {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        id: Option<String>,
        /// Identity file to use instead of the shipped one.
        #[arg(long, value_name = "PATH")]
        identities: Option<PathBuf>,
        /// Range of indices to check, overriding each identity's own.
        #[arg(long, value_name = "A..B", value_parser = parse_range)]
        range: Option<RangeInclusive<u64>>,
    },
    /// Express a construction in the basis of its space.
    Derive {
        /// theta, phi, formA or formB.
        kind: String,
        a: u64,
        b: u64,
        /// Eisenstein weight, for theta and formA.
        k: Option<u32>,
        /// Precision to certify through; at least the Sturm bound plus one.
        #[arg(long, value_name = "P")]
        prec: Option<usize>,
    },
    /// Evaluate `sum_{al+bm=n} l^e sigma_r(l) sigma_s(m)`.
    Eval {
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, default_value_t = 0)]
        e: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// A single index; shorthand for `--range N..N`.
        #[arg(long, conflicts_with = "range")]
        n: Option<u64>,
        #[arg(long, value_name = "A..B", value_parser = parse_range)]
        range: Option<RangeInclusive<u64>>,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Print the catalog basis of `M_k(N)`.
    Basis {
        k: u32,
        level: u64,
        /// Number of coefficients per element (default: Sturm bound plus one).
        #[arg(conflicts_with = "prec_flag")]
        prec: Option<usize>,
        #[arg(long = "prec", value_name = "P")]
        prec_flag: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Brute,
    Formula,
    Both,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Self::Brute => "brute",
            Self::Formula => "formula",
            Self::Both => "both",
        }
    }
}

/// Parses `A..B`, `A..=B` (both inclusive) or a single `N`.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad bound `{t}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// Failure of a command, with the exit status it maps to.
enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs `qconv` with `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut warnings = Vec::new();
    let result = execute(&cli, &mut warnings).and_then(|(text, ok)| {
        emit(&cli.out, &text, stdout)?;
        if ok {
            Ok(())
        } else {
            Err(Failure::Checks)
        }
    });
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match result {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog> {
    match path {
        Some(p) => Catalog::load(p),
        None => Ok(Catalog::shared().clone()),
    }
}

/// Runs the command; returns the rendered report and whether all checks passed.
fn execute(cli: &Cli, warnings: &mut Vec<String>) -> std::result::Result<(String, bool), Failure> {
    let catalog = load_catalog(&cli.catalog)?;
    match &cli.command {
        Command::Verify { family, id, identities, range } => {
            verify(&catalog, cli.format, family.as_deref(), id.as_deref(), identities.as_deref(), range, warnings)
        }
        Command::Derive { kind, a, b, k, prec } => derive(&catalog, cli.format, kind, *a, *b, *k, *prec),
        Command::Eval { a, b, e, r, s, n, range, mode } => {
            let range = n.map(|n| n..=n).or_else(|| range.clone()).unwrap_or(1..=100);
            let spec = SumSpec { a: *a, b: *b, e: *e, r: *r, s: *s };
            eval(&catalog, cli.format, spec, range, *mode)
        }
        Command::Basis { k, level, prec, prec_flag } => basis(&catalog, cli.format, *k, *level, prec.or(*prec_flag)),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_text(rows: Vec<Vec<String>>) -> std::result::Result<String, Failure> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn verify(
    catalog: &Catalog,
    format: Format,
    family: Option<&str>,
    id: Option<&str>,
    identities: Option<&Path>,
    range: &Option<RangeInclusive<u64>>,
    warnings: &mut Vec<String>,
) -> std::result::Result<(String, bool), Failure> {
    let ids = match identities {
        Some(p) => IdentityCatalog::load(p)?,
        None => IdentityCatalog::shipped()?,
    };
    let selection = ids.select(family, id);
    if selection.is_empty() {
        return Err(Failure::Usage(format!(
            "no identity matches the selection (families: {})",
            ids.families().into_iter().collect::<Vec<_>>().join(", ")
        )));
    }
    let reports = ids.verify_all(&selection, catalog, range.clone());
    for r in reports.iter().filter(|r| r.status == Status::Clipped) {
        warnings.push(format!("{}: indices {:?} lack certified coefficients and were skipped", r.id, r.clipped));
    }
    let report = VerifyReport::new(reports);
    let ok = report.summary.fail == 0;
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut rows = vec![[
                "id", "family", "kind", "status", "from", "to", "checked", "n", "lhs", "rhs", "clipped", "derived",
            ]
            .map(String::from)
            .to_vec()];
            rows.extend(report.reports.iter().map(|r| {
                let d = r.first_discrepancy.as_ref();
                vec![
                    r.id.clone(),
                    r.family.clone(),
                    r.kind.clone(),
                    r.status.to_string(),
                    r.range[0].to_string(),
                    r.range[1].to_string(),
                    r.checked.to_string(),
                    opt(&d.map(|d| d.n)),
                    opt(&d.map(|d| &d.lhs)),
                    opt(&d.map(|d| &d.rhs)),
                    r.clipped.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                    derived_summary(r),
                ]
            }));
            csv_text(rows)?
        }
        Format::Text => verify_text(&report),
    };
    Ok((text, ok))
}

fn derived_summary(r: &VerificationReport) -> String {
    match &r.derived {
        None => String::new(),
        Some(d) if d.agrees => "agrees".into(),
        Some(d) => match &d.error {
            Some(e) => format!("unavailable: {e}"),
            None => format!("differs in {} terms", d.differences.len()),
        },
    }
}

fn verify_text(report: &VerifyReport) -> String {
    let mut s = String::new();
    for r in &report.reports {
        s += &format!("{:<16} {:<8} n={}..{} checked={}", r.id, r.status, r.range[0], r.range[1], r.checked);
        let derived = derived_summary(r);
        if !derived.is_empty() {
            s += &format!(" derived {derived}");
        }
        s.push('\n');
        if let Some(e) = &r.error {
            s += &format!("    error: {e}\n");
        }
        if let Some(d) = &r.first_discrepancy {
            s += &format!("    first discrepancy at n={}: lhs {} rhs {}\n", d.n, d.lhs, d.rhs);
        }
        if !r.clipped.is_empty() {
            s += &format!("    clipped: {:?}\n", r.clipped);
        }
        for t in r.derived.iter().flat_map(|d| &d.differences) {
            s += &format!("    {}: published {} derived {}\n", t.term, t.published, t.derived);
        }
    }
    let m = &report.summary;
    s += &format!(
        "{} identities: {} pass, {} clipped, {} fail; {} with constants differing from the derived ones\n",
        m.total, m.pass, m.clipped, m.fail, m.derived_mismatch
    );
    s
}

fn derive(
    catalog: &Catalog,
    format: Format,
    kind: &str,
    a: u64,
    b: u64,
    k: Option<u32>,
    prec: Option<usize>,
) -> std::result::Result<(String, bool), Failure> {
    let kind: ConstructionKind = kind.parse()?;
    if a == 0 || b == 0 {
        return Err(Failure::Usage("a and b must be positive".into()));
    }
    let c = Construction::new(kind, a, b, k)?;
    let sturm = sturm_bound(c.weight(), c.level());
    if let Some(p) = prec {
        if p <= sturm {
            return Err(Failure::Usage(format!(
                "precision {p} does not reach the Sturm bound {sturm} of M_{}({}); use at least {}",
                c.weight(),
                c.level(),
                sturm + 1
            )));
        }
    }
    let comb = c.derive(catalog, prec.unwrap_or(0))?;
    let report = DeriveReport::new(c.to_string(), &comb);
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut rows = vec![vec!["basis".to_string(), "value".to_string()]];
            rows.extend(report.terms.iter().map(|t| vec![t.basis.clone(), t.value.to_string()]));
            csv_text(rows)?
        }
        Format::Text => format!("{comb}\n"),
    };
    Ok((text, true))
}

fn eval(
    catalog: &Catalog,
    format: Format,
    spec: SumSpec,
    range: RangeInclusive<u64>,
    mode: Mode,
) -> std::result::Result<(String, bool), Failure> {
    let SumSpec { a, b, e, r, s } = spec;
    if a == 0 || b == 0 || *range.start() == 0 {
        return Err(Failure::Usage("a, b and n must be positive".into()));
    }
    if e > 1 {
        // the brute-force sum is defined for any e, but the scope stops at e = 1
        w_weighted_brute(a, b, e, r, s, 1)?;
    }
    let form = match mode {
        Mode::Brute => None,
        Mode::Formula | Mode::Both => Some(derive_closed_form(catalog, a, b, e, r, s)?),
    };
    let mut table = CoefficientTable::new(catalog, *range.end());
    let mut rows = Vec::new();
    for n in range {
        let brute = match mode {
            Mode::Formula => None,
            _ => Some(Rational::from(w_weighted_brute(a, b, e, r, s, n)?)),
        };
        let formula = match &form {
            Some(f) => f.eval(n, &mut table)?,
            None => None,
        };
        let agree = match (&brute, &formula) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        };
        rows.push(EvalRow { n, brute, formula, agree });
    }
    let ok = rows.iter().all(|r| r.agree != Some(false));
    let report = EvalReport {
        schema: SCHEMA.into(),
        command: "eval".into(),
        sum: spec,
        mode: mode.name().into(),
        formula: form.map(|f| f.to_string()),
        rows,
    };
    let flag = |a: Option<bool>| match a {
        Some(true) => "agree",
        Some(false) => "DIFFER",
        None => "",
    };
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut rows = vec!["n,brute,formula,agree".split(',').map(String::from).collect::<Vec<_>>()];
            rows.extend(
                report.rows.iter().map(|r| vec![r.n.to_string(), opt(&r.brute), opt(&r.formula), opt(&r.agree)]),
            );
            csv_text(rows)?
        }
        Format::Text => {
            let mut t = String::new();
            if let Some(f) = &report.formula {
                t += &format!("# {f}\n");
            }
            for r in &report.rows {
                let cells: Vec<String> = match mode {
                    Mode::Brute => vec![opt(&r.brute)],
                    Mode::Formula => vec![r.formula.as_ref().map_or("unavailable".into(), ToString::to_string)],
                    Mode::Both => vec![
                        opt(&r.brute),
                        r.formula.as_ref().map_or("unavailable".into(), ToString::to_string),
                        flag(r.agree).into(),
                    ],
                };
                t += &format!("{} {}\n", r.n, cells.join(" ").trim_end());
            }
            t
        }
    };
    Ok((text, ok))
}

fn basis(
    catalog: &Catalog,
    format: Format,
    k: u32,
    level: u64,
    prec: Option<usize>,
) -> std::result::Result<(String, bool), Failure> {
    let prec = prec.unwrap_or_else(|| sturm_bound(k, level) + 1);
    let space = catalog.space_basis(k, level, prec)?;
    let report = BasisReport {
        schema: SCHEMA.into(),
        command: "basis".into(),
        weight: k,
        level,
        dimension: space.dimension(),
        sturm: space.sturm,
        precision: prec,
        elements: space
            .basis
            .iter()
            .zip(&space.series)
            .map(|(b, s)| BasisElement { name: b.to_string(), coefficients: s.coeffs()[..prec].to_vec() })
            .collect(),
    };
    let text = match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut rows =
                vec![std::iter::once("name".to_string()).chain((0..prec).map(|i| format!("q{i}"))).collect()];
            rows.extend(report.elements.iter().map(|e| {
                std::iter::once(e.name.clone()).chain(e.coefficients.iter().map(ToString::to_string)).collect()
            }));
            csv_text(rows)?
        }
        Format::Text => report
            .elements
            .iter()
            .map(|e| {
                let c: Vec<String> = e.coefficients.iter().map(ToString::to_string).collect();
                format!("{}: {}\n", e.name, c.join(", "))
            })
            .collect(),
    };
    Ok((text, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("qconv").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..100"), Ok(1..=100));
        assert_eq!(parse_range("3..=5"), Ok(3..=5));
        assert_eq!(parse_range("7"), Ok(7..=7));
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn derive_text() {
        let (code, out, _) = call(&["derive", "theta", "1", "2", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "E6(z): -1/63, E6(2z): -20/63\n");
    }

    #[test]
    fn eval_rows() {
        assert_eq!(call(&["eval", "--n", "3", "--mode", "brute"]).1, "3 6\n");
        let (code, out, _) = call(&["eval", "--a", "3", "--b", "5", "--n", "8"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("8 1 1 agree\n"), "{out}");
        let (code, _, err) = call(&["eval", "--e", "2", "--n", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("out of scope"), "{err}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["basis", "5", "4"]).0, 2);
        assert_eq!(call(&["verify", "--id", "nonexistent"]).0, 2);
        assert_eq!(call(&["derive", "theta", "1", "2", "4", "--prec", "2"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
    }
}
