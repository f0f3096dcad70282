//! Machine-readable reports emitted by the `qconv` commands.
//!
//! Every report carries a top-level `schema` field. Rationals are written as
//! `{"num": "...", "den": "..."}` with decimal strings, never as floats.
//! Field order is fixed by the struct definitions, so parsing a report and
//! serializing it again reproduces the same bytes.

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::convolution::identities::VerificationReport;

/// Schema tag written into every report.
pub const SCHEMA: &str = "qconv-report/1";

/// Serde adapter for [`Rational`] as a numerator/denominator string pair.
pub mod rational {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::arith::Rational;

    #[derive(Serialize, Deserialize)]
    struct Pair {
        num: String,
        den: String,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Pair { num: r.numer().to_string(), den: r.denom().to_string() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let p = Pair::deserialize(d)?;
        let num: BigInt = p.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = p.den.parse().map_err(D::Error::custom)?;
        if den == BigInt::from(0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }

    /// The same encoding for `Option<Rational>`, `null` when absent.
    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] Rational);
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }

    /// The same encoding for a list of rationals.
    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            #[derive(Serialize)]
            struct Wrap<'a>(#[serde(with = "super")] &'a Rational);
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&Wrap(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] Rational);
            Ok(Vec::<Wrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
        }
    }
}

/// Counts over a verification run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub clipped: usize,
    pub fail: usize,
    /// Identities whose published constants differ from the derived ones.
    pub derived_mismatch: usize,
}

/// Output of `qconv verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub command: String,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl VerifyReport {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        use crate::convolution::identities::Status;
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            total: reports.len(),
            pass: count(Status::Pass),
            clipped: count(Status::Clipped),
            fail: count(Status::Fail),
            derived_mismatch: reports.iter().filter(|r| r.derived.as_ref().is_some_and(|d| !d.agrees)).count(),
        };
        Self { schema: SCHEMA.into(), command: "verify".into(), summary, reports }
    }
}

/// One basis element with its coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub basis: String,
    #[serde(with = "rational")]
    pub value: Rational,
}

/// Output of `qconv derive`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeriveReport {
    pub schema: String,
    pub command: String,
    pub construction: String,
    pub weight: u32,
    pub level: u64,
    pub sturm: usize,
    pub certified_precision: usize,
    pub terms: Vec<Term>,
}

impl DeriveReport {
    pub fn new(construction: String, comb: &crate::linalg::LinearCombination) -> Self {
        Self {
            schema: SCHEMA.into(),
            command: "derive".into(),
            construction,
            weight: comb.weight,
            level: comb.level,
            sturm: comb.sturm,
            certified_precision: comb.certified_precision,
            terms: comb.terms().map(|(b, c)| Term { basis: b.to_string(), value: c.clone() }).collect(),
        }
    }
}

/// Parameters of `sum_{al+bm=n} l^e sigma_r(l) sigma_s(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumSpec {
    pub a: u64,
    pub b: u64,
    pub e: u32,
    pub r: u32,
    pub s: u32,
}

/// One row of `qconv eval`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub n: u64,
    #[serde(with = "rational::option")]
    pub brute: Option<Rational>,
    #[serde(with = "rational::option")]
    pub formula: Option<Rational>,
    pub agree: Option<bool>,
}

/// Output of `qconv eval`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema: String,
    pub command: String,
    pub sum: SumSpec,
    pub mode: String,
    /// The closed form used in formula mode.
    pub formula: Option<String>,
    pub rows: Vec<EvalRow>,
}

/// One basis element and its leading coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    #[serde(with = "rational::vec")]
    pub coefficients: Vec<Rational>,
}

/// Output of `qconv basis`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub schema: String,
    pub command: String,
    pub weight: u32,
    pub level: u64,
    pub dimension: usize,
    pub sturm: usize,
    pub precision: usize,
    pub elements: Vec<BasisElement>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn rationals_are_string_pairs() {
        let t = Term { basis: "E6(2z)".into(), value: frac(-20, 63) };
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"basis":"E6(2z)","value":{"num":"-20","den":"63"}}"#);
        assert_eq!(serde_json::from_str::<Term>(&s).unwrap(), t);
        assert!(serde_json::from_str::<Term>(r#"{"basis":"x","value":{"num":"1","den":"0"}}"#).is_err());
    }

    #[test]
    fn optional_and_list_rationals() {
        let row = EvalRow { n: 3, brute: Some(frac(6, 1)), formula: None, agree: None };
        let s = serde_json::to_string(&row).unwrap();
        assert_eq!(s, r#"{"n":3,"brute":{"num":"6","den":"1"},"formula":null,"agree":null}"#);
        assert_eq!(serde_json::from_str::<EvalRow>(&s).unwrap(), row);
        let e = BasisElement { name: "E4(z)".into(), coefficients: vec![frac(1, 1), frac(240, 1)] };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<BasisElement>(&s).unwrap(), e);
    }
}
