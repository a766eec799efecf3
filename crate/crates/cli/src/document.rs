//! Design documents on disk: versioned JSON and plain ±1 CSV.

use std::fmt;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use qcdesign::{build_design, Branch, DesignMatrix, Family, GeneratorSpec, Rational, Resolution};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

pub const SCHEMA: &str = "qcdesign/1";

/// An exact rational written as a lowest-terms `"p/q"` (or `"p"`) string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses `p` or `p/q` with integer parts only; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let (numer, denom) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let is_int = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    ensure!(is_int(numer) && is_int(denom), "`{s}` is not an exact rational `p/q`");
    let numer: i64 = numer.parse().with_context(|| format!("numerator of `{s}`"))?;
    let denom: i64 = denom.parse().with_context(|| format!("denominator of `{s}`"))?;
    ensure!(denom != 0, "`{s}` has a zero denominator");
    Ok(Rational::new(numer, denom))
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

struct ExactVisitor;

impl Visitor<'_> for ExactVisitor {
    type Value = Exact;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string such as \"9/2\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exact, E> {
        parse_rational(v).map(Exact).map_err(|e| E::custom(format!("{e:#}")))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_str(ExactVisitor)
    }
}

/// Resolution as `"p/q"` or `"unbounded"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactResolution(pub Resolution);

impl Serialize for ExactResolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ExactResolution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "unbounded" {
            return Ok(ExactResolution(Resolution::Unbounded));
        }
        parse_rational(&s)
            .map(|r| ExactResolution(Resolution::Finite(r)))
            .map_err(|e| de::Error::custom(format!("{e:#}")))
    }
}

/// Finite decimal for display, `null` when the resolution is unbounded.
pub fn decimal(r: Resolution) -> Option<f64> {
    r.finite().map(|_| r.to_f64())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddedMetrics {
    pub resolution: ExactResolution,
    /// Presentation only; never read back as a value.
    pub resolution_decimal: Option<f64>,
    /// `A_1, …, A_q`.
    pub wlp: Vec<Exact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projectivity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignDocument {
    pub schema: String,
    pub family: String,
    pub n: usize,
    pub u: Vec<u8>,
    pub v: Vec<u8>,
    pub u0v0: Option<String>,
    pub runs: usize,
    pub factors: usize,
    pub labels: Vec<String>,
    pub rows: Vec<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<EmbeddedMetrics>,
}

impl DesignDocument {
    pub fn new(spec: &GeneratorSpec, design: &DesignMatrix) -> DesignDocument {
        DesignDocument {
            schema: SCHEMA.to_string(),
            family: spec.family().name().to_string(),
            n: spec.n(),
            u: spec.u().to_vec(),
            v: spec.v().to_vec(),
            u0v0: spec.branch().map(|b| b.to_string()),
            runs: design.runs(),
            factors: design.factors(),
            labels: design.labels().to_vec(),
            rows: design.rows().map(<[i8]>::to_vec).collect(),
            metrics: None,
        }
    }

    /// Rebuilds the design from the generator fields and checks every
    /// stored field against it.
    pub fn validate(&self) -> Result<(GeneratorSpec, DesignMatrix)> {
        ensure!(
            self.schema == SCHEMA,
            "unsupported schema `{}` (expected `{SCHEMA}`)",
            self.schema
        );
        let family: Family = self.family.parse().map_err(anyhow::Error::msg)?;
        let branch = self
            .u0v0
            .as_deref()
            .map(str::parse::<Branch>)
            .transpose()
            .map_err(anyhow::Error::msg)?;
        let spec = GeneratorSpec::new(family, self.u.clone(), self.v.clone(), branch)?;
        ensure!(
            spec.n() == self.n,
            "n = {} but generators have length {}",
            self.n,
            spec.n()
        );
        let design = build_design(&spec);
        ensure!(
            (self.runs, self.factors) == (design.runs(), design.factors()),
            "document claims {}x{} but the generators give {}x{}",
            self.runs,
            self.factors,
            design.runs(),
            design.factors()
        );
        ensure!(self.labels == design.labels(), "column labels do not match the family");
        ensure!(
            self.rows.len() == design.runs(),
            "document has {} rows, expected {}",
            self.rows.len(),
            design.runs()
        );
        for (r, (stored, built)) in self.rows.iter().zip(design.rows()).enumerate() {
            ensure!(stored.as_slice() == built, "row {r} differs from the rebuilt design");
        }
        Ok((spec, design))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<DesignDocument> {
        serde_json::from_str(text).context("malformed design document")
    }
}

/// CSV with a header of column labels and one `+1`/`-1` row per run.
pub fn design_to_csv(design: &DesignMatrix) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(design.labels())?;
    for row in design.rows() {
        w.write_record(row.iter().map(|&x| if x > 0 { "+1" } else { "-1" }))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn design_from_csv(text: &str) -> Result<DesignMatrix> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let labels: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.with_context(|| format!("CSV row {}", i + 1))?;
        let row = record
            .iter()
            .map(|cell| match cell {
                "+1" | "1" => Ok(1),
                "-1" => Ok(-1),
                other => bail!("CSV row {}: `{other}` is not +1 or -1", i + 1),
            })
            .collect::<Result<Vec<i8>>>()?;
        rows.push(row);
    }
    Ok(DesignMatrix::new(labels, rows)?)
}

/// A design read from disk; generator data is known only for JSON documents.
pub struct LoadedDesign {
    pub spec: Option<GeneratorSpec>,
    pub design: DesignMatrix,
    pub metrics: Option<EmbeddedMetrics>,
}

/// Reads a JSON document or a CSV matrix, telling them apart by content.
pub fn load(path: &Path) -> Result<LoadedDesign> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let doc = DesignDocument::from_json(&text)?;
        let (spec, design) = doc.validate()?;
        Ok(LoadedDesign {
            spec: Some(spec),
            design,
            metrics: doc.metrics,
        })
    } else {
        Ok(LoadedDesign {
            spec: None,
            design: design_from_csv(&text)?,
            metrics: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> (GeneratorSpec, DesignMatrix) {
        let spec = GeneratorSpec::new(
            Family::SixteenthOdd,
            vec![1, 2],
            vec![2, 1],
            Some(Branch::new(1, 1).unwrap()),
        )
        .unwrap();
        let design = build_design(&spec);
        (spec, design)
    }

    #[test]
    fn rationals_parse_strictly() {
        assert_eq!(parse_rational("9/2").unwrap(), Rational::new(9, 2));
        assert_eq!(parse_rational("18/4").unwrap(), Rational::new(9, 2));
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer(-3));
        for bad in ["4.5", "1e3", "", "1/0", "a/b", "1/-", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn metrics_reject_floats() {
        let ok = r#"{"resolution":"9/2","resolution_decimal":4.5,"wlp":["0","3/4"]}"#;
        let m: EmbeddedMetrics = serde_json::from_str(ok).unwrap();
        assert_eq!(m.wlp[1], Exact(Rational::new(3, 4)));
        let bad = r#"{"resolution":4.5,"resolution_decimal":4.5,"wlp":[]}"#;
        assert!(serde_json::from_str::<EmbeddedMetrics>(bad).is_err());
        let bad = r#"{"resolution":"9/2","resolution_decimal":4.5,"wlp":[0.75]}"#;
        assert!(serde_json::from_str::<EmbeddedMetrics>(bad).is_err());
    }

    #[test]
    fn json_round_trip() {
        let (spec, design) = example();
        let mut doc = DesignDocument::new(&spec, &design);
        doc.metrics = Some(EmbeddedMetrics {
            resolution: ExactResolution(Resolution::Finite(Rational::new(9, 2))),
            resolution_decimal: Some(4.5),
            wlp: vec![Exact(Rational::from_integer(0)), Exact(Rational::new(1, 4))],
            projectivity: Some(4),
        });
        let back = DesignDocument::from_json(&doc.to_json().unwrap()).unwrap();
        assert_eq!(back, doc);
        let (spec2, design2) = back.validate().unwrap();
        assert_eq!((spec2, design2), (spec, design));
    }

    #[test]
    fn tampered_rows_are_rejected() {
        let (spec, design) = example();
        let mut doc = DesignDocument::new(&spec, &design);
        doc.rows[3][0] *= -1;
        assert!(doc.validate().is_err());
        let mut doc = DesignDocument::new(&spec, &design);
        doc.schema = "qcdesign/0".into();
        assert!(doc.validate().is_err());
    }

    #[test]
    fn csv_round_trip() {
        let (_, design) = example();
        let text = design_to_csv(&design).unwrap();
        assert!(text.starts_with("F1,F2,F3,F4,F5,F11,F12,F21,F22\n"));
        assert_eq!(design_from_csv(&text).unwrap(), design);
        let plain = "A,B\n1,-1\n-1,1\n";
        assert_eq!(design_from_csv(plain).unwrap().runs(), 2);
        assert!(design_from_csv("A,B\n1,0\n").is_err());
    }
}
