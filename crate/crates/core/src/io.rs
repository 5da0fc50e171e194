//! Problem files (JSON), result reports (JSON) and curve data (CSV).

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::assembly::DiracWeight;
use crate::classify::{Classification, HypothesisReport, Method, Spectrum};
use crate::shooting::MissFunction;
use crate::{Error, Potential, Result, Tolerances};

/// A Dirac-weighted Dirichlet problem as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub potential: Potential,
    pub weight: DiracWeight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
}

impl ProblemFile {
    pub fn tolerances(&self) -> Tolerances {
        self.tolerances.unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }
}

fn json_error(e: serde_json::Error) -> Error {
    use serde_json::error::Category;
    match e.classify() {
        Category::Data => Error::validation("problem", e.to_string()),
        _ => Error::Parse(e.to_string()),
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let p: ProblemFile = serde_json::from_str(text).map_err(json_error)?;
    p.tolerances().validate()?;
    Ok(p)
}

pub fn read_problem(path: &Path) -> Result<ProblemFile> {
    parse_problem(&std::fs::read_to_string(path)?)
}

/// A potential given either inline as JSON or as a path to a JSON file.
pub fn parse_potential_arg(arg: &str) -> Result<Potential> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    serde_json::from_str(&text).map_err(json_error)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Auto => "auto",
        Method::CharPoly => "charpoly",
        Method::Tridiag => "tridiag",
        Method::Oracle => "oracle",
    }
}

fn classification_name(s: &Spectrum) -> &'static str {
    match s {
        Spectrum::Finite(_) => "finite",
        Spectrum::AllComplex => "all_complex",
    }
}

fn hypotheses_json(r: &HypothesisReport) -> Value {
    json!({
        "h0": r.h0,
        "h": r.h,
        "h1": r.h1,
        "margins": { "h0": r.h0_margin, "h": r.h_margin, "h1": r.h1_margin },
    })
}

/// What the `spectrum` command reports.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub classification: Spectrum,
    pub hypotheses: HypothesisReport,
    pub method: Method,
    /// `|y(1)| / max|y|` of the shooting solution at each eigenvalue.
    pub residuals: Vec<f64>,
}

impl SpectrumReport {
    pub fn new(c: &Classification, shooter: &MissFunction) -> Result<Self> {
        let residuals = match &c.spectrum {
            Spectrum::Finite(ev) => ev
                .iter()
                .map(|&l| shooter.shoot(l).map(|s| s.relative_miss()))
                .collect::<Result<Vec<_>>>()?,
            Spectrum::AllComplex => vec![],
        };
        Ok(Self {
            classification: c.spectrum.clone(),
            hypotheses: c.report.clone(),
            method: c.method,
            residuals,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.classification.eigenvalues().unwrap_or(&[])
    }

    /// JSON object with sorted keys.
    pub fn to_json_value(&self) -> Value {
        json!({
            "classification": classification_name(&self.classification),
            "eigenvalues": self.eigenvalues(),
            "hypotheses": hypotheses_json(&self.hypotheses),
            "method": method_name(self.method),
            "residuals": self.residuals,
        })
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<f64>> = self
            .eigenvalues()
            .iter()
            .zip(&self.residuals)
            .map(|(&l, &r)| vec![l, r])
            .collect();
        emit_csv(&rows, "lambda,residual")
    }
}

/// Output of the `classify` command.
pub fn classification_json(report: &HypothesisReport, spectrum: &Spectrum) -> Value {
    let mut v = hypotheses_json(report);
    let obj = v.as_object_mut().expect("object");
    obj.insert(
        "classification".into(),
        json!(classification_name(spectrum)),
    );
    obj.insert(
        "discriminants".into(),
        json!({
            "consecutive": report.consecutive,
            "to_right": report.to_right,
            "from_left": report.from_left,
        }),
    );
    v
}

/// Two-space indented JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![])
}

/// Shortest round-trip digits; exponent form outside `[1e-5, 1e16)`.
fn format_float(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !a.is_finite() {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// CSV with the given comma-separated header; floats in shortest
/// round-trip form, LF line endings.
pub fn emit_csv(rows: &[Vec<f64>], header: &str) -> String {
    let mut w = csv_writer();
    w.write_record(header.split(',')).expect("in-memory write");
    for row in rows {
        w.write_record(row.iter().map(|&v| format_float(v)))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Two numeric columns under an exact header.
pub fn parse_two_column_csv(text: &str, header: [&str; 2]) -> Result<Vec<(f64, f64)>> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let h = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if h.len() != 2 || h.get(0) != Some(header[0]) || h.get(1) != Some(header[1]) {
        return Err(Error::Parse(format!(
            "expected header \"{},{}\", found \"{}\"",
            header[0],
            header[1],
            h.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = vec![];
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let num = |k: usize| -> Result<f64> {
            let field = rec.get(k).unwrap_or("");
            field
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("row {}: \"{field}\" is not a number", line + 2)))
        };
        out.push((num(0)?, num(1)?));
    }
    Ok(out)
}

/// Spectral data `t,lambda`. Positivity of `lambda` is left to validation.
pub fn read_spectral_data(path: &Path) -> Result<Vec<(f64, f64)>> {
    parse_two_column_csv(&std::fs::read_to_string(path)?, ["t", "lambda"])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_examples() {
        let p = parse_problem(
            r#"{"potential":{"type":"constant","value":-22.2066},
                "weight":{"nodes":[0.3333,0.6667],"masses":[1,1]}}"#,
        )
        .unwrap();
        assert_eq!(p.weight.len(), 2);
        assert_eq!(p.tolerances(), Tolerances::default());
        assert_eq!(parse_problem(&p.to_json()).unwrap(), p);

        let e = parse_problem(
            r#"{"potential":{"type":"zero"},"weight":{"nodes":[0.5,0.25],"masses":[1,1]}}"#,
        )
        .unwrap_err();
        assert!(
            e.to_string().contains("nodes must be strictly increasing"),
            "{e}"
        );
        assert_eq!(e.exit_code(), 1);
        let e =
            parse_problem(r#"{"potential":{"type":"zero"},"weight":{"nodes":[0.5],"masses":[0]}}"#)
                .unwrap_err();
        assert!(e.to_string().contains("masses must be positive"), "{e}");
        let e = parse_problem(
            r#"{"potential":{"type":"zero"},"weight":{"nodes":[0.5],"masses":[1]},"x":1}"#,
        )
        .unwrap_err();
        assert!(matches!(e, Error::Validation { .. }));
        assert!(matches!(parse_problem("{not json"), Err(Error::Parse(_))));
        let e = parse_problem(
            r#"{"potential":{"type":"zero"},"weight":{"nodes":[],"masses":[]},"tolerances":{"root":-1}}"#,
        )
        .unwrap_err();
        assert!(e.to_string().contains("tolerances.root"));
    }

    #[test]
    fn csv_format() {
        assert_eq!(emit_csv(&[vec![0.5, 4.0]], "t,lambda"), "t,lambda\n0.5,4\n");
        assert_eq!(emit_csv(&[], "t,lambda"), "t,lambda\n");
        assert_eq!(
            emit_csv(&[vec![1.0 / 3.0, 3.0]], "t,lambda"),
            "t,lambda\n0.3333333333333333,3\n"
        );
        assert_eq!(
            emit_csv(&[vec![4.25e-17, -3e20]], "a,b"),
            "a,b\n4.25e-17,-3e20\n"
        );
        let rows = parse_two_column_csv("t,lambda\n0.5,4\n0.25, 5.5\n", ["t", "lambda"]).unwrap();
        assert_eq!(rows, vec![(0.5, 4.0), (0.25, 5.5)]);
        assert!(parse_two_column_csv("x,q\n0.5,4\n", ["t", "lambda"]).is_err());
        assert!(parse_two_column_csv("t,lambda\n0.5,abc\n", ["t", "lambda"]).is_err());
    }

    #[test]
    fn inline_potential_argument() {
        let p = parse_potential_arg(r#"{"type":"constant","value":5}"#).unwrap();
        assert_eq!(p, Potential::Constant(5.0));
        assert!(parse_potential_arg("/nonexistent/file.json").is_err());
    }
}
