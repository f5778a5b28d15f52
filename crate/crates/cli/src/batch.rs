//! JSON-lines batch processing.
//!
//! Each non-blank input line is an object with either `"poly"` (expression
//! text) or `"coeffs"` (descending powers) and an optional string `"id"`.
//! Every line yields exactly one output line, in input order, followed by a
//! summary line.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::input::{self, InputError};
use crate::report::{build_report, InputEcho, Settings, SolveReport};

#[derive(Debug, Clone, Serialize)]
pub struct LineError {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

impl From<&InputError> for LineError {
    fn from(e: &InputError) -> Self {
        Self {
            kind: e.kind(),
            message: e.to_string(),
            position: e.position(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum LineBody {
    Report(Box<SolveReport>),
    Error { error: LineError },
}

#[derive(Debug, Clone, Serialize)]
pub struct LineOutput {
    /// 1-based line number in the input file.
    pub line: usize,
    pub id: Option<String>,
    #[serde(flatten)]
    pub body: LineBody,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Counts {
    pub three_real_distinct: usize,
    pub one_real_two_complex: usize,
    pub real_with_double: usize,
    pub triple_root: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub two_real_distinct: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub real_double: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub two_complex: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl Counts {
    fn add(&mut self, classification: &str) {
        let slot = match classification {
            "three_real_distinct" => &mut self.three_real_distinct,
            "one_real_two_complex" => &mut self.one_real_two_complex,
            "real_with_double" => &mut self.real_with_double,
            "triple_root" => &mut self.triple_root,
            "two_real_distinct" => &mut self.two_real_distinct,
            "real_double" => &mut self.real_double,
            "two_complex" => &mut self.two_complex,
            _ => return,
        };
        *slot += 1;
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub lines: usize,
    pub reports: usize,
    pub errors: usize,
    /// Classification of each report's first method.
    pub counts: Counts,
    pub max_residual: Option<f64>,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a Summary,
}

fn field_error(kind: &'static str, message: impl Into<String>) -> LineError {
    LineError {
        kind,
        message: message.into(),
        position: None,
    }
}

fn process_record(
    record: &Value,
    settings: &Settings,
    allow_quadratic: bool,
) -> Result<SolveReport, LineError> {
    let obj = record
        .as_object()
        .ok_or_else(|| field_error("invalid_record", "line is not a JSON object"))?;
    let (parsed, source) = match (obj.get("poly"), obj.get("coeffs")) {
        (Some(_), Some(_)) => {
            return Err(field_error(
                "invalid_record",
                "give either \"poly\" or \"coeffs\", not both",
            ))
        }
        (None, None) => {
            return Err(field_error(
                "invalid_record",
                "missing \"poly\" or \"coeffs\"",
            ))
        }
        (Some(poly), None) => {
            let text = poly
                .as_str()
                .ok_or_else(|| field_error("invalid_record", "\"poly\" must be a string"))?;
            let parsed = input::parse_expression(text).map_err(|e| LineError::from(&e))?;
            (parsed, Some(text.to_string()))
        }
        (None, Some(coeffs)) => {
            let values: Option<Vec<f64>> = coeffs
                .as_array()
                .and_then(|a| a.iter().map(Value::as_f64).collect());
            let values = values.ok_or_else(|| {
                field_error("invalid_record", "\"coeffs\" must be an array of numbers")
            })?;
            let parsed = input::from_descending(&values).map_err(|e| LineError::from(&e))?;
            (parsed, None)
        }
    };
    let poly = input::gate(&parsed, allow_quadratic).map_err(|e| LineError::from(&e))?;
    Ok(build_report(
        InputEcho::new(source, &parsed),
        &poly,
        settings,
    ))
}

/// Processes one input line. `None` for blank lines.
pub fn process_line(
    line_no: usize,
    text: &str,
    settings: &Settings,
    allow_quadratic: bool,
) -> Option<LineOutput> {
    if text.trim().is_empty() {
        return None;
    }
    let (id, body) = match serde_json::from_str::<Value>(text) {
        Err(e) => (
            None,
            LineBody::Error {
                error: field_error("invalid_json", e.to_string()),
            },
        ),
        Ok(record) => {
            let id = record.get("id").and_then(Value::as_str).map(str::to_string);
            let body = match record.get("id") {
                Some(v) if !v.is_string() => LineBody::Error {
                    error: field_error("invalid_record", "\"id\" must be a string"),
                },
                _ => match process_record(&record, settings, allow_quadratic) {
                    Ok(r) => LineBody::Report(Box::new(r)),
                    Err(error) => LineBody::Error { error },
                },
            };
            (id, body)
        }
    };
    Some(LineOutput {
        line: line_no,
        id,
        body,
    })
}

/// Solves every line of `content`, preserving input order for any `jobs`.
pub fn run(
    content: &str,
    settings: &Settings,
    allow_quadratic: bool,
    jobs: usize,
) -> (Vec<LineOutput>, Summary) {
    let lines: Vec<(usize, &str)> = content
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .collect();
    let work = |&(n, l): &(usize, &str)| process_line(n, l, settings, allow_quadratic);
    let outputs: Vec<LineOutput> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| lines.par_iter().filter_map(work).collect())
    } else {
        lines.iter().filter_map(work).collect()
    };
    let summary = summarize(&outputs);
    (outputs, summary)
}

pub fn summarize(outputs: &[LineOutput]) -> Summary {
    let mut s = Summary::default();
    for out in outputs {
        s.lines += 1;
        match &out.body {
            LineBody::Report(r) => {
                s.reports += 1;
                if let Some(c) = r.primary().classification {
                    s.counts.add(c);
                }
                if let Some(m) = r.max_residual() {
                    s.max_residual = Some(s.max_residual.map_or(m, |x: f64| x.max(m)));
                }
            }
            LineBody::Error { .. } => s.errors += 1,
        }
    }
    s
}

/// Serializes the line reports and the summary as JSON lines.
pub fn render(outputs: &[LineOutput], summary: &Summary) -> String {
    let mut out = String::new();
    for line in outputs {
        out.push_str(&serde_json::to_string(line).expect("serializable"));
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(&SummaryLine { summary }).expect("serializable"));
    out.push('\n');
    out
}
