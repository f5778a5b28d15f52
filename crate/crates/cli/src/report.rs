//! Solve reports: the data behind both the text and the JSON output.

use std::time::Instant;

use clap::ValueEnum;
use cubic_core::classic::{self, SNAP_TOL};
use cubic_core::fe::{self, reduced_invariants};
use cubic_core::oracle::{durand_kerner, OracleConfig};
use cubic_core::roots::{classify_roots, root_distance};
use cubic_core::{ComplexRoot, ParsedPolynomial, Quadratic, RootSet, SolveOptions};
use serde::Serialize;

use crate::input::Polynomial;

pub const COEFFICIENT_CONVENTION: &str = "ascending: coefficients[k] multiplies x^k";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Fe,
    Classic,
    Oracle,
    All,
}

impl Method {
    pub const SOLVERS: [Method; 3] = [Method::Fe, Method::Classic, Method::Oracle];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Fe => "fe",
            Method::Classic => "classic",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub method: Method,
    pub options: SolveOptions,
    pub timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    /// Expression text as given; `None` for coefficient input.
    pub source: Option<String>,
    pub canonical: String,
    pub degree: usize,
    pub coefficients: Vec<f64>,
    pub convention: &'static str,
}

impl InputEcho {
    pub fn new(source: Option<String>, parsed: &ParsedPolynomial) -> Self {
        Self {
            source,
            canonical: parsed.to_string(),
            degree: parsed.degree,
            coefficients: parsed.coefficients.clone(),
            convention: COEFFICIENT_CONVENTION,
        }
    }
}

/// Values at the inflection point and the reduced invariants.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Intermediates {
    pub z: f64,
    pub fz: f64,
    pub fpz: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleInfo {
    pub iterations: usize,
    pub multiple_root: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodResult {
    pub method: &'static str,
    pub classification: Option<&'static str>,
    pub roots: Vec<ComplexRoot>,
    pub residuals: Vec<f64>,
    pub max_residual: Option<f64>,
    pub elapsed_us: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl MethodResult {
    fn ok(
        method: Method,
        classification: &'static str,
        roots: Vec<ComplexRoot>,
        residuals: Vec<f64>,
    ) -> Self {
        Self {
            method: method.as_str(),
            classification: Some(classification),
            max_residual: Some(residuals.iter().fold(0.0, |m: f64, r| m.max(*r))),
            roots,
            residuals,
            elapsed_us: None,
            oracle: None,
            error: None,
        }
    }

    fn failed(method: Method, error: String) -> Self {
        Self {
            method: method.as_str(),
            classification: None,
            roots: Vec::new(),
            residuals: Vec::new(),
            max_residual: None,
            elapsed_us: None,
            oracle: None,
            error: Some(error),
        }
    }

    fn from_root_set(method: Method, set: RootSet) -> Self {
        Self::ok(
            method,
            set.classification.as_str(),
            set.roots.to_vec(),
            set.residuals.to_vec(),
        )
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Agreement {
    pub tolerance: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub method: &'static str,
    pub results: Vec<MethodResult>,
    /// Largest relative distance between matched roots over all pairs of
    /// methods that produced roots.
    pub max_pairwise_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Single(MethodResult),
    All(Comparison),
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub input: InputEcho,
    pub intermediates: Option<Intermediates>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl SolveReport {
    /// The result of the single method, or of the first method for `all`.
    pub fn primary(&self) -> &MethodResult {
        match &self.outcome {
            Outcome::Single(r) => r,
            Outcome::All(c) => &c.results[0],
        }
    }

    pub fn results(&self) -> &[MethodResult] {
        match &self.outcome {
            Outcome::Single(r) => std::slice::from_ref(r),
            Outcome::All(c) => &c.results,
        }
    }

    /// Largest residual over every method that produced roots.
    pub fn max_residual(&self) -> Option<f64> {
        self.results()
            .iter()
            .filter_map(|r| r.max_residual)
            .reduce(f64::max)
    }

    /// Marks a comparison report as agreeing or not at `tolerance`. All
    /// methods must have produced roots for agreement.
    pub fn check_agreement(&mut self, tolerance: f64) -> bool {
        match &mut self.outcome {
            Outcome::Single(_) => true,
            Outcome::All(c) => {
                let agree = c.results.iter().all(MethodResult::is_ok)
                    && c.max_pairwise_distance.is_some_and(|d| d <= tolerance);
                c.agreement = Some(Agreement { tolerance, agree });
                agree
            }
        }
    }
}

pub fn intermediates(poly: &Polynomial) -> Option<Intermediates> {
    match poly {
        Polynomial::Cubic(f) => {
            let ep = f.inflection_point();
            let inv = reduced_invariants(&ep);
            Some(Intermediates {
                z: ep.z,
                fz: ep.fz,
                fpz: ep.fpz,
                q: inv.q,
                r: inv.r,
                d: inv.d,
            })
        }
        Polynomial::Quadratic(_) => None,
    }
}

pub fn build_report(input: InputEcho, poly: &Polynomial, settings: &Settings) -> SolveReport {
    let outcome = match settings.method {
        Method::All => {
            let results: Vec<MethodResult> = Method::SOLVERS
                .iter()
                .map(|&m| run_method(poly, m, settings))
                .collect();
            let max_pairwise_distance = max_pairwise_distance(&results);
            Outcome::All(Comparison {
                method: Method::All.as_str(),
                results,
                max_pairwise_distance,
                agreement: None,
            })
        }
        m => Outcome::Single(run_method(poly, m, settings)),
    };
    SolveReport {
        input,
        intermediates: intermediates(poly),
        outcome,
    }
}

fn max_pairwise_distance(results: &[MethodResult]) -> Option<f64> {
    let ok: Vec<&MethodResult> = results.iter().filter(|r| r.is_ok()).collect();
    let mut worst: Option<f64> = None;
    for (i, x) in ok.iter().enumerate() {
        for y in &ok[i + 1..] {
            let d = root_distance(&x.roots, &y.roots);
            worst = Some(worst.map_or(d, |w| w.max(d)));
        }
    }
    worst
}

/// Runs one solver, timing only the solver call.
pub fn run_method(poly: &Polynomial, method: Method, settings: &Settings) -> MethodResult {
    let start = Instant::now();
    let mut result = match poly {
        Polynomial::Cubic(f) => match method {
            Method::Fe => match fe::solve(f, &settings.options) {
                Ok(set) => MethodResult::from_root_set(method, set),
                Err(e) => MethodResult::failed(method, e.to_string()),
            },
            Method::Classic => MethodResult::from_root_set(method, classic::solve_classic(f)),
            Method::Oracle => oracle_cubic(f),
            Method::All => unreachable!("`all` is expanded by the caller"),
        },
        Polynomial::Quadratic(q) => match method {
            Method::Fe => quadratic_result(method, q, fe::solve_quadratic_fe(q)),
            Method::Classic => quadratic_result(method, q, classic::solve_quadratic_classic(q)),
            Method::Oracle => oracle_quadratic(q),
            Method::All => unreachable!("`all` is expanded by the caller"),
        },
    };
    let elapsed = start.elapsed();
    if settings.timing {
        result.elapsed_us = Some(elapsed.as_nanos() as f64 / 1000.0);
    }
    result
}

fn oracle_cubic(f: &cubic_core::Cubic) -> MethodResult {
    match durand_kerner(&f.ascending(), &OracleConfig::default()) {
        Ok(out) => {
            let roots = [out.roots[0], out.roots[1], out.roots[2]];
            let (roots, cls) = classify_roots(roots, SNAP_TOL);
            let mut r = MethodResult::ok(
                Method::Oracle,
                cls.as_str(),
                roots.to_vec(),
                cubic_core::roots::residuals(f, &roots).to_vec(),
            );
            r.oracle = Some(OracleInfo {
                iterations: out.iterations,
                multiple_root: out.multiple_root,
            });
            r
        }
        Err(e) => MethodResult::failed(Method::Oracle, e.to_string()),
    }
}

fn oracle_quadratic(q: &Quadratic) -> MethodResult {
    let [a, b, c] = q.descending();
    match durand_kerner(&[c, b, a], &OracleConfig::default()) {
        Ok(out) => {
            let mut r = quadratic_result(Method::Oracle, q, (out.roots[0], out.roots[1]));
            r.oracle = Some(OracleInfo {
                iterations: out.iterations,
                multiple_root: out.multiple_root,
            });
            r
        }
        Err(e) => MethodResult::failed(Method::Oracle, e.to_string()),
    }
}

/// Classifies a root pair by geometry, orders it larger (or `+im`) first
/// and attaches residuals.
fn quadratic_result(
    method: Method,
    q: &Quadratic,
    (x, y): (ComplexRoot, ComplexRoot),
) -> MethodResult {
    let scale = 1.0_f64.max(x.norm()).max(y.norm());
    let (roots, cls) = if x.im.abs().max(y.im.abs()) > SNAP_TOL * scale {
        let re = 0.5 * (x.re + y.re);
        let im = 0.5 * (x.im.abs() + y.im.abs());
        (
            [ComplexRoot::new(re, im), ComplexRoot::new(re, -im)],
            "two_complex",
        )
    } else {
        let (hi, lo) = if x.re >= y.re {
            (x.re, y.re)
        } else {
            (y.re, x.re)
        };
        let cls = if hi - lo <= SNAP_TOL * scale {
            "real_double"
        } else {
            "two_real_distinct"
        };
        ([ComplexRoot::real(hi), ComplexRoot::real(lo)], cls)
    };
    let residuals = roots
        .iter()
        .map(|&r| {
            let scale = q.coefficient_scale() * r.norm().max(1.0).powi(2);
            q.eval_complex(r.into()).norm() / scale
        })
        .collect();
    MethodResult::ok(method, cls, roots.to_vec(), residuals)
}
