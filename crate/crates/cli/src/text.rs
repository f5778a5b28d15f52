//! Human-readable report rendering.

use std::fmt::Write;

use cubic_core::ComplexRoot;

use crate::report::{MethodResult, Outcome, SolveReport};

const SIGNIFICANT: usize = 12;

/// Formats with 12 significant digits. Only bit-exact integers print
/// without a fractional part, so 2.9999999999999996 shows as
/// `3.00000000000`.
pub fn number(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-5..SIGNIFICANT as i32).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{mantissa}e{exp}")
    }
}

pub fn root(r: ComplexRoot) -> String {
    if r.im == 0.0 {
        number(r.re)
    } else {
        let sign = if r.im < 0.0 { '-' } else { '+' };
        format!("{} {sign} {}i", number(r.re), number(r.im.abs()))
    }
}

fn optional(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), number)
}

fn method_block(out: &mut String, r: &MethodResult) {
    let _ = writeln!(out, "method          {}", r.method);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error           {e}");
        return;
    }
    let _ = writeln!(out, "classification  {}", r.classification.unwrap_or("-"));
    let _ = writeln!(out, "roots");
    let texts: Vec<String> = r.roots.iter().map(|&x| root(x)).collect();
    let width = texts.iter().map(String::len).max().unwrap_or(0);
    for (t, res) in texts.iter().zip(&r.residuals) {
        let _ = writeln!(out, "  {t:<width$}  residual {}", number(*res));
    }
    if let Some(o) = r.oracle {
        let _ = writeln!(
            out,
            "iterations      {}{}",
            o.iterations,
            if o.multiple_root {
                " (multiple root)"
            } else {
                ""
            }
        );
    }
    if let Some(us) = r.elapsed_us {
        let _ = writeln!(out, "elapsed         {us:.3} us");
    }
}

pub fn render(report: &SolveReport) -> String {
    let mut out = String::new();
    let input = &report.input;
    let _ = writeln!(out, "polynomial      {}", input.canonical);
    let coeffs: Vec<String> = input.coefficients.iter().map(|&c| number(c)).collect();
    let _ = writeln!(
        out,
        "coefficients    [{}] (ascending powers)",
        coeffs.join(", ")
    );
    if let Some(i) = &report.intermediates {
        let _ = writeln!(
            out,
            "z = {}   f(z) = {}   f'(z) = {}",
            number(i.z),
            number(i.fz),
            number(i.fpz)
        );
        let _ = writeln!(
            out,
            "Q = {}   R = {}   D = {}",
            number(i.q),
            number(i.r),
            number(i.d)
        );
    }
    match &report.outcome {
        Outcome::Single(r) => {
            out.push('\n');
            method_block(&mut out, r);
        }
        Outcome::All(c) => {
            for r in &c.results {
                out.push('\n');
                method_block(&mut out, r);
            }
            out.push('\n');
            let _ = writeln!(
                out,
                "max pairwise distance  {}",
                optional(c.max_pairwise_distance)
            );
            if let Some(a) = c.agreement {
                let verdict = if a.agree { "agree" } else { "DISAGREE" };
                let _ = writeln!(
                    out,
                    "agreement              {verdict} (tolerance {})",
                    number(a.tolerance)
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(number(3.0), "3");
        assert_eq!(number(-6.0), "-6");
        assert_eq!(number(0.0), "0");
        assert_eq!(number(2.9999999999999996), "3.00000000000");
        assert_eq!(number(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(number(1.0 / 27.0), "0.0370370370370");
        assert_eq!(number(2.0_f64.sqrt()), "1.41421356237");
        assert_eq!(number(1.5e-20), "1.50000000000e-20");
        assert_eq!(number(1e300), "1.00000000000e300");
        assert_eq!(number(123456.789), "123456.789000");
    }

    #[test]
    fn roots() {
        assert_eq!(
            root(ComplexRoot::new(1.0, -2.0_f64.sqrt())),
            "1 - 1.41421356237i"
        );
        assert_eq!(root(ComplexRoot::real(-0.5)), "-0.500000000000");
    }
}
