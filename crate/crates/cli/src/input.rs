//! Turning CLI arguments and batch records into a polynomial of supported
//! degree.

use cubic_core::{parse, Cubic, ParseError, ParseErrorKind, ParsedPolynomial, Quadratic};
use thiserror::Error;

/// Highest exponent the parser accepts.
pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("invalid coefficient list: {message} at position {position}")]
    Coefficients { position: usize, message: String },
    #[error("expected a cubic, got a polynomial of degree {0}")]
    NotCubic(usize),
    #[error("degree {0} is not supported (expected 2 or 3)")]
    UnsupportedDegree(usize),
}

impl InputError {
    /// Stable snake_case tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Parse(e) => e.kind.as_str(),
            InputError::Coefficients { .. } => "invalid_coefficients",
            InputError::NotCubic(_) => "not_cubic",
            InputError::UnsupportedDegree(_) => "unsupported_degree",
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            InputError::Parse(e) => Some(e.position),
            InputError::Coefficients { position, .. } => Some(*position),
            _ => None,
        }
    }

    /// True for errors about the degree of an otherwise well-formed input.
    pub fn is_degree_gate(&self) -> bool {
        match self {
            InputError::Parse(e) => e.kind == ParseErrorKind::DegreeTooHigh,
            InputError::Coefficients { .. } => false,
            InputError::NotCubic(_) | InputError::UnsupportedDegree(_) => true,
        }
    }
}

/// A polynomial the solvers accept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polynomial {
    Cubic(Cubic),
    Quadratic(Quadratic),
}

pub fn parse_expression(text: &str) -> Result<ParsedPolynomial, InputError> {
    parse(text, MAX_DEGREE).map_err(InputError::Parse)
}

/// Parses a comma-separated list of coefficients in descending powers.
pub fn parse_coefficient_list(text: &str) -> Result<ParsedPolynomial, InputError> {
    let mut descending = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        let trimmed = field.trim();
        let lead = field.chars().take_while(|c| c.is_whitespace()).count();
        let value = trimmed.parse::<f64>().ok().filter(|v| v.is_finite());
        match value {
            Some(v) => descending.push(v),
            None => {
                let message = if trimmed.is_empty() {
                    "missing coefficient".to_string()
                } else {
                    format!("'{trimmed}' is not a finite number")
                };
                return Err(InputError::Coefficients {
                    position: offset + lead,
                    message,
                });
            }
        }
        offset += field.chars().count() + 1;
    }
    from_descending(&descending)
}

/// Builds a polynomial from coefficients in descending powers.
pub fn from_descending(descending: &[f64]) -> Result<ParsedPolynomial, InputError> {
    if descending.is_empty() {
        return Err(InputError::Coefficients {
            position: 0,
            message: "no coefficients".into(),
        });
    }
    if let Some(i) = descending.iter().position(|c| !c.is_finite()) {
        return Err(InputError::Coefficients {
            position: i,
            message: "coefficients must be finite".into(),
        });
    }
    Ok(ParsedPolynomial::from_coefficients(
        descending.iter().rev().copied().collect(),
    ))
}

/// Accepts cubics, and quadratics when `allow_quadratic` is set.
pub fn gate(p: &ParsedPolynomial, allow_quadratic: bool) -> Result<Polynomial, InputError> {
    let c = &p.coefficients;
    match p.degree {
        3 => Cubic::new(c[3], c[2], c[1], c[0])
            .map(Polynomial::Cubic)
            .map_err(|_| InputError::NotCubic(3)),
        2 if allow_quadratic => Quadratic::new(c[2], c[1], c[0])
            .map(Polynomial::Quadratic)
            .map_err(|_| InputError::UnsupportedDegree(2)),
        d if allow_quadratic => Err(InputError::UnsupportedDegree(d)),
        d => Err(InputError::NotCubic(d)),
    }
}

/// The offending input with a caret under the error position.
pub fn caret(input: &str, position: usize) -> String {
    let line: String = input
        .chars()
        .map(|c| if c == '\n' { ' ' } else { c })
        .collect();
    format!("{line}\n{}^", " ".repeat(position))
}
