//! Polynomial source text to coefficient vector.
//!
//! Grammar (whitespace allowed between any two tokens):
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := number | [number] ["*"] var ["^" uint]
//! var    := one ASCII letter, the same letter throughout
//! number := digits ["." digits] [("e"|"E") [sign] digits]
//!         | number "/" number
//! ```
//!
//! Positions in errors are character offsets; an offset equal to the input
//! length means "end of input".

use std::fmt;
use std::ops::Range;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedPolynomial {
    /// Ascending powers; `coefficients[k]` multiplies `x^k`.
    pub coefficients: Vec<f64>,
    pub degree: usize,
    /// The variable letter, if one appeared.
    pub variable: Option<char>,
    /// Characters consumed.
    pub source_span: Range<usize>,
}

impl ParsedPolynomial {
    pub fn from_coefficients(mut coefficients: Vec<f64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        Self {
            degree: coefficients.len() - 1,
            coefficients,
            variable: None,
            source_span: 0..0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0.0)
    }

    /// Coefficients in descending powers.
    pub fn descending(&self) -> Vec<f64> {
        self.coefficients.iter().rev().copied().collect()
    }
}

/// Canonical text form, e.g. `x^3 - 6x^2 + 11x - 6`. Re-parses to the same
/// coefficients.
impl fmt::Display for ParsedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.variable.unwrap_or('x');
        let mut first = true;
        for (power, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_sign_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if power == 0 || mag != 1.0 {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{power}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    EmptyInput,
    UnsupportedVariable,
    DuplicateVariable,
    MalformedNumber,
    DegreeTooHigh,
}

impl ParseErrorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParseErrorKind::UnexpectedToken => "unexpected_token",
            ParseErrorKind::EmptyInput => "empty_input",
            ParseErrorKind::UnsupportedVariable => "unsupported_variable",
            ParseErrorKind::DuplicateVariable => "duplicate_variable",
            ParseErrorKind::MalformedNumber => "malformed_number",
            ParseErrorKind::DegreeTooHigh => "degree_too_high",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self {
            position,
            kind,
            message: message.into(),
        }
    }

    /// The input line followed by a caret under the error position.
    pub fn caret(&self, input: &str) -> String {
        let line: String = input
            .chars()
            .map(|c| if c == '\n' { ' ' } else { c })
            .collect();
        format!("{line}\n{}^", " ".repeat(self.position))
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    max_degree: usize,
    variable: Option<(char, usize)>,
    coefficients: Vec<f64>,
}

type PResult<T> = Result<T, ParseError>;

/// Parses `text`, rejecting any exponent above `max_degree`.
pub fn parse(text: &str, max_degree: usize) -> Result<ParsedPolynomial, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        max_degree,
        variable: None,
        coefficients: vec![0.0; max_degree + 1],
    };
    p.skip_ws();
    if p.at_end() {
        return Err(ParseError::new(
            p.pos,
            ParseErrorKind::EmptyInput,
            "empty input",
        ));
    }
    p.poly()?;
    let mut out = ParsedPolynomial::from_coefficients(p.coefficients);
    out.variable = p.variable.map(|(v, _)| v);
    out.source_span = 0..p.chars.len();
    Ok(out)
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::new(
                self.pos,
                ParseErrorKind::UnexpectedToken,
                format!("unexpected '{c}', expected {what}"),
            ),
            None => ParseError::new(
                self.pos,
                ParseErrorKind::UnexpectedToken,
                format!("unexpected end of input, expected {what}"),
            ),
        }
    }

    fn sign(&mut self) -> Option<f64> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(1.0)
            }
            Some('-') => {
                self.pos += 1;
                Some(-1.0)
            }
            _ => None,
        }
    }

    fn poly(&mut self) -> PResult<()> {
        let mut sign = self.sign().unwrap_or(1.0);
        loop {
            self.skip_ws();
            self.term(sign)?;
            self.skip_ws();
            if self.at_end() {
                return Ok(());
            }
            sign = match self.sign() {
                Some(s) => s,
                None => return Err(self.unexpected("'+' or '-'")),
            };
        }
    }

    fn term(&mut self, sign: f64) -> PResult<()> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            let n = self.number()?;
            self.skip_ws();
            Some(n)
        } else {
            None
        };
        let had_star = if self.peek() == Some('*') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let power = if self.peek().is_some_and(char::is_alphabetic) {
            self.variable()?;
            self.skip_ws();
            if self.peek() == Some('^') {
                self.pos += 1;
                self.skip_ws();
                self.exponent()?
            } else {
                1
            }
        } else if had_star || coeff.is_none() {
            return Err(self.unexpected("a number or variable"));
        } else {
            0
        };
        let value = sign * coeff.unwrap_or(1.0);
        self.coefficients[power] += value;
        Ok(())
    }

    fn variable(&mut self) -> PResult<()> {
        let start = self.pos;
        let c = self.peek().expect("caller checked");
        if !c.is_ascii_alphabetic() {
            return Err(ParseError::new(
                start,
                ParseErrorKind::UnsupportedVariable,
                format!("unsupported variable '{c}'; use a single ASCII letter"),
            ));
        }
        self.pos += 1;
        if self.peek().is_some_and(char::is_alphanumeric) {
            return Err(ParseError::new(
                start,
                ParseErrorKind::UnsupportedVariable,
                "variables must be a single letter",
            ));
        }
        match self.variable {
            None => self.variable = Some((c, start)),
            Some((v, _)) if v == c => {}
            Some((v, _)) => {
                return Err(ParseError::new(
                    start,
                    ParseErrorKind::DuplicateVariable,
                    format!("second variable '{c}' (already using '{v}')"),
                ))
            }
        }
        Ok(())
    }

    fn exponent(&mut self) -> PResult<usize> {
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.unexpected("an exponent"));
        }
        let too_high = || {
            ParseError::new(
                start,
                ParseErrorKind::DegreeTooHigh,
                format!(
                    "exponent {digits} exceeds the maximum degree {}",
                    self.max_degree
                ),
            )
        };
        let power: usize = digits.parse().map_err(|_| too_high())?;
        if power > self.max_degree {
            return Err(too_high());
        }
        Ok(power)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    /// A decimal literal, optionally followed by `/` and a nonzero decimal.
    fn number(&mut self) -> PResult<f64> {
        let start = self.pos;
        let num = self.decimal()?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() != Some('/') {
            self.pos = save;
            return Ok(num);
        }
        self.pos += 1;
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            return Err(ParseError::new(
                self.pos.min(self.chars.len()),
                ParseErrorKind::MalformedNumber,
                "expected a denominator after '/'",
            ));
        }
        let den_start = self.pos;
        let den = self.decimal()?;
        if den == 0.0 {
            return Err(ParseError::new(
                den_start,
                ParseErrorKind::MalformedNumber,
                "zero denominator",
            ));
        }
        let value = num / den;
        if !value.is_finite() {
            return Err(ParseError::new(
                start,
                ParseErrorKind::MalformedNumber,
                "number out of range",
            ));
        }
        Ok(value)
    }

    fn decimal(&mut self) -> PResult<f64> {
        let start = self.pos;
        let malformed =
            |pos: usize, msg: &str| ParseError::new(pos, ParseErrorKind::MalformedNumber, msg);
        let mut lexeme = self.digits();
        if self.peek() == Some('.') {
            self.pos += 1;
            let frac = self.digits();
            if lexeme.is_empty() && frac.is_empty() {
                return Err(malformed(start, "lone '.'"));
            }
            lexeme.push('.');
            lexeme.push_str(&frac);
            if self.peek() == Some('.') {
                return Err(malformed(self.pos, "second decimal point"));
            }
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            // only an exponent if digits follow; otherwise it could be the variable
            let save = self.pos;
            self.pos += 1;
            let mut exp = String::from("e");
            if let Some(c @ ('+' | '-')) = self.peek() {
                exp.push(c);
                self.pos += 1;
            }
            let digits = self.digits();
            if digits.is_empty() {
                if exp.len() > 1 {
                    return Err(malformed(self.pos, "exponent has no digits"));
                }
                self.pos = save;
            } else {
                lexeme.push_str(&exp);
                lexeme.push_str(&digits);
            }
        }
        let value: f64 = lexeme
            .parse()
            .map_err(|_| malformed(start, "malformed number"))?;
        if !value.is_finite() {
            return Err(malformed(start, "number out of range"));
        }
        Ok(value)
    }
}
